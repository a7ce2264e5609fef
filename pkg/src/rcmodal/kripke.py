"""Finite pointed Kripke models: updates, frame classes, enumeration, I/O.

A model is a triple (states, relation, valuation).  Models are immutable
values with set semantics: two models are equal when their state sets,
relations, and (empty-entry-normalized) valuations coincide.  The three
update operations return fresh models, never mutate.

State identifiers are arbitrary hashable values; enumeration produces dense
integers 0..k-1, model files carry strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterable, Iterator, Mapping, Optional

from .syntax import is_identifier, is_nominal_name

__all__ = [
    "KripkeModel", "ModelError", "UpdateError", "FrameClassReport",
    "update", "frame_classify", "enumerate_models", "count_models",
    "relation_from_bits", "valuation_from_bits",
    "model_from_dict", "model_to_dict", "load_model", "save_model",
    "ModelFile", "FRAME_CLASS_NAMES",
]

State = Hashable


class ModelError(ValueError):
    """Malformed model description (bad structure, dangling references)."""


class UpdateError(ValueError):
    """Update precondition violated; carries the offending pair."""

    def __init__(self, kind: str, pair: tuple):
        self.kind = kind
        self.pair = pair
        super().__init__(f"{kind} update rejects pair {pair!r}")


@dataclass(frozen=True, eq=False)
class KripkeModel:
    """Immutable relational model ⟨states, relation, valuation⟩."""

    states: tuple
    relation: frozenset
    valuation: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        states = tuple(self.states)
        if not states:
            raise ModelError("a model needs at least one state")
        if len(set(states)) != len(states):
            raise ModelError("duplicate state identifiers")
        universe = set(states)
        relation = frozenset(tuple(pair) for pair in self.relation)
        for pair in relation:
            if len(pair) != 2 or pair[0] not in universe or pair[1] not in universe:
                raise ModelError(f"relation pair {pair!r} leaves the state set")
        valuation = {}
        for prop, extension in self.valuation.items():
            ext = frozenset(extension)
            if not ext <= universe:
                raise ModelError(f"valuation of {prop!r} leaves the state set")
            if ext:
                valuation[prop] = ext
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "valuation", valuation)

    # Set semantics: state order is presentational only.
    def key(self) -> tuple:
        return (frozenset(self.states), self.relation,
                frozenset(self.valuation.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def successors(self, state: State) -> list:
        """Successors of ``state`` in state-list order."""
        rel = self.relation
        return [v for v in self.states if (state, v) in rel]

    def __repr__(self) -> str:
        return (f"KripkeModel(states={list(self.states)!r}, "
                f"relation={sorted(map(tuple, self.relation), key=repr)!r}, "
                f"valuation={{{', '.join(f'{p!r}: {sorted(map(repr, s))!r}' for p, s in sorted(self.valuation.items()))}}})")


# ---------------------------------------------------------------------------
# Updates
# ---------------------------------------------------------------------------

def update(kind: str, model: KripkeModel, pairs: Iterable[tuple]) -> KripkeModel:
    """Apply a relation update; states and valuation are untouched.

    * ``sabotage``: delete ``pairs`` (must be edges of the model),
    * ``bridge``: add ``pairs`` (must be non-edges),
    * ``swap``: replace the inverses of ``pairs`` (must be inverted edges).
    """
    pairs = frozenset(tuple(p) for p in pairs)
    relation = model.relation
    universe = set(model.states)
    for pair in pairs:
        if len(pair) != 2 or pair[0] not in universe or pair[1] not in universe:
            raise UpdateError(kind, pair)
    if kind == "sabotage":
        for pair in pairs:
            if pair not in relation:
                raise UpdateError(kind, pair)
        new_relation = relation - pairs
    elif kind == "bridge":
        for pair in pairs:
            if pair in relation:
                raise UpdateError(kind, pair)
        new_relation = relation | pairs
    elif kind == "swap":
        inverse = frozenset((b, a) for (a, b) in pairs)
        for pair in pairs:
            if (pair[1], pair[0]) not in relation:
                raise UpdateError(kind, pair)
        new_relation = (relation - inverse) | pairs
    else:
        raise ValueError(f"unknown update kind {kind!r}")
    return KripkeModel(model.states, new_relation, model.valuation)


# ---------------------------------------------------------------------------
# Frame classification
# ---------------------------------------------------------------------------

FRAME_CLASS_NAMES = ("complete", "s5", "linear", "tree")


@dataclass(frozen=True)
class FrameClassReport:
    complete: bool
    s5: bool
    linear: bool
    transitive_tree: bool
    width: int


def frame_classify(model: KripkeModel) -> FrameClassReport:
    """Decide membership in the supported frame classes.

    ``transitive_tree`` is read as: the relation is the transitive closure
    of a rooted tree (the immediate-successor relation R \\ (R∘R) must be a
    tree spanning all states).  ``width`` is the maximum out-degree.
    """
    states = model.states
    rel = model.relation
    n = len(states)

    complete = len(rel) == n * n
    reflexive = all((w, w) in rel for w in states)
    symmetric = all((v, w) in rel for (w, v) in rel)
    transitive = all((w, u) in rel
                     for (w, v) in rel for (x, u) in rel if v == x)
    irreflexive = all((w, w) not in rel for w in states)
    trichotomous = all((w, v) in rel or (v, w) in rel
                       for i, w in enumerate(states)
                       for v in states[i + 1:])
    s5 = reflexive and symmetric and transitive
    linear = irreflexive and transitive and trichotomous
    width = max((sum(1 for v in states if (w, v) in rel) for w in states),
                default=0)
    return FrameClassReport(
        complete=complete,
        s5=s5,
        linear=linear,
        transitive_tree=_is_transitive_tree(states, rel, transitive, irreflexive),
        width=width,
    )


def _is_transitive_tree(states: tuple, rel: frozenset,
                        transitive: bool, irreflexive: bool) -> bool:
    if not (transitive and irreflexive):
        return False
    composed = {(a, d) for (a, b) in rel for (c, d) in rel if b == c}
    immediate = rel - composed
    indegree = {w: 0 for w in states}
    for (_, v) in immediate:
        indegree[v] += 1
    roots = [w for w in states if indegree[w] == 0]
    if len(roots) != 1 or any(indegree[w] != 1 for w in states if w != roots[0]):
        return False
    # Reachability from the root along immediate edges must cover all states.
    seen = {roots[0]}
    frontier = [roots[0]]
    while frontier:
        w = frontier.pop()
        for (a, b) in immediate:
            if a == w and b not in seen:
                seen.add(b)
                frontier.append(b)
    if len(seen) != len(states):
        return False
    return _transitive_closure(immediate) == rel


def _transitive_closure(rel: frozenset) -> frozenset:
    closure = set(rel)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(closure):
            for (c, d) in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return frozenset(closure)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

def relation_from_bits(k: int, bits: int) -> frozenset:
    """Decode a relation over 0..k-1; pair (i, j) sits at bit i*k + j."""
    return frozenset((i, j) for i in range(k) for j in range(k)
                     if bits >> (i * k + j) & 1)


def valuation_from_bits(k: int, props: tuple, bits: int) -> dict:
    """Decode a valuation; (prop p_idx, state s) sits at bit p_idx*k + s."""
    return {p: frozenset(s for s in range(k) if bits >> (i * k + s) & 1)
            for i, p in enumerate(props)}


def enumerate_models(max_states: int, props: Iterable[str],
                     prune_isomorphic: bool = False
                     ) -> Iterator[tuple[KripkeModel, int]]:
    """All pointed models with up to ``max_states`` integer states.

    Deterministic order: state count ascending, then relation bitmask,
    then valuation bitmask, then designated state.  With
    ``prune_isomorphic`` only the representative with the lexicographically
    least (relation, valuation) encoding among point-fixing permutations is
    produced.
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    props = tuple(sorted(set(props)))
    for k in range(1, max_states + 1):
        states = tuple(range(k))
        for rel_bits in range(1 << (k * k)):
            relation = relation_from_bits(k, rel_bits)
            for val_bits in range(1 << (k * len(props))):
                valuation = valuation_from_bits(k, props, val_bits)
                model = KripkeModel(states, relation, valuation)
                for point in range(k):
                    if prune_isomorphic and not _is_canonical(
                            k, props, rel_bits, val_bits, point):
                        continue
                    yield model, point


def _encode_bits(k: int, props: tuple, relation: frozenset,
                 valuation: dict, perm: tuple) -> tuple[int, int]:
    rel_bits = 0
    for (i, j) in relation:
        rel_bits |= 1 << (perm[i] * k + perm[j])
    val_bits = 0
    for p_idx, p in enumerate(props):
        for s in valuation.get(p, ()):
            val_bits |= 1 << (p_idx * k + perm[s])
    return rel_bits, val_bits


def _is_canonical(k: int, props: tuple, rel_bits: int, val_bits: int,
                  point: int) -> bool:
    relation = relation_from_bits(k, rel_bits)
    valuation = valuation_from_bits(k, props, val_bits)
    own = (rel_bits, val_bits)
    for perm in permutations(range(k)):
        if perm[point] != point:
            continue
        if _encode_bits(k, props, relation, valuation, perm) < own:
            return False
    return True


def count_models(max_states: int, prop_count: int) -> int:
    """Closed-form pointed-model count: sum over k of k * 2^(k^2 + k*props)."""
    return sum(k * (1 << (k * k)) * (1 << (k * prop_count))
               for k in range(1, max_states + 1))


# ---------------------------------------------------------------------------
# Model files
# ---------------------------------------------------------------------------

_ALLOWED_KEYS = {"states", "relation", "valuation", "point", "nominals"}


@dataclass(frozen=True)
class ModelFile:
    """A model plus the optional designated point and nominal seeds."""

    model: KripkeModel
    point: Optional[str] = None
    nominals: Mapping[str, str] = field(default_factory=dict)


def model_from_dict(data: dict) -> ModelFile:
    """Decode the JSON object form; unknown fields are rejected."""
    if not isinstance(data, dict):
        raise ModelError("model file must be a JSON object")
    unknown = set(data) - _ALLOWED_KEYS
    if unknown:
        raise ModelError(f"unknown model-file fields: {sorted(unknown)}")
    if "states" not in data or "relation" not in data:
        raise ModelError("model file needs 'states' and 'relation'")
    states = data["states"]
    if (not isinstance(states, list) or not states
            or not all(isinstance(s, str) for s in states)):
        raise ModelError("'states' must be a non-empty list of strings")
    universe = set(states)
    if len(universe) != len(states):
        raise ModelError("duplicate state identifiers")
    relation = []
    for pair in data["relation"]:
        if (not isinstance(pair, list) or len(pair) != 2
                or any(s not in universe for s in pair)):
            raise ModelError(f"bad relation entry {pair!r}")
        relation.append(tuple(pair))
    valuation = {}
    for prop, extension in data.get("valuation", {}).items():
        if not is_identifier(prop) or is_nominal_name(prop):
            raise ModelError(f"bad proposition name {prop!r}")
        if not isinstance(extension, list) or any(s not in universe for s in extension):
            raise ModelError(f"bad valuation entry for {prop!r}")
        valuation[prop] = frozenset(extension)
    point = data.get("point")
    if point is not None and point not in universe:
        raise ModelError(f"designated point {point!r} is not a state")
    nominals = {}
    for nom, state in data.get("nominals", {}).items():
        if not is_nominal_name(nom):
            raise ModelError(f"bad nominal name {nom!r}")
        if state not in universe:
            raise ModelError(f"nominal {nom!r} names unknown state {state!r}")
        nominals[nom] = state
    model = KripkeModel(tuple(states), frozenset(relation), valuation)
    return ModelFile(model, point, nominals)


def model_to_dict(model: KripkeModel, point: Optional[State] = None,
                  nominals: Optional[Mapping[str, State]] = None) -> dict:
    """Canonical JSON object form: states in model order, edges sorted by
    state order, valuation and nominal keys sorted, all states stringified."""
    index = {s: i for i, s in enumerate(model.states)}
    data = {
        "states": [str(s) for s in model.states],
        "relation": [[str(a), str(b)] for (a, b) in
                     sorted(model.relation, key=lambda e: (index[e[0]], index[e[1]]))],
        "valuation": {p: [str(s) for s in sorted(ext, key=index.__getitem__)]
                      for p, ext in sorted(model.valuation.items())},
    }
    if point is not None:
        data["point"] = str(point)
    if nominals:
        data["nominals"] = {n: str(s) for n, s in sorted(nominals.items())}
    return data


def load_model(path) -> ModelFile:
    """Load a model file; raises ``ModelError`` on malformed content."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ModelError(f"not valid JSON: {exc}") from exc
    return model_from_dict(data)


def save_model(model: KripkeModel, path, point: Optional[State] = None,
               nominals: Optional[Mapping[str, State]] = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(model_to_dict(model, point, nominals), handle, indent=2)
        handle.write("\n")
