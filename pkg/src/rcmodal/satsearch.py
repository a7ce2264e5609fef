"""Bounded satisfiability search and the translation-equivalence oracle.

The search scans the canonical pointed-model enumeration and returns the
first satisfying pointed model, so results are reproducible; refutation is
only valid up to the state bound.  Valuation-independent top-level
conjuncts are checked once per (relation, point), which prunes the
valuation loop without changing the scan order.

Random formulas come from a bit-exact generator (documented below) driven
by splitmix64, so any implementation can reproduce a suite from its seed.

Generator, step by step:

* splitmix64 state update per draw:
  ``s += 0x9E3779B97F4A7C15``; ``z = s``; ``z ^= z >> 30``;
  ``z *= 0xBF58476D1CE4E5B9``; ``z ^= z >> 27``;
  ``z *= 0x94D049BB133111EB``; ``z ^= z >> 31``; all mod 2^64.
* ``choice(n)`` is one draw taken mod ``n``.
* A formula with depth budget 0 is ``atoms[choice(3)]`` with
  ``atoms = [false, true, p]``.
* Otherwise ``ops[choice(len(ops))]`` with
  ``ops = [false, true, p, not, and, or, implies, dia, box, dyn-dia,
  dyn-box, global-dyn-dia, global-dyn-box]`` (the last two only when
  global operators are enabled); children are generated left to right with
  budget reduced by one.
* A batch of formulas uses one stream, formulas drawn consecutively.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .hybrid_semantics import hy_check
from .kripke import (KripkeModel, frame_classify, model_to_dict,
                     relation_from_bits, valuation_from_bits)
from .rc_semantics import _eval as _rc_eval
from .rc_semantics import rc_check
from .syntax import (And, Bottom, Box, Diamond, DynBox, DynDiamond, Implies,
                     Not, Or, Prop, RCFormula, TOP, nominal_names,
                     print_formula, profile, prop_names)
from .translator import TranslateOptions, translate, translate_eco

__all__ = ["SplitMix64", "random_rc_formula", "SatResult", "sat_bounded",
           "OracleReport", "oracle_compare", "FAMILY_KINDS"]

_MASK64 = (1 << 64) - 1

FAMILY_KINDS = {
    "sabotage": ("sb", "gsb"),
    "bridge": ("br", "gbr"),
    "swap": ("sw", "gsw"),
}


class SplitMix64:
    """The standard splitmix64 stream; bit-exact across implementations."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
        return z ^ (z >> 31)

    def choice(self, n: int) -> int:
        return self.next_u64() % n


def random_rc_formula(rng: SplitMix64, family: str, depth: int,
                      include_global: bool = True) -> RCFormula:
    """One family-pure random formula of modal depth at most ``depth``."""
    local, glob = FAMILY_KINDS[family]
    if depth <= 0:
        return (Bottom(), TOP, Prop("p"))[rng.choice(3)]
    n_ops = 13 if include_global else 11
    op = rng.choice(n_ops)
    if op == 0:
        return Bottom()
    if op == 1:
        return TOP
    if op == 2:
        return Prop("p")
    if op == 3:
        return Not(random_rc_formula(rng, family, depth - 1, include_global))
    if op in (4, 5, 6):
        left = random_rc_formula(rng, family, depth - 1, include_global)
        right = random_rc_formula(rng, family, depth - 1, include_global)
        return (And, Or, Implies)[op - 4](left, right)
    if op == 7:
        return Diamond(random_rc_formula(rng, family, depth - 1, include_global))
    if op == 8:
        return Box(random_rc_formula(rng, family, depth - 1, include_global))
    sub = random_rc_formula(rng, family, depth - 1, include_global)
    if op == 9:
        return DynDiamond(local, sub)
    if op == 10:
        return DynBox(local, sub)
    if op == 11:
        return DynDiamond(glob, sub)
    return DynBox(glob, sub)


# ---------------------------------------------------------------------------
# Bounded model search
# ---------------------------------------------------------------------------

@dataclass
class SatResult:
    status: str                      # "found" | "exhausted" | "timeout"
    model: Optional[KripkeModel] = None
    point: Optional[int] = None
    states_examined: int = 0         # pointed models inspected
    elapsed: float = 0.0


def _frame_predicate(frame_class: Optional[str]) -> Optional[Callable]:
    if frame_class is None:
        return None
    if frame_class.startswith("width:"):
        bound = int(frame_class.split(":", 1)[1])
        return lambda model: frame_classify(model).width <= bound
    attr = {"complete": "complete", "s5": "s5", "linear": "linear",
            "tree": "transitive_tree"}.get(frame_class)
    if attr is None:
        raise ValueError(f"unknown frame class {frame_class!r}")
    return lambda model: getattr(frame_classify(model), attr)


def _conjuncts(formula: RCFormula) -> list[RCFormula]:
    if type(formula) is And:
        return _conjuncts(formula.left) + _conjuncts(formula.right)
    return [formula]


def sat_bounded(formula: RCFormula, max_states: int,
                frame_class: Optional[str] = None,
                time_budget: Optional[float] = None) -> SatResult:
    """First pointed model (canonical order) satisfying ``formula``.

    ``exhausted`` refutes only up to ``max_states``.  A timeout reports how
    many pointed models were examined.
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    predicate = _frame_predicate(frame_class)
    props = tuple(sorted(prop_names(formula)))
    # Valuation-independent conjuncts are decided once per (relation, point);
    # the rest are cached on the valuation bits of the props they read.
    structural = [c for c in _conjuncts(formula) if not prop_names(c)]
    valuational = [c for c in _conjuncts(formula) if prop_names(c)]
    started = time.perf_counter()
    deadline = None if time_budget is None else started + time_budget
    examined = 0
    miss = object()
    for k in range(1, max_states + 1):
        states = tuple(range(k))
        val_count = 1 << (k * len(props))
        supports = [(c, _support_mask(prop_names(c), props, k))
                    for c in valuational]
        for rel_bits in range(1 << (k * k)):
            if (deadline is not None and rel_bits % 256 == 0
                    and time.perf_counter() > deadline):
                return SatResult("timeout", None, None, examined,
                                 time.perf_counter() - started)
            relation = relation_from_bits(k, rel_bits)
            if predicate is not None and not predicate(
                    KripkeModel(states, relation)):
                continue
            structural_ok = [all(_rc_eval(c, point, relation, states, {}, None)
                                 for c in structural)
                             for point in states]
            if not any(structural_ok):
                examined += k * val_count
                continue
            caches: list[dict] = [{} for _ in supports]
            for val_bits in range(val_count):
                valuation = None
                for point in states:
                    examined += 1
                    ok = structural_ok[point]
                    for (conjunct, mask), cache in zip(supports, caches):
                        if not ok:
                            break
                        key = (point, val_bits & mask)
                        ok = cache.get(key, miss)
                        if ok is miss:
                            if valuation is None:
                                valuation = valuation_from_bits(k, props,
                                                                val_bits)
                            ok = _rc_eval(conjunct, point, relation, states,
                                          valuation, None)
                            cache[key] = ok
                    if ok:
                        model = KripkeModel(
                            states, relation,
                            valuation_from_bits(k, props, val_bits))
                        return SatResult("found", model, point, examined,
                                         time.perf_counter() - started)
                if deadline is not None and val_bits % 64 == 0 \
                        and time.perf_counter() > deadline:
                    return SatResult("timeout", None, None, examined,
                                     time.perf_counter() - started)
    return SatResult("exhausted", None, None, examined,
                     time.perf_counter() - started)


def _support_mask(conjunct_props: set, props: tuple, k: int) -> int:
    """Bits of the valuation bitmask that the given props occupy."""
    mask = 0
    block = (1 << k) - 1
    for index, prop in enumerate(props):
        if prop in conjunct_props:
            mask |= block << (index * k)
    return mask


# ---------------------------------------------------------------------------
# Equivalence oracle
# ---------------------------------------------------------------------------

@dataclass
class OracleReport:
    parameters: dict
    checked_models: int
    checked_formulas: int
    disagreements: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self, include_elapsed: bool = True) -> dict:
        data = {
            "parameters": self.parameters,
            "checked_models": self.checked_models,
            "checked_formulas": self.checked_formulas,
            "disagreements": self.disagreements,
        }
        if include_elapsed:
            data["elapsed"] = self.elapsed
        return data

    def canonical_json(self) -> str:
        """Deterministic serialization (wall-clock excluded)."""
        return json.dumps(self.to_dict(include_elapsed=False),
                          sort_keys=True, separators=(",", ":"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def oracle_compare(family: str, max_states: int, formula_count: int,
                   depth: int, seed: int, include_global: bool = True,
                   compare_eco: bool = True,
                   inject_bug: bool = False) -> OracleReport:
    """Compare the direct checker against checking the compiled formula.

    Every generated formula is evaluated on every pointed model up to
    ``max_states`` over proposition ``p``; any mismatch is reported with its
    first witness in canonical order.  The economical route joins in for
    local-only sabotage/swap formulas.
    """
    for name, value in [("max_states", max_states),
                        ("formula_count", formula_count), ("depth", depth)]:
        if value < 1:
            raise ValueError(f"{name} must be positive")
    options = TranslateOptions(drop_belongs_guard=inject_bug)
    rng = SplitMix64(seed)
    started = time.perf_counter()
    sweep = _pointed_sweep(max_states, ("p",))
    report = OracleReport(
        parameters={
            "family": family, "max_states": max_states,
            "formula_count": formula_count, "depth": depth, "seed": seed,
            "props": ["p"], "include_global": include_global,
            "compare_eco": compare_eco, "inject_bug": inject_bug,
        },
        checked_models=len(sweep),
        checked_formulas=formula_count,
    )
    for index in range(formula_count):
        formula = random_rc_formula(rng, family, depth, include_global)
        routes = [("translate", translate(formula, family, options))]
        prof = profile(formula)
        if (compare_eco and prof.local_only
                and family in ("sabotage", "swap")):
            routes.append(("translate_eco",
                           translate_eco(formula, family, options)))
        for variant, hybrid in routes:
            witness = _first_disagreement(formula, hybrid, sweep)
            if witness is not None:
                model, point, rc_value, hy_value = witness
                report.disagreements.append({
                    "formula_index": index,
                    "formula": print_formula(formula),
                    "variant": variant,
                    "hybrid": print_formula(hybrid),
                    "model": model_to_dict(model, point),
                    "state": str(point),
                    "rc": rc_value,
                    "hy": hy_value,
                })
    report.elapsed = time.perf_counter() - started
    return report


def _pointed_sweep(max_states: int, props: tuple) -> list:
    sweep = []
    for k in range(1, max_states + 1):
        states = tuple(range(k))
        for rel_bits in range(1 << (k * k)):
            relation = relation_from_bits(k, rel_bits)
            for val_bits in range(1 << (k * len(props))):
                model = KripkeModel(states, relation,
                                    valuation_from_bits(k, props, val_bits))
                for point in states:
                    sweep.append((model, point))
    return sweep


def _first_disagreement(formula, hybrid, sweep):
    names = tuple(nominal_names(hybrid))
    for model, point in sweep:
        rc_value = rc_check(model, point, formula)
        hy_value = hy_check(model, dict.fromkeys(names, point), point, hybrid)
        if rc_value != hy_value:
            return model, point, rc_value, hy_value
    return None
