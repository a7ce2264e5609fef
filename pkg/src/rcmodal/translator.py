"""Compilation of edge-changing modal formulas into hybrid logic.

The translation is parametrized by an ordered list of nominal pairs naming
the edges altered so far: deleted edges for the sabotage and swap families,
added edges for the bridge family.  Diamonds are compiled so that traversal
respects those recorded alterations; dynamic operators extend the list with
freshly bound nominals.

Fresh nominals are drawn as n0, n1, ... in output pre-order, restarting at
every top-level call, so outputs are reproducible.  A subformula translated
once under a given pair list is shared between the disjuncts that need it;
every nominal in an output is bound by an enclosing binder, so sharing is
capture-free.

Local sabotage and local swap never require the global modality; their
outputs stay in the binder-plus-satisfaction fragment.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Optional, Sequence

from .hybrid_semantics import free_nominals
from .syntax import (And, At, Bottom, Box, Diamond, Down, DynDiamond, Exists,
                     Forall, HybridFormula, Nominal, Not, Or, Prop, RCFormula,
                     TOP, desugar, profile)

__all__ = [
    "TranslateOptions", "FreshNames", "TranslationError", "MixedFamilyError",
    "SwapDepthError", "belongs", "is_sat_edges", "translate", "translate_eco",
    "simplify_for_display", "canonical_rename", "contains_universal",
    "is_closed", "FAMILIES",
]

FAMILIES = ("sabotage", "bridge", "swap")

Pairs = tuple  # ordered list of (nominal, nominal)


class TranslationError(ValueError):
    pass


class MixedFamilyError(TranslationError):
    pass


class SwapDepthError(TranslationError):
    """Dynamic nesting exceeded the swap guard; the output would blow up."""


@dataclass(frozen=True)
class TranslateOptions:
    optimize_empty: bool = True      # compile <>f with no recorded edges as-is
    max_swap_depth: int = 8          # dynamic nesting bound, swap family only
    drop_belongs_guard: bool = False # fault injection for oracle sensitivity


class FreshNames:
    """Counter handing out n0, n1, ...; one instance per top-level call."""

    def __init__(self):
        self._counter = count()

    def next(self) -> str:
        return f"n{next(self._counter)}"


# ---------------------------------------------------------------------------
# Formula builders
# ---------------------------------------------------------------------------

def _or_list(items: Sequence[HybridFormula]) -> HybridFormula:
    if not items:
        return Bottom()
    result = items[0]
    for item in items[1:]:
        result = Or(result, item)
    return result


def _and_list(items: Sequence[HybridFormula]) -> HybridFormula:
    if not items:
        return TOP
    result = items[0]
    for item in items[1:]:
        result = And(result, item)
    return result


def belongs(nominal: str, pairs: Pairs) -> HybridFormula:
    """Disjunction saying: the edge from the state named by ``nominal`` to
    the current state is one of the recorded ``pairs``.  Empty list gives
    falsum."""
    return _or_list([And(Nominal(y), At(nominal, Nominal(x)))
                     for (x, y) in pairs])


def is_sat_edges(pairs: Pairs, sub: HybridFormula) -> HybridFormula:
    """Disjunction saying: we stand at the source of some recorded pair and
    ``sub`` holds at its target.  Empty list gives falsum."""
    return _or_list([And(Nominal(x), At(y, sub)) for (x, y) in pairs])


def _inverse(pairs: Pairs) -> Pairs:
    return tuple((y, x) for (x, y) in pairs)


def _replaced(pairs: Pairs, old: tuple, new: tuple) -> Pairs:
    return tuple(new if p == old else p for p in pairs)


# ---------------------------------------------------------------------------
# Translation core
# ---------------------------------------------------------------------------

class _Ctx:
    def __init__(self, family: str, options: TranslateOptions, eco: bool):
        self.family = family
        self.options = options
        self.eco = eco
        self.fresh = FreshNames()


def _check_family(formula: RCFormula, family: str) -> None:
    if family not in FAMILIES:
        raise TranslationError(f"unknown family {family!r}")
    extra = profile(formula).families - {family}
    if extra:
        raise MixedFamilyError(
            f"formula mixes families: {sorted(extra)} besides {family!r}")


def translate(formula: RCFormula, family: str,
              options: Optional[TranslateOptions] = None) -> HybridFormula:
    """Compile a family-pure formula into an equivalent hybrid formula."""
    options = options if options is not None else TranslateOptions()
    _check_family(formula, family)
    ctx = _Ctx(family, options, eco=False)
    return _tr(desugar(formula), (), ctx, 0)


def translate_eco(formula: RCFormula, family: str,
                  options: Optional[TranslateOptions] = None) -> HybridFormula:
    """Binder-economical variant for the local sabotage/swap fragments.

    Diamonds compile into a case split over the truth values of recorded
    source nominals instead of binding the current state; outputs for inputs
    inside the decidable pattern fragment avoid box-binder-box nestings.
    """
    options = options if options is not None else TranslateOptions()
    if family not in ("sabotage", "swap"):
        raise TranslationError(
            f"economical translation covers sabotage and swap, not {family!r}")
    _check_family(formula, family)
    if profile(formula).uses_global:
        raise TranslationError(
            "economical translation covers local operators only")
    ctx = _Ctx(family, options, eco=True)
    return _tr(desugar(formula), (), ctx, 0)


def _tr(node, pairs: Pairs, ctx: _Ctx, depth: int) -> HybridFormula:
    if ctx.family == "swap":
        _assert_swap_discipline(pairs)
    t = type(node)
    if t is Bottom or t is Prop:
        return node
    if t is Not:
        return Not(_tr(node.sub, pairs, ctx, depth))
    if t is And:
        return And(_tr(node.left, pairs, ctx, depth),
                   _tr(node.right, pairs, ctx, depth))
    if t is Diamond:
        if ctx.eco:
            return _eco_diamond(node.sub, pairs, ctx, depth)
        return _diamond_clause(node.sub, pairs, ctx, depth)
    if t is DynDiamond:
        return _dynamic_clause(node.kind, node.sub, pairs, ctx, depth)
    raise TranslationError(f"unexpected node after desugaring: {node!r}")


def _guarded(parts: list, guard: HybridFormula, ctx: _Ctx) -> list:
    if ctx.options.drop_belongs_guard:
        return parts
    return [guard] + parts


def _diamond_clause(sub, pairs, ctx, depth) -> HybridFormula:
    if ctx.options.optimize_empty and not pairs:
        return Diamond(_tr(sub, pairs, ctx, depth))
    family = ctx.family
    if family == "sabotage":
        n = ctx.fresh.next()
        inner = _tr(sub, pairs, ctx, depth)
        return Down(n, Diamond(_and_list(
            _guarded([inner], Not(belongs(n, pairs)), ctx))))
    if family == "bridge":
        n = ctx.fresh.next()
        m = ctx.fresh.next()
        inner = _tr(sub, pairs, ctx, depth)
        edge_ok = Or(At(n, Diamond(Nominal(m))), belongs(n, pairs))
        return Down(n, Exists(Down(m, And(edge_ok, inner))))
    # swap: a regular edge not yet deleted, or the far end of a swapped one
    n = ctx.fresh.next()
    inner = _tr(sub, pairs, ctx, depth)
    fresh_edge = Down(n, Diamond(_and_list(
        _guarded([inner], Not(belongs(n, pairs)), ctx))))
    return Or(fresh_edge, is_sat_edges(_inverse(pairs), inner))


def _dynamic_clause(kind, sub, pairs, ctx, depth) -> HybridFormula:
    family = ctx.family
    if family == "swap" and depth >= ctx.options.max_swap_depth:
        raise SwapDepthError(
            f"dynamic nesting exceeds the swap guard ({ctx.options.max_swap_depth})")
    if kind == "sb":
        n = ctx.fresh.next()
        guard = Not(belongs(n, pairs))
        m = ctx.fresh.next()
        inner = _tr(sub, pairs + ((n, m),), ctx, depth + 1)
        return Down(n, Diamond(_and_list(
            _guarded([Down(m, inner)], guard, ctx))))
    if kind == "gsb":
        k = ctx.fresh.next()
        n = ctx.fresh.next()
        guard = Not(belongs(n, pairs))
        m = ctx.fresh.next()
        inner = _tr(sub, pairs + ((n, m),), ctx, depth + 1)
        return Down(k, Exists(Down(n, Diamond(_and_list(
            _guarded([Down(m, At(k, inner))], guard, ctx))))))
    if kind == "br":
        n = ctx.fresh.next()
        m = ctx.fresh.next()
        inner = _tr(sub, pairs + ((n, m),), ctx, depth + 1)
        parts = _guarded([inner], Not(belongs(n, pairs)), ctx)
        return Down(n, Exists(Down(m, _and_list(
            [Not(At(n, Diamond(Nominal(m))))] + parts))))
    if kind == "gbr":
        k = ctx.fresh.next()
        n = ctx.fresh.next()
        m = ctx.fresh.next()
        inner = _tr(sub, pairs + ((n, m),), ctx, depth + 1)
        parts = _guarded([At(k, inner)], Not(belongs(n, pairs)), ctx)
        return Down(k, Exists(Down(n, Exists(Down(m, _and_list(
            [Not(At(n, Diamond(Nominal(m))))] + parts))))))
    if kind == "sw":
        # reflexive loop here / swap a fresh irreflexive edge / re-traverse
        # an already swapped edge, flipping it back
        n1 = ctx.fresh.next()
        reflexive = And(Down(n1, Diamond(Nominal(n1))),
                        _tr(sub, pairs, ctx, depth))
        n = ctx.fresh.next()
        guards = [Not(Nominal(n))]
        if not ctx.options.drop_belongs_guard:
            guards += [Not(belongs(n, pairs)), Not(belongs(n, _inverse(pairs)))]
        m = ctx.fresh.next()
        inner = _tr(sub, pairs + ((n, m),), ctx, depth + 1)
        fresh_swap = Down(n, Diamond(_and_list(guards + [Down(m, inner)])))
        reswaps = [
            And(Nominal(y),
                At(x, _tr(sub, _replaced(pairs, (x, y), (y, x)), ctx, depth + 1)))
            for (x, y) in pairs
        ]
        return _or_list([reflexive, fresh_swap] + reswaps)
    if kind == "gsw":
        n1 = ctx.fresh.next()
        reflexive = And(Exists(Down(n1, Diamond(Nominal(n1)))),
                        _tr(sub, pairs, ctx, depth))
        k = ctx.fresh.next()
        n = ctx.fresh.next()
        guards = [Not(Nominal(n))]
        if not ctx.options.drop_belongs_guard:
            guards += [Not(belongs(n, pairs)), Not(belongs(n, _inverse(pairs)))]
        m = ctx.fresh.next()
        inner = _tr(sub, pairs + ((n, m),), ctx, depth + 1)
        fresh_swap = Down(k, Exists(Down(n, Diamond(_and_list(
            guards + [Down(m, At(k, inner))])))))
        reswaps = [_tr(sub, _replaced(pairs, (x, y), (y, x)), ctx, depth + 1)
                   for (x, y) in pairs]
        return _or_list([reflexive, fresh_swap] + reswaps)
    raise TranslationError(f"unknown dynamic kind {kind!r}")


def _eco_diamond(sub, pairs, ctx, depth) -> HybridFormula:
    if ctx.options.optimize_empty and not pairs:
        return Diamond(_tr(sub, pairs, ctx, depth))
    inner = _tr(sub, pairs, ctx, depth)
    firsts = list(dict.fromkeys(x for (x, _) in pairs))
    disjuncts = []
    for mask in range(1 << len(firsts)):
        chosen = [x for i, x in enumerate(firsts) if mask >> i & 1]
        blocked = list(dict.fromkeys(
            y for (x, y) in pairs if x in chosen))
        parts = ([Nominal(x) for x in chosen]
                 + [Not(Nominal(x)) for x in firsts if x not in chosen]
                 + [Diamond(_and_list([Not(Nominal(y)) for y in blocked]
                                      + [inner]))])
        disjuncts.append(_and_list(parts))
    if ctx.family == "swap":
        disjuncts.append(is_sat_edges(_inverse(pairs), inner))
    return _or_list(disjuncts)


def _assert_swap_discipline(pairs: Pairs) -> None:
    seen = set(pairs)
    for (x, y) in pairs:
        if x == y:
            raise TranslationError(f"swap pair list holds a reflexive pair {x!r}")
        if (y, x) in seen:
            raise TranslationError(
                f"swap pair list holds symmetric pairs {(x, y)!r} and {(y, x)!r}")


# ---------------------------------------------------------------------------
# Display form and output inspection
# ---------------------------------------------------------------------------

def simplify_for_display(formula: HybridFormula) -> HybridFormula:
    """Negation normal form plus truth-unit elimination.

    Applies only the shape-preserving rewrites used for readable output:
    negations pushed to atoms (binders, satisfaction operators are
    self-dual), then ``true``-conjuncts and ``false``-disjuncts dropped.
    """
    return _drop_units(_hnnf(formula, False))


def _hnnf(node, negate: bool):
    t = type(node)
    if t in (Bottom, Prop, Nominal):
        return Not(node) if negate else node
    if t is Not:
        return _hnnf(node.sub, not negate)
    if t is And:
        if negate:
            return Or(_hnnf(node.left, True), _hnnf(node.right, True))
        return And(_hnnf(node.left, False), _hnnf(node.right, False))
    if t is Or:
        if negate:
            return And(_hnnf(node.left, True), _hnnf(node.right, True))
        return Or(_hnnf(node.left, False), _hnnf(node.right, False))
    if t is Diamond:
        return Box(_hnnf(node.sub, True)) if negate else Diamond(_hnnf(node.sub, False))
    if t is Box:
        return Diamond(_hnnf(node.sub, True)) if negate else Box(_hnnf(node.sub, False))
    if t is Exists:
        return Forall(_hnnf(node.sub, True)) if negate else Exists(_hnnf(node.sub, False))
    if t is Forall:
        return Exists(_hnnf(node.sub, True)) if negate else Forall(_hnnf(node.sub, False))
    if t is At:
        return At(node.nominal, _hnnf(node.sub, negate))
    if t is Down:
        return Down(node.nominal, _hnnf(node.sub, negate))
    raise TypeError(f"not a hybrid node: {node!r}")


def _drop_units(node):
    t = type(node)
    if t in (Bottom, Prop, Nominal):
        return node
    if t is Not:
        return Not(_drop_units(node.sub))
    if t is And:
        left, right = _drop_units(node.left), _drop_units(node.right)
        if left == TOP:
            return right
        if right == TOP:
            return left
        return And(left, right)
    if t is Or:
        left, right = _drop_units(node.left), _drop_units(node.right)
        if left == Bottom():
            return right
        if right == Bottom():
            return left
        return Or(left, right)
    if t is Diamond:
        return Diamond(_drop_units(node.sub))
    if t is Box:
        return Box(_drop_units(node.sub))
    if t is Exists:
        return Exists(_drop_units(node.sub))
    if t is Forall:
        return Forall(_drop_units(node.sub))
    if t is At:
        return At(node.nominal, _drop_units(node.sub))
    if t is Down:
        return Down(node.nominal, _drop_units(node.sub))
    raise TypeError(f"not a hybrid node: {node!r}")


def canonical_rename(formula: HybridFormula) -> HybridFormula:
    """Rename bound nominals to n0, n1, ... in binder pre-order."""
    counter = count()

    def walk(node, env):
        t = type(node)
        if t is Nominal:
            return Nominal(env.get(node.name, node.name))
        if t in (Bottom, Prop):
            return node
        if t is Not:
            return Not(walk(node.sub, env))
        if t is And:
            return And(walk(node.left, env), walk(node.right, env))
        if t is Or:
            return Or(walk(node.left, env), walk(node.right, env))
        if t is Diamond:
            return Diamond(walk(node.sub, env))
        if t is Box:
            return Box(walk(node.sub, env))
        if t is Exists:
            return Exists(walk(node.sub, env))
        if t is Forall:
            return Forall(walk(node.sub, env))
        if t is At:
            return At(env.get(node.nominal, node.nominal), walk(node.sub, env))
        if t is Down:
            fresh = f"n{next(counter)}"
            return Down(fresh, walk(node.sub, {**env, node.nominal: fresh}))
        raise TypeError(f"not a hybrid node: {node!r}")

    return walk(formula, {})


def contains_universal(formula: HybridFormula) -> bool:
    """True if any global modality (E or A) occurs."""
    t = type(formula)
    if t in (Exists, Forall):
        return True
    if t in (And, Or):
        return contains_universal(formula.left) or contains_universal(formula.right)
    if t in (Not, Diamond, Box, At, Down):
        return contains_universal(formula.sub)
    return False


def is_closed(formula: HybridFormula) -> bool:
    """True if every nominal occurrence sits under a binder for it."""
    return not free_nominals(formula)
