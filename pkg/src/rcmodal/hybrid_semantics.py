"""Model checker for the hybrid target language.

Nominals live in an explicit assignment (the store), not in the model's
valuation: the binder rebinds by extending a copy of the store, so the
model itself is never touched and the relation stays fixed throughout.
"""

from __future__ import annotations

from typing import Mapping

from .kripke import KripkeModel
from .syntax import (And, At, Bottom, Box, Diamond, Down, Exists, Forall,
                     HybridFormula, Nominal, Not, Or, Prop, nominal_names)

__all__ = ["hy_check", "initial_assignment", "free_nominals",
           "UnboundNominalError"]

_EMPTY: frozenset = frozenset()


class UnboundNominalError(ValueError):
    """A nominal was evaluated without an assignment entry."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"nominal {name!r} has no assigned state")


def hy_check(model: KripkeModel, assignment: Mapping, world,
             formula: HybridFormula) -> bool:
    """Truth of ``formula`` at ``world`` under the nominal ``assignment``."""
    if world not in set(model.states):
        raise ValueError(f"state {world!r} is not in the model")
    rel = model.relation
    succ = {s: tuple(v for v in model.states if (s, v) in rel)
            for s in model.states}
    return _eval(formula, world, dict(assignment), succ, model.states,
                 model.valuation)


def _eval(node, w, g, succ, states, val) -> bool:
    t = type(node)
    if t is Prop:
        return w in val.get(node.name, _EMPTY)
    if t is Nominal:
        try:
            return g[node.name] == w
        except KeyError:
            raise UnboundNominalError(node.name) from None
    if t is Bottom:
        return False
    if t is Not:
        return not _eval(node.sub, w, g, succ, states, val)
    if t is And:
        return (_eval(node.left, w, g, succ, states, val)
                and _eval(node.right, w, g, succ, states, val))
    if t is Or:
        return (_eval(node.left, w, g, succ, states, val)
                or _eval(node.right, w, g, succ, states, val))
    if t is Diamond:
        sub = node.sub
        return any(_eval(sub, v, g, succ, states, val) for v in succ[w])
    if t is Box:
        sub = node.sub
        return all(_eval(sub, v, g, succ, states, val) for v in succ[w])
    if t is At:
        try:
            target = g[node.nominal]
        except KeyError:
            raise UnboundNominalError(node.nominal) from None
        return _eval(node.sub, target, g, succ, states, val)
    if t is Down:
        extended = dict(g)
        extended[node.nominal] = w
        return _eval(node.sub, w, extended, succ, states, val)
    if t is Exists:
        sub = node.sub
        return any(_eval(sub, v, g, succ, states, val) for v in states)
    if t is Forall:
        sub = node.sub
        return all(_eval(sub, v, g, succ, states, val) for v in states)
    raise TypeError(f"not a hybrid node: {node!r}")


def initial_assignment(formula: HybridFormula, world) -> dict:
    """Seed assignment mapping every nominal of ``formula`` to ``world``.

    For closed formulas (every nominal bound by a binder) the seed is
    irrelevant to the truth value; it merely makes the store total.
    """
    return {name: world for name in nominal_names(formula)}


def free_nominals(formula: HybridFormula) -> set[str]:
    """Nominals with at least one occurrence outside a binder for them."""
    free: set[str] = set()
    _collect_free(formula, frozenset(), free)
    return free


def _collect_free(node, bound, free) -> None:
    t = type(node)
    if t is Nominal:
        if node.name not in bound:
            free.add(node.name)
    elif t is At:
        if node.nominal not in bound:
            free.add(node.nominal)
        _collect_free(node.sub, bound, free)
    elif t is Down:
        _collect_free(node.sub, bound | {node.nominal}, free)
    elif t in (Not, Diamond, Box, Exists, Forall):
        _collect_free(node.sub, bound, free)
    elif t in (And, Or):
        _collect_free(node.left, bound, free)
        _collect_free(node.right, bound, free)
