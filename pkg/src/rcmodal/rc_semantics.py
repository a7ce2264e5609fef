"""Direct model checker for the full source language.

Each dynamic operator evaluates its continuation in a freshly derived
relation (persistent frozensets, no mutate-and-undo), which keeps nested
updates aliasing-free.  Successor candidates are tried in state-list order,
so satisfying traces are reproducible.
"""

from __future__ import annotations

from typing import Optional

from .kripke import KripkeModel
from .syntax import (And, Bottom, Box, Diamond, DynBox, DynDiamond, Implies,
                     Not, Or, Prop, RCFormula)

__all__ = ["rc_check"]

_EMPTY: frozenset = frozenset()


def rc_check(model: KripkeModel, world, formula: RCFormula,
             trace: Optional[list] = None) -> bool:
    """Truth of ``formula`` at ``world``.

    ``trace``, if given, collects ``(kind, edge)`` pairs for every dynamic
    edge choice on the satisfying evaluation, innermost first.
    """
    if world not in set(model.states):
        raise ValueError(f"state {world!r} is not in the model")
    return _eval(formula, world, model.relation, model.states,
                 model.valuation, trace)


def _eval(node, w, rel, states, val, trace) -> bool:
    t = type(node)
    if t is Prop:
        return w in val.get(node.name, _EMPTY)
    if t is Bottom:
        return False
    if t is Not:
        return not _eval(node.sub, w, rel, states, val, trace)
    if t is And:
        return (_eval(node.left, w, rel, states, val, trace)
                and _eval(node.right, w, rel, states, val, trace))
    if t is Or:
        return (_eval(node.left, w, rel, states, val, trace)
                or _eval(node.right, w, rel, states, val, trace))
    if t is Implies:
        return (not _eval(node.left, w, rel, states, val, trace)
                or _eval(node.right, w, rel, states, val, trace))
    if t is Diamond:
        sub = node.sub
        return any((w, v) in rel and _eval(sub, v, rel, states, val, trace)
                   for v in states)
    if t is Box:
        sub = node.sub
        return all((w, v) not in rel or _eval(sub, v, rel, states, val, trace)
                   for v in states)
    if t is DynDiamond:
        return _eval_dynamic(node.kind, node.sub, w, rel, states, val,
                             trace, witness=True)
    if t is DynBox:
        return not _eval_dynamic(node.kind, Not(node.sub), w, rel, states,
                                 val, None, witness=False)
    raise TypeError(f"not a source-language node: {node!r}")


def _eval_dynamic(kind, sub, w, rel, states, val, trace, witness) -> bool:
    if kind == "sb":
        for v in states:
            edge = (w, v)
            if edge in rel and _eval(sub, v, rel - {edge}, states, val, trace):
                _note(trace, kind, edge)
                return True
        return False
    if kind == "br":
        for v in states:
            edge = (w, v)
            if edge not in rel and _eval(sub, v, rel | {edge}, states, val, trace):
                _note(trace, kind, edge)
                return True
        return False
    if kind == "sw":
        for v in states:
            edge = (w, v)
            if edge in rel and _eval(sub, v, (rel - {edge}) | {(v, w)},
                                     states, val, trace):
                _note(trace, kind, edge)
                return True
        return False
    if kind == "gsb":
        for u in states:
            for v in states:
                edge = (u, v)
                if edge in rel and _eval(sub, w, rel - {edge}, states, val, trace):
                    _note(trace, kind, edge)
                    return True
        return False
    if kind == "gbr":
        for u in states:
            for v in states:
                edge = (u, v)
                if edge not in rel and _eval(sub, w, rel | {edge}, states,
                                             val, trace):
                    _note(trace, kind, edge)
                    return True
        return False
    if kind == "gsw":
        for u in states:
            for v in states:
                edge = (u, v)
                if edge in rel and _eval(sub, w, (rel - {edge}) | {(v, u)},
                                         states, val, trace):
                    _note(trace, kind, edge)
                    return True
        return False
    raise ValueError(f"unknown dynamic kind {kind!r}")


def _note(trace, kind, edge) -> None:
    if trace is not None:
        trace.append((kind, edge))
