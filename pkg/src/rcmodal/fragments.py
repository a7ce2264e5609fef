"""Syntactic analyzer for the decidable pattern fragment.

Applies to family-pure, local-only sabotage or swap formulas in negation
normal form.  Each modal operator expands to tokens describing what the
economical compilation emits for it:

    plain box       ->  box
    dynamic diamond ->  binder
    dynamic box     ->  binder box binder

A formula is inside the fragment when no root-to-leaf nesting path carries
box, binder, box as a (not necessarily contiguous) subsequence; plain
diamonds emit nothing, and boolean connectives only fork paths.  On the
depth-two operator battery this criterion rejects exactly the known
undecidability-prone patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (And, Bottom, Box, Diamond, DynBox, DynDiamond, Down,
                     Exists, Forall, At, Not, Or, Prop, Nominal, RCFormula,
                     HybridFormula, profile, to_nnf)

__all__ = ["FragmentReport", "NotApplicableError", "pattern_tokens",
           "fragment_check", "box_binder_box_free", "BOX", "BINDER"]

BOX = "□"      # token emitted for boxes
BINDER = "↓"   # token emitted for binders

_TOKENS = {Box: BOX, DynDiamond: BINDER, DynBox: BINDER + BOX + BINDER}


class NotApplicableError(ValueError):
    """Input outside the analyzable fragment (global or wrong family)."""


@dataclass(frozen=True)
class FragmentReport:
    applicable: bool
    in_fragment: bool
    witness_path: Optional[tuple[str, ...]]  # set iff applicable and out

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "in_fragment": self.in_fragment,
            "witness_path": list(self.witness_path) if self.witness_path else None,
        }


def _applicable(formula: RCFormula) -> bool:
    prof = profile(formula)
    return prof.local_only and (prof.families <= {"sabotage"}
                                or prof.families <= {"swap"})


def pattern_tokens(formula: RCFormula) -> list[str]:
    """Token string per root-to-leaf nesting path, outer to inner.

    Expects negation normal form; apply ``to_nnf`` first.  Raises
    ``NotApplicableError`` for global operators or mixed/bridge families.
    """
    if not _applicable(formula):
        raise NotApplicableError(
            "pattern analysis covers local-only sabotage or swap formulas")
    return [tokens for tokens, _ in _paths(formula, "", ())]


def _paths(node, tokens: str, ops: tuple) -> list[tuple[str, tuple]]:
    t = type(node)
    if t in (Bottom, Prop):
        return [(tokens, ops)]
    if t is Not:
        return _paths(node.sub, tokens, ops)
    if t in (And, Or):
        return (_paths(node.left, tokens, ops)
                + _paths(node.right, tokens, ops))
    if t is Diamond:
        return _paths(node.sub, tokens, ops + ("<>",))
    if t is Box:
        return _paths(node.sub, tokens + BOX, ops + ("[]",))
    if t is DynDiamond:
        return _paths(node.sub, tokens + BINDER, ops + (f"<{node.kind}>",))
    if t is DynBox:
        return _paths(node.sub, tokens + BINDER + BOX + BINDER,
                      ops + (f"[{node.kind}]",))
    raise NotApplicableError(f"unsupported node for pattern analysis: {node!r}")


def _contains_box_binder_box(tokens: str) -> bool:
    stage = 0  # looking for box, then binder, then box
    for tok in tokens:
        if stage == 0 and tok == BOX:
            stage = 1
        elif stage == 1 and tok == BINDER:
            stage = 2
        elif stage == 2 and tok == BOX:
            return True
    return False


def fragment_check(formula: RCFormula) -> FragmentReport:
    """Decide fragment membership; never raises.

    The witness is the shortest modal-operator prefix of an offending path
    whose token expansion completes the forbidden box-binder-box pattern.
    """
    if not _applicable(formula):
        return FragmentReport(applicable=False, in_fragment=False,
                              witness_path=None)
    normalized = to_nnf(formula)
    for tokens, ops in _paths(normalized, "", ()):
        if _contains_box_binder_box(tokens):
            return FragmentReport(
                applicable=True, in_fragment=False,
                witness_path=_shortest_witness(ops))
    return FragmentReport(applicable=True, in_fragment=True, witness_path=None)


def _shortest_witness(ops: tuple) -> tuple[str, ...]:
    tokens = ""
    for i, op in enumerate(ops):
        if op == "<>":
            continue
        tokens += _op_tokens(op)
        if _contains_box_binder_box(tokens):
            return ops[:i + 1]
    return ops


def _op_tokens(op: str) -> str:
    if op == "[]":
        return BOX
    if op.startswith("<"):
        return BINDER
    return BINDER + BOX + BINDER


def box_binder_box_free(formula: HybridFormula) -> bool:
    """No path of a hybrid formula nests box, binder, box in that order."""
    return not _hybrid_scan(formula, 0)


def _hybrid_scan(node, stage: int) -> bool:
    t = type(node)
    if t in (Bottom, Prop, Nominal):
        return False
    if t is Box:
        if stage == 2:
            return True
        return _hybrid_scan(node.sub, max(stage, 1))
    if t is Down:
        return _hybrid_scan(node.sub, 2 if stage >= 1 else 0)
    if t in (And, Or):
        return _hybrid_scan(node.left, stage) or _hybrid_scan(node.right, stage)
    if t in (Not, Diamond, Exists, Forall, At):
        return _hybrid_scan(node.sub, stage)
    raise TypeError(f"not a hybrid node: {node!r}")
