"""Formula syntax: ASTs, parser, printer, normal forms, and metrics.

Two languages share one node vocabulary:

* the source language of edge-changing modal formulas (``RCFormula``),
  with dynamic diamonds/boxes over the six kinds ``sb``, ``gsb``, ``br``,
  ``gbr``, ``sw``, ``gsw``;
* the target hybrid language (``HybridFormula``) with nominals, the
  satisfaction operator ``n:f``, the binder ``!n . f`` and the global
  modalities ``E``/``A``.

Identifiers matching ``[nmkxy][0-9]*`` are nominals, everything else is a
proposition.  The two namespaces never mix: the source parser rejects
nominal-shaped identifiers, so machine-generated nominals can never clash
with input propositions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Bottom", "Prop", "Not", "And", "Or", "Implies", "Diamond", "Box",
    "DynDiamond", "DynBox", "Nominal", "At", "Down", "Exists", "Forall",
    "RCFormula", "HybridFormula", "Formula", "ModalProfile", "ParseError",
    "DYNAMIC_KINDS", "FAMILY_OF", "GLOBAL_KINDS", "LOCAL_KINDS",
    "parse_rc", "parse_hybrid", "print_formula", "to_nnf", "desugar",
    "profile", "prop_names", "nominal_names", "is_nominal_name", "TOP",
]


# ---------------------------------------------------------------------------
# Abstract syntax
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bottom:
    def __repr__(self) -> str:
        return "Bottom()"


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Diamond:
    sub: "Formula"


@dataclass(frozen=True)
class Box:
    sub: "Formula"


@dataclass(frozen=True)
class DynDiamond:
    kind: str
    sub: "Formula"


@dataclass(frozen=True)
class DynBox:
    kind: str
    sub: "Formula"


@dataclass(frozen=True)
class Nominal:
    name: str


@dataclass(frozen=True)
class At:
    nominal: str
    sub: "Formula"


@dataclass(frozen=True)
class Down:
    nominal: str
    sub: "Formula"


@dataclass(frozen=True)
class Exists:
    sub: "Formula"


@dataclass(frozen=True)
class Forall:
    sub: "Formula"


RCFormula = Union[Bottom, Prop, Not, And, Or, Implies, Diamond, Box,
                  DynDiamond, DynBox]
HybridFormula = Union[Bottom, Prop, Nominal, Not, And, Or, Diamond, Box,
                      At, Down, Exists, Forall]
Formula = Union[RCFormula, HybridFormula]

#: Verum has no constructor of its own; ``true`` parses to ``Not(Bottom())``.
TOP = Not(Bottom())

DYNAMIC_KINDS = ("sb", "gsb", "br", "gbr", "sw", "gsw")
LOCAL_KINDS = frozenset({"sb", "br", "sw"})
GLOBAL_KINDS = frozenset({"gsb", "gbr", "gsw"})
FAMILY_OF = {
    "sb": "sabotage", "gsb": "sabotage",
    "br": "bridge", "gbr": "bridge",
    "sw": "swap", "gsw": "swap",
}

_NOMINAL_RE = re.compile(r"[nmkxy][0-9]*\Z")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_nominal_name(name: str) -> bool:
    """True if ``name`` lies in the nominal namespace ``[nmkxy][0-9]*``."""
    return _NOMINAL_RE.match(name) is not None


def is_identifier(name: str) -> bool:
    """True if ``name`` is a well-formed atom identifier."""
    return _IDENT_RE.match(name) is not None


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error carrying position and the tokens that were expected."""

    def __init__(self, message: str, line: int, column: int,
                 expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += " (expected: " + ", ".join(expected) + ")"
        super().__init__(detail)


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<op><->|->|<gsb>|<gbr>|<gsw>|<sb>|<br>|<sw>|<>
        |\[gsb\]|\[gbr\]|\[gsw\]|\[sb\]|\[br\]|\[sw\]|\[\]
        |[&|~()!.:])
    | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    text: str      # token text, or "" for end of input
    kind: str      # "op", "ident", "end"
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup != "ws":
            tokens.append(_Token(lexeme, m.lastgroup, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(_Token("", "end", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser (one recursive-descent core, two language modes)
# ---------------------------------------------------------------------------

_DIAMOND_TOKENS = {f"<{k}>": k for k in DYNAMIC_KINDS}
_BOX_TOKENS = {f"[{k}]": k for k in DYNAMIC_KINDS}

# Tokens that may begin a hybrid formula; drives `E p` vs proposition `E`.
_HYBRID_STARTERS = {"~", "<>", "[]", "(", "!"}


class _Parser:
    def __init__(self, tokens: list[_Token], hybrid: bool):
        self.tokens = tokens
        self.pos = 0
        self.hybrid = hybrid

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, expected: tuple[str, ...] = ()) -> None:
        tok = self.peek()
        what = f"{message}: got {tok.text!r}" if tok.text else f"{message}: got end of input"
        raise ParseError(what, tok.line, tok.column, expected)

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text:
            self.fail("unexpected token", (text,))
        return self.advance()

    def starts_formula(self, tok: _Token) -> bool:
        if tok.kind == "ident":
            return True
        return tok.text in _HYBRID_STARTERS or (
            not self.hybrid and (tok.text in _DIAMOND_TOKENS or tok.text in _BOX_TOKENS))

    # -- grammar -----------------------------------------------------------

    def parse(self) -> Formula:
        node = self.iff()
        if self.peek().kind != "end":
            self.fail("unexpected token after formula", ("end of input",))
        return node

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek().text == "<->":
            self.advance()
            right = self.iff()
            if self.hybrid:
                return And(Or(Not(left), right), Or(Not(right), left))
            return And(Implies(left, right), Implies(right, left))
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.peek().text == "->":
            self.advance()
            right = self.implies()
            if self.hybrid:
                return Or(Not(left), right)
            return Implies(left, right)
        return left

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek().text == "|":
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek().text == "&":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "~":
            self.advance()
            return Not(self.unary())
        if tok.text == "<>":
            self.advance()
            return Diamond(self.unary())
        if tok.text == "[]":
            self.advance()
            return Box(self.unary())
        if tok.text in _DIAMOND_TOKENS:
            if self.hybrid:
                self.fail("dynamic operator in hybrid formula")
            self.advance()
            return DynDiamond(_DIAMOND_TOKENS[tok.text], self.unary())
        if tok.text in _BOX_TOKENS:
            if self.hybrid:
                self.fail("dynamic operator in hybrid formula")
            self.advance()
            return DynBox(_BOX_TOKENS[tok.text], self.unary())
        if tok.text == "!":
            if not self.hybrid:
                self.fail("binder in non-hybrid formula")
            self.advance()
            name = self.peek()
            if name.kind != "ident" or not is_nominal_name(name.text):
                self.fail("binder needs a nominal", ("nominal",))
            self.advance()
            self.expect(".")
            return Down(name.text, self.iff())  # body extends maximally right
        if tok.text == "(":
            self.advance()
            node = self.iff()
            self.expect(")")
            return node
        if tok.kind == "ident":
            return self.atom()
        self.fail("expected a formula",
                  ("atom", "~", "<>", "[]", "(") if self.hybrid else
                  ("atom", "~", "<>", "[]", "(", "<sb>", "[sb]"))
        raise AssertionError("unreachable")

    def atom(self) -> Formula:
        tok = self.advance()
        name = tok.text
        if name == "true":
            return TOP
        if name == "false":
            return Bottom()
        if self.hybrid:
            # E/A act as operators only when a formula follows.
            if name == "E" and self.starts_formula(self.peek()):
                return Exists(self.unary())
            if name == "A" and self.starts_formula(self.peek()):
                return Forall(self.unary())
            if self.peek().text == ":":
                if not is_nominal_name(name):
                    raise ParseError("satisfaction operator needs a nominal",
                                     tok.line, tok.column)
                self.advance()
                return At(name, self.unary())
            if is_nominal_name(name):
                return Nominal(name)
            return Prop(name)
        if is_nominal_name(name):
            raise ParseError(
                f"identifier {name!r} is reserved for nominals",
                tok.line, tok.column)
        return Prop(name)


def parse_rc(text: str) -> RCFormula:
    """Parse source-language text into an ``RCFormula``."""
    return _Parser(_tokenize(text), hybrid=False).parse()


def parse_hybrid(text: str) -> HybridFormula:
    """Parse hybrid-language text into a ``HybridFormula``."""
    return _Parser(_tokenize(text), hybrid=True).parse()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

# Precedence levels: 1 implication, 2 disjunction, 3 conjunction, 4 unary,
# 5 atoms.  `Down` is "right-open": its body runs to the end of the current
# context, so it needs parentheses whenever material follows it (tail=False).

_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4, 5


def print_formula(formula: Formula) -> str:
    """Render a formula; the output re-parses to an identical AST."""
    return _render(formula, 0, True)


def _render(node: Formula, min_prec: int, tail: bool) -> str:
    t = type(node)
    if t is Bottom:
        return "false"
    if t is Prop or t is Nominal:
        return node.name
    if t is Not:
        if node.sub == Bottom():
            return "true"
        return _wrap("~" + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is And:
        wrapped = _PREC_AND < min_prec
        body = (_render(node.left, _PREC_AND, False) + " & "
                + _render(node.right, _PREC_AND + 1, tail or wrapped))
        return "(" + body + ")" if wrapped else body
    if t is Or:
        wrapped = _PREC_OR < min_prec
        body = (_render(node.left, _PREC_OR, False) + " | "
                + _render(node.right, _PREC_OR + 1, tail or wrapped))
        return "(" + body + ")" if wrapped else body
    if t is Implies:
        wrapped = _PREC_IMPLIES < min_prec
        body = (_render(node.left, _PREC_IMPLIES + 1, False) + " -> "
                + _render(node.right, _PREC_IMPLIES, tail or wrapped))
        return "(" + body + ")" if wrapped else body
    if t is Diamond:
        return _wrap("<> " + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is Box:
        return _wrap("[] " + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is DynDiamond:
        return _wrap(f"<{node.kind}> " + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is DynBox:
        return _wrap(f"[{node.kind}] " + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is At:
        return _wrap(f"{node.nominal}:" + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is Exists:
        return _wrap("E " + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is Forall:
        return _wrap("A " + _render(node.sub, _PREC_UNARY, tail),
                     _PREC_UNARY, min_prec)
    if t is Down:
        body = f"!{node.nominal} . " + _render(node.sub, 0, True)
        return body if tail else "(" + body + ")"
    raise TypeError(f"not a formula node: {node!r}")


def _wrap(text: str, prec: int, min_prec: int) -> str:
    return text if prec >= min_prec else "(" + text + ")"


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

def to_nnf(formula: RCFormula) -> RCFormula:
    """Negation normal form: negations pushed down to atoms.

    ``Implies`` is eliminated; box duals are kept first-class so that
    downstream pattern analysis can tell boxes from negated diamonds.
    """
    return _nnf(formula, False)


def _nnf(node: RCFormula, negate: bool) -> RCFormula:
    t = type(node)
    if t is Bottom or t is Prop:
        return Not(node) if negate else node
    if t is Not:
        return _nnf(node.sub, not negate)
    if t is And:
        if negate:
            return Or(_nnf(node.left, True), _nnf(node.right, True))
        return And(_nnf(node.left, False), _nnf(node.right, False))
    if t is Or:
        if negate:
            return And(_nnf(node.left, True), _nnf(node.right, True))
        return Or(_nnf(node.left, False), _nnf(node.right, False))
    if t is Implies:
        if negate:
            return And(_nnf(node.left, False), _nnf(node.right, True))
        return Or(_nnf(node.left, True), _nnf(node.right, False))
    if t is Diamond:
        return Box(_nnf(node.sub, True)) if negate else Diamond(_nnf(node.sub, False))
    if t is Box:
        return Diamond(_nnf(node.sub, True)) if negate else Box(_nnf(node.sub, False))
    if t is DynDiamond:
        sub = _nnf(node.sub, negate)
        return DynBox(node.kind, sub) if negate else DynDiamond(node.kind, sub)
    if t is DynBox:
        sub = _nnf(node.sub, negate)
        return DynDiamond(node.kind, sub) if negate else DynBox(node.kind, sub)
    raise TypeError(f"not a source-language node: {node!r}")


def desugar(formula: RCFormula) -> RCFormula:
    """Rewrite into the primitive fragment {false, p, ~, &, <>, <k>}.

    Or, Implies and the boxes are eliminated through the standard dualities.
    """
    t = type(formula)
    if t is Bottom or t is Prop:
        return formula
    if t is Not:
        return Not(desugar(formula.sub))
    if t is And:
        return And(desugar(formula.left), desugar(formula.right))
    if t is Or:
        return Not(And(Not(desugar(formula.left)), Not(desugar(formula.right))))
    if t is Implies:
        return Not(And(desugar(formula.left), Not(desugar(formula.right))))
    if t is Diamond:
        return Diamond(desugar(formula.sub))
    if t is Box:
        return Not(Diamond(Not(desugar(formula.sub))))
    if t is DynDiamond:
        return DynDiamond(formula.kind, desugar(formula.sub))
    if t is DynBox:
        return Not(DynDiamond(formula.kind, Not(desugar(formula.sub))))
    raise TypeError(f"not a source-language node: {formula!r}")


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModalProfile:
    size: int                  # node count
    modal_depth: int           # max nesting of modal operators
    families: frozenset        # dynamic-operator families present
    local_only: bool
    uses_global: bool


def profile(formula: RCFormula) -> ModalProfile:
    """Purely syntactic size/depth/family metrics."""
    size, depth, families, uses_global = _profile_walk(formula)
    return ModalProfile(size, depth, frozenset(families), not uses_global,
                        uses_global)


def _profile_walk(node: Formula) -> tuple[int, int, set, bool]:
    t = type(node)
    if t is Bottom or t is Prop or t is Nominal:
        return 1, 0, set(), False
    if t in (Not, Exists, Forall):
        size, depth, fam, glob = _profile_walk(node.sub)
        return size + 1, depth, fam, glob
    if t in (At, Down):
        size, depth, fam, glob = _profile_walk(node.sub)
        return size + 1, depth, fam, glob
    if t in (And, Or, Implies):
        ls, ld, lf, lg = _profile_walk(node.left)
        rs, rd, rf, rg = _profile_walk(node.right)
        return ls + rs + 1, max(ld, rd), lf | rf, lg or rg
    if t in (Diamond, Box):
        size, depth, fam, glob = _profile_walk(node.sub)
        return size + 1, depth + 1, fam, glob
    if t in (DynDiamond, DynBox):
        size, depth, fam, glob = _profile_walk(node.sub)
        fam = fam | {FAMILY_OF[node.kind]}
        return size + 1, depth + 1, fam, glob or node.kind in GLOBAL_KINDS
    raise TypeError(f"not a formula node: {node!r}")


def _subnodes(node: Formula) -> Iterator[Formula]:
    t = type(node)
    if t in (And, Or, Implies):
        yield node.left
        yield node.right
    elif t in (Not, Diamond, Box, DynDiamond, DynBox, At, Down, Exists, Forall):
        yield node.sub


def prop_names(formula: Formula) -> set[str]:
    """All proposition names occurring in the formula."""
    names: set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if type(node) is Prop:
            names.add(node.name)
        stack.extend(_subnodes(node))
    return names


def nominal_names(formula: Formula) -> set[str]:
    """All nominal names occurring (bound or free, incl. binder positions)."""
    names: set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        t = type(node)
        if t is Nominal:
            names.add(node.name)
        elif t is At or t is Down:
            names.add(node.nominal)
        stack.extend(_subnodes(node))
    return names
