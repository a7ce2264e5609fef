import hypothesis.strategies as st
import pytest

from rcmodal.kripke import KripkeModel
from rcmodal.syntax import (And, At, Bottom, Box, Diamond, Down, DynBox,
                            DynDiamond, DYNAMIC_KINDS, Exists, Forall,
                            Implies, Nominal, Not, Or, Prop)

# Proposition pools deliberately include "E" and "A" to stress the
# operator-vs-atom disambiguation in the hybrid parser.
PROP_NAMES = ("p", "q", "r", "A", "B", "E")
NOMINAL_NAMES = ("n", "m", "k", "x", "y2", "n0", "n13")


def rc_formulas(max_leaves: int = 10, kinds=DYNAMIC_KINDS):
    atoms = st.one_of(
        st.builds(Bottom),
        st.builds(Prop, st.sampled_from(PROP_NAMES)),
    )

    def extend(children):
        options = [
            st.builds(Not, children),
            st.builds(Diamond, children),
            st.builds(Box, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
        ]
        if kinds:
            options.append(st.builds(DynDiamond, st.sampled_from(kinds), children))
            options.append(st.builds(DynBox, st.sampled_from(kinds), children))
        return st.one_of(options)

    return st.recursive(atoms, extend, max_leaves=max_leaves)


def hybrid_formulas(max_leaves: int = 10):
    atoms = st.one_of(
        st.builds(Bottom),
        st.builds(Prop, st.sampled_from(PROP_NAMES)),
        st.builds(Nominal, st.sampled_from(NOMINAL_NAMES)),
    )

    def extend(children):
        return st.one_of(
            st.builds(Not, children),
            st.builds(Diamond, children),
            st.builds(Box, children),
            st.builds(Exists, children),
            st.builds(Forall, children),
            st.builds(At, st.sampled_from(NOMINAL_NAMES), children),
            st.builds(Down, st.sampled_from(NOMINAL_NAMES), children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
        )

    return st.recursive(atoms, extend, max_leaves=max_leaves)


@st.composite
def kripke_models(draw, max_states: int = 5, props=("p", "q")):
    k = draw(st.integers(min_value=1, max_value=max_states))
    states = tuple(range(k))
    pairs = [(i, j) for i in range(k) for j in range(k)]
    relation = frozenset(draw(st.sets(st.sampled_from(pairs))))
    valuation = {p: frozenset(draw(st.sets(st.sampled_from(states))))
                 for p in props}
    return KripkeModel(states, relation, valuation)


@pytest.fixture
def loop_model():
    return KripkeModel(("w",), frozenset({("w", "w")}))


@pytest.fixture
def triangle_model():
    return KripkeModel(("w", "a", "b"),
                       frozenset({("w", "a"), ("a", "b"), ("w", "b")}))
