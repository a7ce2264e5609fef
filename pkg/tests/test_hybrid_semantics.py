import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hybrid_formulas
from rcmodal.hybrid_semantics import (UnboundNominalError, free_nominals,
                                      hy_check, initial_assignment)
from rcmodal.kripke import KripkeModel, enumerate_models
from rcmodal.syntax import (And, At, Exists, Nominal, Not, parse_hybrid,
                            print_formula)

SELF_LOOP_ONLY = parse_hybrid("!n . [] n")
RETURN_IN_TWO = parse_hybrid("!n . <> !m . n:<><> m")


@pytest.fixture
def twins_model():
    return KripkeModel(("w", "u"), frozenset(
        {("w", "w"), ("u", "u"), ("w", "u"), ("u", "w")}))


@pytest.fixture
def fork_model():
    return KripkeModel(("w", "s1", "s2", "s3"),
                       frozenset({("w", "s1"), ("s1", "s2"), ("w", "s3")}))


class TestFixtures:
    def test_loop_vs_twins(self, loop_model, twins_model):
        assert hy_check(loop_model, {}, "w", SELF_LOOP_ONLY) is True
        assert hy_check(twins_model, {}, "w", SELF_LOOP_ONLY) is False

    def test_triangle_vs_fork(self, triangle_model, fork_model):
        assert hy_check(triangle_model, {}, "w", RETURN_IN_TWO) is True
        assert hy_check(fork_model, {}, "w", RETURN_IN_TWO) is False


class TestStore:
    def test_unbound_nominal_is_an_error(self, loop_model):
        with pytest.raises(UnboundNominalError):
            hy_check(loop_model, {}, "w", Nominal("n0"))
        with pytest.raises(UnboundNominalError):
            hy_check(loop_model, {}, "w", At("n0", Not(Nominal("n0"))))

    def test_unknown_world_rejected(self, loop_model):
        with pytest.raises(ValueError):
            hy_check(loop_model, {}, "z", SELF_LOOP_ONLY)

    def test_binder_rebinds(self, triangle_model):
        # n renamed to each visited state in turn
        formula = parse_hybrid("!n . <> !n . ~n:<>n")
        assert hy_check(triangle_model, {}, "w", formula) in (True, False)

    def test_free_nominals(self):
        formula = parse_hybrid("!n . (n & m & k:<>n)")
        assert free_nominals(formula) == {"m", "k"}

    def test_initial_assignment_covers_all_nominals(self):
        g = initial_assignment(RETURN_IN_TWO, "w")
        assert g == {"n": "w", "m": "w"}

    @settings(max_examples=120, deadline=None)
    @given(hybrid_formulas(max_leaves=6), st.integers(0, 2))
    def test_store_locality(self, formula, shift):
        # changing the assignment of a non-free nominal never matters
        spare = "n99"
        assert spare not in free_nominals(formula)
        for model, point in enumerate_models(2, ("p", "q", "r", "A", "B", "E")):
            base = {name: model.states[0] for name in free_nominals(formula)}
            with_spare = dict(base)
            with_spare[spare] = model.states[shift % len(model.states)]
            assert hy_check(model, base, point, formula) == hy_check(
                model, with_spare, point, formula)
            break  # one model per example keeps the property cheap


class TestDualities:
    @settings(max_examples=80, deadline=None)
    @given(hybrid_formulas(max_leaves=5))
    def test_exists_forall_duality(self, formula):
        exists = Exists(formula)
        dual = Not(parse_hybrid("A ~(" + print_formula(formula) + ")"))
        for model, point in enumerate_models(2, ("p", "q", "r", "A", "B", "E")):
            g = {name: model.states[0]
                 for name in free_nominals(exists)}
            assert hy_check(model, g, point, exists) == hy_check(
                model, g, point, dual)
            break

    def test_at_idempotent(self, triangle_model):
        inner = parse_hybrid("n:<>m")
        once = At("n", inner)
        twice = At("n", At("n", inner))
        for w in triangle_model.states:
            for v in triangle_model.states:
                g = {"n": w, "m": v}
                for point in triangle_model.states:
                    assert hy_check(triangle_model, g, point, once) == \
                        hy_check(triangle_model, g, point, twice)

    def test_at_definable_through_exists(self):
        # n:f is E(n & f)
        body = parse_hybrid("<> (p & n)")
        at_form = At("n", body)
        exists_form = Exists(And(Nominal("n"), body))
        for model, point in enumerate_models(2, ("p",)):
            for target in model.states:
                g = {"n": target}
                assert hy_check(model, g, point, at_form) == hy_check(
                    model, g, point, exists_form)
