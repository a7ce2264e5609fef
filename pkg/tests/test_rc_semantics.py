import pytest
from hypothesis import given, settings

from conftest import rc_formulas
from rcmodal.kripke import KripkeModel, enumerate_models, update
from rcmodal.rc_semantics import rc_check
from rcmodal.syntax import (And, Bottom, Box, Diamond, Not, Or, Prop,
                            parse_rc, prop_names)


def reference_modal_check(model, world, formula):
    """Independent checker for the plain diamond/box/boolean fragment."""
    t = type(formula)
    if t is Bottom:
        return False
    if t is Prop:
        return world in model.valuation.get(formula.name, frozenset())
    if t is Not:
        return not reference_modal_check(model, world, formula.sub)
    if t is And:
        return (reference_modal_check(model, world, formula.left)
                and reference_modal_check(model, world, formula.right))
    if t is Or:
        return (reference_modal_check(model, world, formula.left)
                or reference_modal_check(model, world, formula.right))
    if t is Diamond:
        return any(reference_modal_check(model, v, formula.sub)
                   for v in model.successors(world))
    if t is Box:
        return all(reference_modal_check(model, v, formula.sub)
                   for v in model.successors(world))
    raise TypeError(formula)


class TestDynamicClauses:
    def test_swap_on_reflexive_loop(self, loop_model):
        assert rc_check(loop_model, "w", parse_rc("<sw> <> true"))

    def test_swap_vs_sabotage_on_one_edge(self):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}))
        assert rc_check(model, "w", parse_rc("<sw> <> true"))
        assert not rc_check(model, "w", parse_rc("<sb> <> true"))

    def test_swap_and_sabotage_by_explicit_update_oracle(self):
        # enumerate the successor, apply the update, re-check
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}))
        swapped = update("swap", model, {("v", "w")})
        assert reference_modal_check(swapped, "v", Diamond(Not(Bottom())))
        sabotaged = update("sabotage", model, {("w", "v")})
        assert not reference_modal_check(sabotaged, "v", Diamond(Not(Bottom())))

    def test_bridge_and_global_sabotage_on_edgeless_point(self):
        model = KripkeModel(("w",), frozenset())
        assert rc_check(model, "w", parse_rc("<br> true"))
        assert not rc_check(model, "w", parse_rc("<gsb> true"))

    def test_unknown_world_rejected(self, loop_model):
        with pytest.raises(ValueError):
            rc_check(loop_model, "nope", parse_rc("p"))

    def test_mixed_families_are_fine(self):
        model = KripkeModel(("w",), frozenset())
        assert rc_check(model, "w", parse_rc("<br> <gsb> true"))

    def test_boxes_are_diamond_duals(self):
        pairs = [("[sb] p", "~<sb>~p"), ("[gbr] p", "~<gbr>~p"),
                 ("[sw] <> p", "~<sw>~<>p")]
        for model, point in enumerate_models(2, ("p",)):
            for box_text, dual_text in pairs:
                assert rc_check(model, point, parse_rc(box_text)) == rc_check(
                    model, point, parse_rc(dual_text))

    def test_trace_records_chosen_edges(self):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}))
        trace = []
        assert rc_check(model, "w", parse_rc("<sw> <> true"), trace)
        assert trace == [("sw", ("w", "v"))]


class TestAgainstReferenceChecker:
    @settings(max_examples=60, deadline=None)
    @given(rc_formulas(max_leaves=6, kinds=()))
    def test_agrees_on_basic_fragment(self, formula):
        for model, point in enumerate_models(2, tuple(prop_names(formula))):
            assert rc_check(model, point, formula) == reference_modal_check(
                model, point, formula)

    def test_agrees_on_three_state_sweep(self):
        formulas = [parse_rc(t) for t in
                    ("<>[]p", "[](p -> <>p)", "<><>~p & []p", "~<>true")]
        for formula in formulas:
            for model, point in enumerate_models(3, ("p",)):
                assert rc_check(model, point, formula) == \
                    reference_modal_check(model, point, formula)


class TestSemanticProperties:
    def test_swap_is_diamond_on_subidentity_relations(self):
        # relations inside the identity make swapping a no-op
        formula_swap = parse_rc("<sw> p")
        formula_dia = parse_rc("<> p")
        for model, point in enumerate_models(3, ("p",)):
            if all(a == b for (a, b) in model.relation):
                assert rc_check(model, point, formula_swap) == rc_check(
                    model, point, formula_dia)

    def test_local_sabotage_implies_global_sabotage_possible(self):
        local = parse_rc("<sb> p")
        glob = parse_rc("<gsb> true")
        for model, point in enumerate_models(3, ("p",)):
            if rc_check(model, point, local):
                assert rc_check(model, point, glob)

    def test_stress_depth_three_on_four_states(self):
        states = tuple(range(4))
        relation = frozenset((i, j) for i in states for j in states)
        model = KripkeModel(states, relation, {"p": {0, 2}})
        for text in ("<gsw> <gsb> <gbr> p", "[sw][sb]<br>p", "<sb><sb><sb>p"):
            assert rc_check(model, 0, parse_rc(text)) in (True, False)
