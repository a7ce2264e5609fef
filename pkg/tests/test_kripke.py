import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import kripke_models
from rcmodal.kripke import (FrameClassReport, KripkeModel, ModelError,
                            UpdateError, count_models, enumerate_models,
                            frame_classify, load_model, model_from_dict,
                            model_to_dict, save_model, update)


class TestModel:
    def test_needs_a_state(self):
        with pytest.raises(ModelError):
            KripkeModel((), frozenset())

    def test_relation_stays_inside(self):
        with pytest.raises(ModelError):
            KripkeModel(("w",), frozenset({("w", "z")}))

    def test_valuation_stays_inside(self):
        with pytest.raises(ModelError):
            KripkeModel(("w",), frozenset(), {"p": {"z"}})

    def test_set_equality_ignores_state_order(self):
        a = KripkeModel(("w", "v"), frozenset({("w", "v")}), {"p": {"v"}})
        b = KripkeModel(("v", "w"), frozenset({("w", "v")}), {"p": {"v"}})
        assert a == b and hash(a) == hash(b)

    def test_empty_valuation_entries_normalize_away(self):
        a = KripkeModel(("w",), frozenset(), {"p": set()})
        b = KripkeModel(("w",), frozenset())
        assert a == b and a.valuation == {}

    def test_successor_order_follows_state_list(self):
        model = KripkeModel(("b", "a"), frozenset({("b", "a"), ("b", "b")}))
        assert model.successors("b") == ["b", "a"]


class TestUpdate:
    def test_sabotage_deletes(self):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}))
        assert update("sabotage", model, {("w", "v")}).relation == frozenset()

    def test_swap_inverts(self):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}))
        swapped = update("swap", model, {("v", "w")})
        assert swapped.relation == frozenset({("v", "w")})

    def test_bridge_adds(self):
        model = KripkeModel(("w",), frozenset())
        assert update("bridge", model, {("w", "w")}).relation == frozenset(
            {("w", "w")})

    def test_preconditions(self):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}))
        with pytest.raises(UpdateError) as excinfo:
            update("sabotage", model, {("v", "w")})
        assert excinfo.value.pair == ("v", "w")
        with pytest.raises(UpdateError):
            update("bridge", model, {("w", "v")})
        with pytest.raises(UpdateError):
            update("swap", model, {("w", "v")})  # (v, w) is not an edge

    def test_valuation_and_states_untouched(self):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}), {"p": {"w"}})
        updated = update("sabotage", model, {("w", "v")})
        assert updated.states == model.states
        assert updated.valuation == model.valuation

    @settings(max_examples=200)
    @given(kripke_models(), st.randoms(use_true_random=False))
    def test_sabotage_bridge_cancel(self, model, rnd):
        edges = sorted(model.relation)
        subset = frozenset(e for e in edges if rnd.random() < 0.5)
        assert update("bridge", update("sabotage", model, subset), subset) == model

    @settings(max_examples=200)
    @given(kripke_models())
    def test_double_swap_restores(self, model):
        candidates = [(w, v) for (w, v) in sorted(model.relation)
                      if w != v and (v, w) not in model.relation]
        if not candidates:
            return
        w, v = candidates[0]
        once = update("swap", model, {(v, w)})
        assert update("swap", once, {(w, v)}) == model

    @settings(max_examples=200)
    @given(kripke_models())
    def test_swap_is_set_computation(self, model):
        pairs = frozenset((v, w) for (w, v) in model.relation)
        swapped = update("swap", model, pairs)
        inverse = frozenset((b, a) for (a, b) in pairs)
        assert swapped.relation == (model.relation - inverse) | pairs


class TestFrameClassify:
    def test_singleton_loop(self):
        report = frame_classify(KripkeModel(("a",), frozenset({("a", "a")})))
        assert report.s5 and report.complete and not report.linear
        assert not report.transitive_tree and report.width == 1

    def test_strict_chain(self):
        report = frame_classify(KripkeModel(
            ("a", "b", "c"), frozenset({("a", "b"), ("b", "c"), ("a", "c")})))
        assert report == FrameClassReport(
            complete=False, s5=False, linear=True, transitive_tree=True,
            width=2)

    def test_symmetric_irreflexive_pair(self):
        report = frame_classify(KripkeModel(
            ("a", "b"), frozenset({("a", "b"), ("b", "a")})))
        assert report == FrameClassReport(
            complete=False, s5=False, linear=False, transitive_tree=False,
            width=1)

    def test_branching_transitive_tree(self):
        relation = frozenset({("r", "a"), ("r", "b"), ("a", "c"), ("r", "c")})
        report = frame_classify(KripkeModel(("r", "a", "b", "c"), relation))
        assert report.transitive_tree and not report.linear

    def test_disconnected_is_no_tree(self):
        report = frame_classify(KripkeModel(("a", "b", "z"),
                                            frozenset({("a", "b")})))
        assert not report.transitive_tree

    @settings(max_examples=50)
    @given(st.integers(min_value=1, max_value=4))
    def test_complete_implies_s5(self, k):
        states = tuple(range(k))
        relation = frozenset((i, j) for i in states for j in states)
        report = frame_classify(KripkeModel(states, relation))
        assert report.complete and report.s5


class TestEnumeration:
    @pytest.mark.parametrize("max_states,props,expected", [
        (1, (), 2),
        (1, ("p",), 4),
        (2, (), 34),
    ])
    def test_counts(self, max_states, props, expected):
        assert len(list(enumerate_models(max_states, props))) == expected
        assert count_models(max_states, len(props)) == expected

    def test_first_model_is_edgeless(self):
        model, point = next(enumerate_models(3, ("p",)))
        assert model.states == (0,) and model.relation == frozenset()
        assert model.valuation == {} and point == 0

    def test_pairwise_distinct(self):
        seen = set()
        for model, point in enumerate_models(2, ("p",)):
            key = (model.key(), point)
            assert key not in seen
            seen.add(key)
        assert len(seen) == count_models(2, 1)

    def test_deterministic_order(self):
        first = [(m.key(), w) for m, w in enumerate_models(2, ("p",))]
        second = [(m.key(), w) for m, w in enumerate_models(2, ("p",))]
        assert first == second

    def test_isomorphism_pruning_keeps_representatives(self):
        full = list(enumerate_models(3, ()))
        pruned = list(enumerate_models(3, (), prune_isomorphic=True))
        assert len(pruned) < len(full)
        pruned_keys = {(m.key(), w) for m, w in pruned}
        assert pruned_keys <= {(m.key(), w) for m, w in full}


class TestModelFiles:
    def test_simple_load(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text('{"states": ["w"], "relation": [["w", "w"]]}')
        loaded = load_model(path)
        assert loaded.model == KripkeModel(("w",), frozenset({("w", "w")}))
        assert loaded.point is None

    def test_dangling_state_rejected(self):
        with pytest.raises(ModelError):
            model_from_dict({"states": ["w"], "relation": [["w", "z"]]})
        with pytest.raises(ModelError):
            model_from_dict({"states": ["w"], "relation": [],
                             "valuation": {"p": ["z"]}})

    def test_unknown_field_rejected(self):
        with pytest.raises(ModelError):
            model_from_dict({"states": ["w"], "relation": [], "extra": 1})

    def test_bad_nominal_rejected(self):
        with pytest.raises(ModelError):
            model_from_dict({"states": ["w"], "relation": [],
                             "nominals": {"prop": "w"}})

    def test_triangle_file_roundtrips_identically(self, tmp_path):
        source = "tests/fixtures/triangle.json"
        loaded = load_model(source)
        out = tmp_path / "copy.json"
        save_model(loaded.model, out, point=loaded.point)
        original = json.loads(open(source).read())
        assert json.loads(out.read_text()) == original

    def test_save_load_inverse_on_canonical_models(self, tmp_path):
        model = KripkeModel(("w", "v"), frozenset({("w", "v")}),
                            {"A": {"w"}})
        path = tmp_path / "m.json"
        save_model(model, path, point="w", nominals={"n0": "v"})
        loaded = load_model(path)
        assert loaded.model == model
        assert loaded.point == "w"
        assert loaded.nominals == {"n0": "v"}
        again = tmp_path / "again.json"
        save_model(loaded.model, again, point=loaded.point,
                   nominals=loaded.nominals)
        assert json.loads(path.read_text()) == json.loads(again.read_text())
