import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aol.formula import (
    FALSE, TRUE, Abd, And, Atom, Implies, Knows, Not, Only, PrefCond, conjoin,
)
from aol.kripke import (
    EvaluationContext, KripkeModel, MissingOrderError, ModelError, UnknownAtomError,
    UnknownWorldError, WitnessMode, abduction_witness, canonical_alpha, characteristic_formula,
    global_validity, local_consequence, nonvacuity_violations, relation_properties,
    restrict_nonvacuous, satisfies, truth_set, validity_counterexample,
)
from aol.metatheory.generate import AuditConfig, random_formula, random_kripke

from oracle import Oracle

p, q = Atom("p"), Atom("q")
fever, flu, cold = Atom("fever"), Atom("flu"), Atom("cold")


def one_world():
    return KripkeModel.build(["w1"], [("w1", "w1")], {"fever": ["w1"], "flu": ["w1"]},
                             ["fever", "flu", "cold"], "w1")


def two_worlds():
    return KripkeModel.build(["w1", "w2"], [("w1", "w1"), ("w1", "w2"), ("w2", "w2")],
                             {"fever": ["w1", "w2"], "flu": ["w1"], "cold": ["w2"]},
                             ["fever", "flu", "cold"], "w1")


class TestModel:
    def test_rejects_bad_models(self):
        with pytest.raises(ModelError):
            KripkeModel.build([], [], {})
        with pytest.raises(ModelError):
            KripkeModel.build(["w1"], [("w1", "w9")], {})
        with pytest.raises(ModelError):
            KripkeModel.build(["w1"], [], {"p": ["w2"]})
        with pytest.raises(ModelError):
            KripkeModel.build(["w1", "w1"], [], {})

    def test_unknown_world_and_atom(self):
        m = one_world()
        with pytest.raises(UnknownWorldError):
            satisfies(m, EvaluationContext(), "w7", fever)
        with pytest.raises(UnknownAtomError):
            satisfies(m, EvaluationContext(), "w1", Atom("cough"))

    def test_pref_needs_an_order(self):
        with pytest.raises(MissingOrderError):
            satisfies(one_world(), EvaluationContext(), "w1", PrefCond(fever, flu))

    def test_relation_properties(self):
        refl = KripkeModel.build(["a", "b"], [("a", "a"), ("b", "b")], {})
        assert relation_properties(refl).reflexive
        prop1 = KripkeModel.build(["w1", "w2"], [("w1", "w2"), ("w1", "w1"), ("w2", "w2")], {})
        props = relation_properties(prop1)
        assert props.reflexive and not props.symmetric
        empty = KripkeModel.build(["w1"], [], {})
        props = relation_properties(empty)
        assert props.transitive and not props.reflexive


class TestSatisfaction:
    def test_blocking(self):
        ctx = EvaluationContext(background=(flu,))
        assert satisfies(one_world(), ctx, "w1", Abd(fever))
        assert not satisfies(two_worlds(), ctx, "w1", Abd(fever))

    def test_unrestricted_mode_collapses(self):
        ctx = EvaluationContext(background=(flu,), witness_mode=WitnessMode.UNRESTRICTED)
        assert satisfies(two_worlds(), ctx, "w1", Abd(fever))
        assert satisfies(two_worlds(), ctx, "w1", Abd(FALSE))

    def test_empty_accessible_set(self):
        m = KripkeModel.build(["w1"], [], {"p": ["w1"]})
        ctx = EvaluationContext()
        assert satisfies(m, ctx, "w1", Knows(FALSE))
        assert satisfies(m, ctx, "w1", Only(FALSE))
        assert not satisfies(m, ctx, "w1", Only(p))

    def test_example_diagnosis(self, flu_case):
        doc, _ = flu_case
        assert satisfies(doc.model, doc.context(), doc.actual, Abd(Atom("flu")))

    def test_truth_sets(self, minimal_case):
        doc, _ = minimal_case
        ctx = doc.context()
        assert truth_set(doc.base, ctx, TRUE) == set(doc.base.worlds)
        assert truth_set(doc.base, ctx, FALSE) == set()
        assert truth_set(doc.base, ctx, Atom("gamma")) == {"w1"}

    def test_only_knowing_is_truth_set_equality(self):
        rng = random.Random(3)
        cfg = AuditConfig(max_worlds=4, max_atoms=3)
        for _ in range(200):
            m = random_kripke(rng, cfg)
            a = random_formula(rng, m.vocabulary, 2)
            ext = truth_set(m, EvaluationContext(), a)
            for w in m.worlds:
                assert satisfies(m, EvaluationContext(), w, Only(a)) == (ext == m.successors(w))


class TestWitness:
    def test_canonical_alpha(self, flu_case):
        doc, _ = flu_case
        assert canonical_alpha(doc.base, EvaluationContext(background=(flu,)), "w1") == flu
        assert canonical_alpha(doc.base, doc.context(), "w1") == conjoin(doc.theory)
        assert canonical_alpha(doc.base, EvaluationContext(), "w1") is None

    def test_observation_in_background(self):
        obs = And(Atom("cough"), fever)
        # a model where the observation is only-known at w1
        m = KripkeModel.build(["w1", "w2"], [("w1", "w1"), ("w1", "w2")],
                              {"cough": ["w1", "w2"], "fever": ["w1", "w2"], "flu": ["w1"]})
        ctx = EvaluationContext(background=(obs,))
        assert abduction_witness(m, ctx, "w1", flu) == obs

    def test_conjunction_witness(self):
        m = KripkeModel.build(["w1", "w2"], [("w1", "w1")], {"p": ["w1"], "q": ["w1", "w2"]})
        ctx = EvaluationContext(background=(p, q), witness_mode=WitnessMode.CONJUNCTION)
        assert abduction_witness(m, ctx, "w1", And(p, q)) == And(p, q)

    def test_no_witness(self):
        m = KripkeModel.build(["w1", "w2"], [("w1", "w1"), ("w1", "w2")], {"p": ["w1"]})
        ctx = EvaluationContext(background=(p, Not(p)))
        assert abduction_witness(m, ctx, "w1", p) is None
        assert not satisfies(m, ctx, "w1", Abd(p))

    def test_witness_requires_boolean(self):
        with pytest.raises(Exception):
            abduction_witness(one_world(), EvaluationContext(background=(flu,)), "w1", Knows(p))

    def test_witness_agrees_with_satisfies(self):
        rng = random.Random(11)
        cfg = AuditConfig(max_worlds=4, max_atoms=3)
        for _ in range(200):
            m = random_kripke(rng, cfg, min_atoms=2)
            bg = tuple(random_formula(rng, m.vocabulary, 2) for _ in range(2))
            ctx = EvaluationContext(background=bg)
            g = random_formula(rng, m.vocabulary, 2)
            for w in m.worlds:
                alpha = abduction_witness(m, ctx, w, g)
                assert (alpha is not None) == satisfies(m, ctx, w, Abd(g))
                if alpha is not None:
                    assert satisfies(m, ctx, w, Only(alpha))
                    assert satisfies(m, ctx, w, Knows(Implies(g, alpha)))

    def test_characteristic_formula(self):
        m = KripkeModel.build(["a", "b", "c"], [], {"p": ["a", "b"]})
        assert characteristic_formula(m, m.mask_of(["a"])) is None
        f = characteristic_formula(m, m.mask_of(["a", "b"]))
        assert truth_set(m, EvaluationContext(), f) == {"a", "b"}
        assert characteristic_formula(m, 0) == FALSE
        assert characteristic_formula(m, m.full) == TRUE


class TestConsequence:
    def test_reflexivity_and_validity(self):
        suite = [(two_worlds(), EvaluationContext(background=(fever, flu)))]
        assert local_consequence(suite, [fever], fever)
        assert global_validity(suite, TRUE)
        assert global_validity(suite, Implies(Only(fever), Abd(fever)))

    def test_abduction_does_not_imply_only(self):
        m = KripkeModel.build(["w1"], [("w1", "w1")], {"flu": ["w1"]}, ["fever", "flu"])
        cex = validity_counterexample([(m, EvaluationContext(background=(flu,)))],
                                      Implies(Abd(fever), Only(fever)))
        assert cex == (0, "w1")

    def test_prop1_model(self):
        m = KripkeModel.build(["w1", "w2"], [("w1", "w2"), ("w1", "w1"), ("w2", "w2")],
                              {"p": ["w1", "w2"], "q": ["w1"]})
        ctx = EvaluationContext(background=(p, Implies(q, p)))
        assert local_consequence([(m, ctx)], [Only(p), Only(Implies(q, p))], Abd(q))


class TestRestriction:
    def test_identity_when_everything_qualifies(self):
        m = KripkeModel.build(["w1", "w2"], [("w1", "w2"), ("w2", "w1")], {"p": ["w1", "w2"]})
        sub, mapping = restrict_nonvacuous(m, EvaluationContext(), p)
        assert sub == m and mapping == {"w1": "w1", "w2": "w2"}

    def test_drops_falsifying_world(self):
        m = KripkeModel.build(["w1", "w2"], [("w1", "w2"), ("w2", "w1")], {"alpha": ["w1"]})
        alpha = Atom("alpha")
        ctx = EvaluationContext(witness_mode=WitnessMode.UNRESTRICTED)
        # w1 sees only w2, where alpha fails
        assert nonvacuity_violations(m, ctx, alpha) == ["w1"]
        sub, _ = restrict_nonvacuous(m, ctx, alpha)
        assert sub.worlds == ("w1",)
        # w1 keeps no successor, so the unrestricted witness false still applies
        assert nonvacuity_violations(sub, ctx, alpha) == ["w1"]
        assert nonvacuity_violations(sub, EvaluationContext(background=(alpha,)), alpha) == []

    def test_absent_when_nothing_survives(self):
        m = KripkeModel.build(["w1"], [("w1", "w1")], {"p": []})
        assert restrict_nonvacuous(m, EvaluationContext(), p) is None


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_agrees_with_oracle_on_random_models(seed):
    rng = random.Random(seed)
    m = random_kripke(rng, AuditConfig(max_worlds=4, max_atoms=3))
    bg = tuple(random_formula(rng, m.vocabulary, 2) for _ in range(rng.randint(0, 3)))
    mode = rng.choice(list(WitnessMode))
    ctx = EvaluationContext(background=bg, witness_mode=mode, max_witness_size=2)
    ora = Oracle(m, background=bg, mode=mode.value, size=2)
    for _ in range(5):
        f = random_formula(rng, m.vocabulary, 4, modal=True)
        assert truth_set(m, ctx, f) == ora.ext(f), f
