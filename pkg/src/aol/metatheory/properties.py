"""Registry of audited properties.

Each property pairs a generator, which draws a (possibly steered) model and
a JSON-ready instance from a seeded RNG, with a checker that evaluates one
instance. Checkers are pure functions of ``(model, instance)`` so stored
counterexamples can be replayed from their serialization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from ..abduction import (
    AbductionProblem, AlreadyExplained, candidate_sets, enumerate_explanations,
    local_entails, select, star_consequence, subset_pref_equivalence, validate_candidate,
)
from ..formula import (
    Abd, Atom, Formula, Implies, Knows, Not, Only, Or, And, conjoin, parse, to_text,
)
from ..kripke import (
    EvaluationContext, _base, _evaluator, canonical_alpha, consequence_counterexample,
    nonvacuity_violations, restrict_nonvacuous,
)
from ..preferential import (
    minimal_model, minimal_states, preferential_counterexample,
)
from .generate import (
    AuditConfig, random_formula, random_kripke, random_plausibility, random_suite,
    with_successors, worlds_term,
)

HOLDS, FAILS, VACUOUS = "holds", "fails", "vacuous"


@dataclass
class Outcome:
    status: str
    detail: dict | None = None
    tally: tuple[str, ...] = ()
    exhibit: dict | None = None


@dataclass(frozen=True)
class Property:
    name: str
    claim: str
    frame: str
    expected: str  # what the literature asserts: "holds" or "fails"
    generate: Callable[[random.Random, AuditConfig], tuple[object, dict]]
    check: Callable[[object, dict], Outcome]
    relation: str | None = None  # matrix column, if any
    row: str | None = None  # matrix row, if any


REGISTRY: dict[str, Property] = {}


def register(name, claim, frame, expected="holds", relation=None, row=None):
    def wrap(pair):
        gen, chk = pair
        REGISTRY[name] = Property(name, claim, frame, expected, gen, chk, relation, row)
        return pair
    return wrap


# ------------------------------------------------------------------ helpers


def _f(text: str) -> Formula:
    return parse(text)


def _fs(texts) -> list[Formula]:
    return [parse(t) for t in texts]


def _t(f: Formula) -> str:
    return to_text(f)


def _ctx(inst: dict) -> EvaluationContext:
    return EvaluationContext(
        tuple(_fs(inst.get("background", []))),
        inst.get("witness_mode", "subsets"),
        inst.get("witness_size", 3),
        inst.get("existential_import", False),
    )


def _mask(model, ctx, gamma) -> int:
    ev = _evaluator(model, ctx)
    m = _base(model).full
    for g in gamma:
        m &= ev.mask(g)
    return m


def _objective(rng, atoms, depth=2) -> Formula:
    return random_formula(rng, atoms, depth)


def _steer_background(rng, model, background: list[Formula], p=0.8):
    """Make some world only-know a sub-conjunction of the background."""
    if not background or rng.random() >= p:
        return model, None
    base = _base(model)
    w = rng.choice(base.worlds)
    k = rng.randint(1, min(3, len(background)))
    chosen = rng.sample(background, k)
    ts = base.worlds_of(_evaluator(model, EvaluationContext()).mask(conjoin(chosen)))
    return with_successors(model, w, ts), w


def _local_implication(model, ctx, gamma, f) -> Outcome:
    prem = _mask(model, ctx, gamma)
    if not prem:
        return Outcome(VACUOUS)
    cex = consequence_counterexample([(model, ctx)], gamma, f)
    if cex is None:
        return Outcome(HOLDS)
    return Outcome(FAILS, {"world": cex[1]})


def _pref(model, ctx, gamma, f) -> bool:
    return preferential_counterexample([(model, ctx)], gamma, f) is None


def _local(model, ctx, gamma, f) -> bool:
    return consequence_counterexample([(model, ctx)], gamma, f) is None


def _min_world(model, ctx, gamma):
    ev = _evaluator(model, ctx)
    mins = ev.minimal(_mask(model, ctx, gamma))
    ws = _base(model).worlds_of(mins)
    return sorted(ws)[0] if ws else None


# ------------------------------------------------------- only-knowing core


def _gen_ok_abd(rng, cfg):
    m = random_kripke(rng, cfg)
    base = m
    atoms = base.vocabulary
    w = rng.choice(base.worlds)
    succ = base.successors(w)
    if succ and rng.random() < 0.8:
        phi = worlds_term(base, succ)
    else:
        phi = _objective(rng, atoms)
    psi = Or(Not(phi), _objective(rng, atoms))
    return m, {"phi": _t(phi), "psi": _t(psi)}


def _chk_ok_abd(m, inst):
    phi, psi = _f(inst["phi"]), _f(inst["psi"])
    ctx = EvaluationContext((phi, Implies(psi, phi)))
    return _local_implication(m, ctx, [Only(phi), Only(Implies(psi, phi))], Abd(psi))


register("only_knowing_abduction",
         "O phi, O(psi -> phi) |= A psi on reflexive frames", "reflexive")((_gen_ok_abd, _chk_ok_abd))


def _gen_abd_pair(rng, cfg):
    m = random_kripke(rng, cfg)
    atoms = m.vocabulary
    bg = [_objective(rng, atoms) for _ in range(rng.randint(1, 3))]
    m, _ = _steer_background(rng, m, bg)
    phi = random_formula(rng, atoms, cfg.formula_depth)
    psi = random_formula(rng, atoms, cfg.formula_depth)
    return m, {"background": [_t(b) for b in bg], "phi": _t(phi), "psi": _t(psi)}


def _abd_rule(kind):
    def chk(m, inst):
        phi, psi = _f(inst["phi"]), _f(inst["psi"])
        ctx = _ctx(inst)
        if kind == "conjunction":
            gamma, goal = [Abd(phi), Abd(psi)], Abd(And(phi, psi))
        elif kind == "disjunction":
            gamma, goal = [Abd(phi), Abd(psi)], Abd(Or(phi, psi))
        else:
            gamma, goal = [Abd(phi), Abd(Implies(phi, psi))], Abd(psi)
        return _local_implication(m, ctx, gamma, goal)
    return chk


register("abduction_conjunction", "A phi, A psi |= A(phi & psi)", "arbitrary")(
    (_gen_abd_pair, _abd_rule("conjunction")))
register("abduction_disjunction", "A phi, A psi |= A(phi | psi)", "arbitrary")(
    (_gen_abd_pair, _abd_rule("disjunction")))
register("abduction_detachment", "A phi, A(phi -> psi) |= A psi", "arbitrary")(
    (_gen_abd_pair, _abd_rule("detachment")))


def _gen_only_abd(rng, cfg):
    m = random_kripke(rng, cfg)
    atoms = m.vocabulary
    phi = _objective(rng, atoms)
    bg = [_objective(rng, atoms) for _ in range(rng.randint(0, 2))]
    bg.insert(rng.randint(0, len(bg)), phi)
    if rng.random() < 0.8:
        w = rng.choice(m.worlds)
        m = with_successors(m, w, m.worlds_of(_evaluator(m, EvaluationContext()).mask(phi)))
    return m, {"background": [_t(b) for b in bg], "phi": _t(phi)}


def _chk_only_abd(m, inst):
    phi = _f(inst["phi"])
    return _local_implication(m, _ctx(inst), [Only(phi)], Abd(phi))


def _chk_abd_only(m, inst):
    phi = _f(inst["phi"])
    return _local_implication(m, _ctx(inst), [Abd(phi)], Only(phi))


register("only_implies_abduction", "|= O phi -> A phi with phi in the witness space",
         "arbitrary")((_gen_only_abd, _chk_only_abd))
register("abduction_implies_only", "|= A phi -> O phi", "arbitrary", expected="fails")(
    (_gen_abd_pair, _chk_abd_only))


def _gen_nonvac(rng, cfg):
    """Background describes the cell of w, phi is false on that cell."""
    m = random_kripke(rng, cfg)
    atoms = m.vocabulary
    w = rng.choice(m.worlds)
    succ = m.successors(w)
    cell = worlds_term(m, succ) if succ else _objective(rng, atoms)
    bg = [cell] + [_objective(rng, atoms) for _ in range(rng.randint(0, 1))]
    phi = And(_objective(rng, atoms), Not(cell)) if rng.random() < 0.8 else _objective(rng, atoms)
    return m, {"background": [_t(b) for b in bg], "phi": _t(phi)}


def _chk_nonvac(m, inst):
    phi = _f(inst["phi"])
    return _local_implication(m, _ctx(inst), [Abd(phi)], Not(Knows(Not(phi))))


register("nonvacuity", "A phi -> ~K~phi on S5 frames", "s5", expected="fails")(
    (_gen_nonvac, _chk_nonvac))


# ------------------------------------------------------------- witnesses


def _gen_witness(rng, cfg):
    m = random_kripke(rng, cfg)
    atoms = m.vocabulary
    bg = [_objective(rng, atoms) for _ in range(rng.randint(1, 3))]
    m, _ = _steer_background(rng, m, bg)
    g = _objective(rng, atoms, cfg.formula_depth)
    return m, {"background": [_t(b) for b in bg], "g": _t(g)}


def _chk_witness(m, inst):
    g = _f(inst["g"])
    ctx = _ctx(inst)
    ev = _evaluator(m, ctx)
    worlds = m.worlds_of(ev.mask(Abd(g)))
    if not worlds:
        return Outcome(VACUOUS)
    tally = []

    def passes(alpha, w):
        both = ev.mask(Only(alpha)) & ev.mask(Knows(Implies(g, alpha)))
        return bool(both >> m.index[w] & 1)

    for w in sorted(worlds, key=m.index.__getitem__):
        alpha = canonical_alpha(m, ctx, w)
        if alpha is not None and passes(alpha, w):
            tally.append("canonical")
            continue
        found = next(
            (conjoin(c) for k in range(1, len(ctx.background) + 1)
             for c in combinations(ctx.background, k) if passes(conjoin(c), w)),
            None,
        )
        if found is None:
            return Outcome(FAILS, {"world": w})
        tally.append("sub_conjunction")
    return Outcome(HOLDS, tally=tuple(tally))


register("witness_construction",
         "A g with a nonempty background has a conjunctive witness", "arbitrary")(
    (_gen_witness, _chk_witness))


def _gen_explanation(rng, cfg):
    m = random_kripke(rng, cfg, min_atoms=2)
    atoms = list(m.vocabulary)
    if len(atoms) < 2:
        return m, {"skip": True}
    k = max(1, len(atoms) // 2)
    hyps, obs = atoms[:k], atoms[k:]
    ev = _evaluator(m, EvaluationContext())
    w = rng.choice(m.worlds)
    imps = [Implies(Atom(rng.choice(hyps)), _objective(rng, obs)) for _ in range(rng.randint(1, 3))]
    target = ev.mask(imps[0])
    theta = [c for c in imps if ev.mask(c) == target]
    m = with_successors(m, w, m.worlds_of(target))
    alpha = _objective(rng, obs)
    return m, {
        "world": w, "background": [_t(t) for t in theta], "observation": _t(alpha),
        "hypotheses": hyps,
    }


def _chk_explanation(m, inst):
    if inst.get("skip"):
        return Outcome(VACUOUS)
    ctx = _ctx(inst)
    theta = list(ctx.background)
    alpha = _f(inst["observation"])
    suite = [(m, ctx)]
    if _local(m, ctx, theta, alpha):
        return Outcome(VACUOUS)
    p = AbductionProblem(tuple(theta), alpha, tuple(inst["hypotheses"]), depth=2)
    ev = _evaluator(m, ctx)
    i = m.index[inst["world"]]
    positives = 0
    for delta in candidate_sets(p):
        g = conjoin(sorted(delta, key=to_text))
        if not ev.mask(Abd(g)) >> i & 1:
            continue
        if not _local(m, ctx, theta + [g], alpha):
            continue
        positives += 1
        v = validate_candidate(p, suite, delta)
        if not v.ok:
            return Outcome(FAILS, {
                "explanation": sorted(to_text(d) for d in delta),
                "consistency": v.consistency,
                "explainability": list(v.explainability),
            })
    return Outcome(HOLDS) if positives else Outcome(VACUOUS)


register("explanation_properties",
         "A g with an only-known implication background gives Consistency and Explainability",
         "arbitrary")((_gen_explanation, _chk_explanation))


# ----------------------------------------------------------- non-vacuity


def _gen_restrict(rng, cfg):
    m = random_kripke(rng, cfg)
    atoms = m.vocabulary
    bg = [_objective(rng, atoms) for _ in range(rng.randint(1, 2))]
    w = rng.choice(m.worlds)
    ev = _evaluator(m, EvaluationContext())
    chosen = rng.sample(bg, rng.randint(1, len(bg)))
    m = with_successors(m, w, m.worlds_of(ev.mask(conjoin(chosen))))
    phi = And(_objective(rng, atoms), Not(conjoin(chosen)))
    return m, {"background": [_t(b) for b in bg], "phi": _t(phi)}


def _chk_restrict(m, inst):
    phi = _f(inst["phi"])
    ctx = _ctx(inst)
    if not nonvacuity_violations(m, ctx, phi):
        return Outcome(VACUOUS)
    out = restrict_nonvacuous(m, ctx, phi)
    if out is None:
        return Outcome(HOLDS, tally=("empty_restriction",),
                       exhibit={"reason": "no world satisfies the background and phi"})
    sub, _ = out
    bad = nonvacuity_violations(sub, ctx, phi)
    if bad:
        return Outcome(FAILS, {"submodel_worlds": list(sub.worlds), "world": bad[0]})
    return Outcome(HOLDS, tally=("restricted",))


register("nonvacuity_after_restriction",
         "restricting to background-and-phi worlds removes every A phi & K~phi world",
         "arbitrary")((_gen_restrict, _chk_restrict))


def _gen_restrict_unrestricted(rng, cfg):
    m = random_kripke(rng, cfg)
    atoms = m.vocabulary
    bg = [_objective(rng, atoms) for _ in range(rng.randint(1, 2))]
    w = rng.choice(m.worlds)
    succ = m.successors(w)
    phi = _objective(rng, atoms)
    if succ and rng.random() < 0.8:
        phi = And(phi, Not(worlds_term(m, succ)))
    return m, {"background": [_t(b) for b in bg], "phi": _t(phi),
               "witness_mode": "unrestricted"}


register("nonvacuity_after_restriction_unrestricted",
         "as nonvacuity_after_restriction, with unrestricted witnesses", "arbitrary")(
    (_gen_restrict_unrestricted, _chk_restrict))


def _gen_submodel(objective):
    def gen(rng, cfg):
        m = random_kripke(rng, cfg)
        atoms = m.vocabulary
        bg = [_objective(rng, atoms) for _ in range(rng.randint(1, 2))]
        m, _ = _steer_background(rng, m, bg)
        g = _objective(rng, atoms)
        fs = [random_formula(rng, atoms, cfg.formula_depth, modal=not objective) for _ in range(3)]
        return m, {"background": [_t(b) for b in bg], "g": _t(g), "formulas": [_t(f) for f in fs]}
    return gen


def _chk_submodel(m, inst):
    ctx = _ctx(inst)
    out = restrict_nonvacuous(m, ctx, _f(inst["g"]))
    if out is None:
        return Outcome(VACUOUS)
    sub, _ = out
    ev, sev = _evaluator(m, ctx), _evaluator(sub, ctx)
    for f in _fs(inst["formulas"]):
        for u in sub.worlds:
            if ev.mask(f) >> m.index[u] & 1 and not sev.mask(f) >> sub.index[u] & 1:
                return Outcome(FAILS, {"world": u, "formula": to_text(f)})
    return Outcome(HOLDS)


register("submodel_preservation",
         "formulas true at a retained world stay true in the non-vacuity submodel",
         "arbitrary")((_gen_submodel(False), _chk_submodel))
register("submodel_preservation_objective",
         "boolean formulas true at a retained world stay true in the non-vacuity submodel",
         "arbitrary")((_gen_submodel(True), _chk_submodel))


# -------------------------------------------------- preferential consequence


def _gen_pref(kind, relation):
    def gen(rng, cfg):
        m = random_plausibility(rng, cfg)
        atoms = m.vocabulary
        bg = [_objective(rng, atoms) for _ in range(rng.randint(1, 2))]
        d = cfg.formula_depth
        gamma = [random_formula(rng, atoms, d, modal=True, pref=True)
                 for _ in range(rng.randint(1, 2))]
        ctx = EvaluationContext(tuple(bg))
        prem = _mask(m, ctx, gamma)
        ev = _evaluator(m, ctx)
        steer = rng.random() < 0.85

        def true_on(mask):
            # random formula widened to hold on every world of mask
            f = random_formula(rng, atoms, d, modal=True, pref=True)
            ws = m.base.worlds_of(mask)
            return Or(f, worlds_term(m.base, ws)) if (steer and ws) else f

        def target(gs):
            mk = _mask(m, ctx, gs)
            return ev.minimal(mk) if relation == "pref" else mk

        inst = {"background": [_t(b) for b in bg], "gamma": [_t(g) for g in gamma]}
        if kind == "supraclassicality":
            inst["phi"] = _t(true_on(prem))
        elif kind == "reflexivity":
            inst["phi"] = _t(rng.choice(gamma))
        elif kind == "cautious_monotony":
            inst["phi"] = _t(true_on(target(gamma)))
            inst["psi"] = _t(true_on(target(gamma)))
        elif kind == "cautious_transitivity":
            phi = true_on(target(gamma))
            inst["phi"] = _t(phi)
            inst["psi"] = _t(true_on(target(gamma + [phi])))
        elif kind == "plain_monotony":
            inst["psi"] = _t(true_on(target(gamma)))
            inst["phi"] = _t(random_formula(rng, atoms, d, modal=True, pref=True))
        return m, inst
    return gen


def _chk_pref(kind, relation):
    rel = _pref if relation == "pref" else _local

    def chk(m, inst):
        ctx = _ctx(inst)
        gamma = _fs(inst["gamma"])
        if not _mask(m, ctx, gamma):
            return Outcome(VACUOUS)
        phi = _f(inst["phi"])
        if kind == "supraclassicality":
            if not _local(m, ctx, gamma, phi):
                return Outcome(VACUOUS)
            ok = rel(m, ctx, gamma, phi)
        elif kind == "reflexivity":
            if phi not in gamma:
                return Outcome(VACUOUS)
            ok = rel(m, ctx, gamma, phi)
        elif kind == "cautious_monotony":
            psi = _f(inst["psi"])
            if not (rel(m, ctx, gamma, phi) and rel(m, ctx, gamma, psi)):
                return Outcome(VACUOUS)
            ok = rel(m, ctx, gamma + [phi], psi)
        elif kind == "cautious_transitivity":
            psi = _f(inst["psi"])
            if not (rel(m, ctx, gamma, phi) and rel(m, ctx, gamma + [phi], psi)):
                return Outcome(VACUOUS)
            ok = rel(m, ctx, gamma, psi)
        else:
            psi = _f(inst["psi"])
            if not rel(m, ctx, gamma, psi):
                return Outcome(VACUOUS)
            ok = rel(m, ctx, gamma + [phi], psi)
        return Outcome(HOLDS) if ok else Outcome(FAILS, {})
    return chk


ROWS = ("supraclassicality", "reflexivity", "cautious_monotony", "cautious_transitivity")
_CLAIMS = {
    "supraclassicality": "gamma |= phi implies gamma {rel} phi",
    "reflexivity": "phi in gamma implies gamma {rel} phi",
    "cautious_monotony": "gamma {rel} phi and gamma {rel} psi imply gamma, phi {rel} psi",
    "cautious_transitivity": "gamma {rel} phi and gamma, phi {rel} psi imply gamma {rel} psi",
}
# (relation, row) cells the published table marks as failing
PUBLISHED_FAILS = frozenset({
    ("local", "cautious_monotony"), ("local", "cautious_transitivity"),
    ("s", "cautious_monotony"), ("c", "cautious_monotony"),
    ("p", "cautious_monotony"), ("p", "cautious_transitivity"),
})


def _expected(relation: str, row: str) -> str:
    return "fails" if (relation, row) in PUBLISHED_FAILS else "holds"


for _row in ROWS:
    register(_row, _CLAIMS[_row].format(rel="|=<"), "order", relation="pref", row=_row)(
        (_gen_pref(_row, "pref"), _chk_pref(_row, "pref")))
    register(f"local_{_row}", _CLAIMS[_row].format(rel="|="), "order",
             expected=_expected("local", _row), relation="local", row=_row)(
        (_gen_pref(_row, "local"), _chk_pref(_row, "local")))

register("plain_monotony_for_pref", "gamma |=< psi implies gamma, phi |=< psi", "order",
         expected="fails")((_gen_pref("plain_monotony", "pref"), _chk_pref("plain_monotony", "pref")))


# ------------------------------------------------------------ minimal model


def _gen_minmodel(objective):
    def gen(rng, cfg):
        m = random_plausibility(rng, cfg)
        fs = [random_formula(rng, m.vocabulary, cfg.formula_depth, modal=not objective)
              for _ in range(3)]
        bg = [_objective(rng, m.vocabulary) for _ in range(rng.randint(0, 2))]
        return m, {"background": [_t(b) for b in bg], "formulas": [_t(f) for f in fs]}
    return gen


def _chk_minmodel_exists(m, inst):
    mins = minimal_states(m)
    if not mins:
        return Outcome(FAILS, {"reason": "no minimal state"})
    inner = [(a, b) for a, b in m.order if a in mins and b in mins]
    if inner:
        return Outcome(FAILS, {"order_pair": list(inner[0])})
    return Outcome(HOLDS)


def _chk_minmodel_preserve(m, inst):
    ctx = _ctx(inst)
    mm = minimal_model(m)
    ev, mev = _evaluator(m.base, ctx), _evaluator(mm, ctx)
    for f in _fs(inst["formulas"]):
        for u in mm.worlds:
            if ev.mask(f) >> m.base.index[u] & 1 and not mev.mask(f) >> mm.index[u] & 1:
                return Outcome(FAILS, {"world": u, "formula": to_text(f)})
    return Outcome(HOLDS)


register("minimal_model_existence",
         "every finite plausibility model has nonempty, order-free minimal states", "order")(
    (_gen_minmodel(True), _chk_minmodel_exists))
register("minimal_model_preservation",
         "formulas true at a minimal state stay true in the minimal model", "order")(
    (_gen_minmodel(False), _chk_minmodel_preserve))
register("minimal_model_preservation_objective",
         "boolean formulas true at a minimal state stay true in the minimal model", "order")(
    (_gen_minmodel(True), _chk_minmodel_preserve))


# --------------------------------------------------------- abductive problems


def random_problem(rng, cfg, with_priorities=False):
    """A problem over a small suite of plausibility models (returned as a list)."""
    m = random_suite(rng, cfg, min_atoms=2)
    atoms = list(m[0].vocabulary)
    if len(atoms) < 2:
        return m, None
    k = rng.randint(1, min(4, len(atoms) - 1))
    hyps, obs = atoms[:k], atoms[k:]
    theta = [Implies(Atom(rng.choice(hyps)), _objective(rng, obs, 2))
             for _ in range(rng.randint(1, 3))]
    r = rng.random()
    if r < 0.6:
        # steer toward solvable problems: observe consequents of the theory
        alpha = conjoin(t.right for t in rng.sample(theta, rng.randint(1, min(2, len(theta)))))
    elif r < 0.8:
        lits = rng.sample(obs, rng.randint(1, min(2, len(obs))))
        alpha = conjoin(Atom(a) if rng.random() < 0.8 else Not(Atom(a)) for a in lits)
    else:
        alpha = _objective(rng, obs, 2)
    inst = {
        "background": [_t(t) for t in theta], "observation": _t(alpha),
        "hypotheses": hyps, "depth": 2,
    }
    if with_priorities:
        inst["priorities"] = {h: rng.randint(1, 3) for h in hyps}
    return m, inst


def _suite(models, inst):
    ctx = _ctx(inst)
    return [(m, ctx) for m in models]


def _problem(inst) -> AbductionProblem:
    return AbductionProblem(
        tuple(_fs(inst["background"])), _f(inst["observation"]), tuple(inst["hypotheses"]),
        depth=inst.get("depth", 2), priorities=inst.get("priorities"),
    )


def _gen_problem(rng, cfg):
    m, inst = random_problem(rng, cfg)
    return m, inst or {"skip": True}


def _family(m, inst):
    if inst.get("skip"):
        return None, None
    p = _problem(inst)
    suite = _suite(m, inst)
    try:
        fam = enumerate_explanations(p, suite)
    except AlreadyExplained:
        return None, None
    return (fam, suite) if len(fam) else (None, None)


def _chk_equivalence(m, inst):
    fam, suite = _family(m, inst)
    if fam is None:
        return Outcome(VACUOUS)
    rep = subset_pref_equivalence(fam.problem, suite, fam)
    bad = rep.violations
    if bad:
        r = bad[0]
        return Outcome(FAILS, {
            "explanation": sorted(to_text(d) for d in r.explanation),
            "subset_minimal": r.subset_minimal,
            "pref_entails": r.pref_entails,
            "explaining_subset": sorted(to_text(d) for d in r.witness) if r.witness is not None else None,
        })
    return Outcome(HOLDS)


def _chk_card_subset(m, inst):
    fam, suite = _family(m, inst)
    if fam is None:
        return Outcome(VACUOUS)
    sub, card = select(fam, "subset"), select(fam, "cardinality")
    if set(sub) != set(card):
        return Outcome(FAILS, {
            "subset": sorted(sorted(to_text(d) for d in s) for s in sub),
            "cardinality": sorted(sorted(to_text(d) for d in s) for s in card),
        })
    return Outcome(HOLDS)


register("subset_preferential_equivalence",
         "a family member is subset-minimal iff it preferentially entails the observation",
         "order")((_gen_problem, _chk_equivalence))
register("cardinality_subset_coincidence",
         "cardinality and subset selection coincide on finite problems", "order")(
    (_gen_problem, _chk_card_subset))


# --------------------------------------------------- selection consequences


def _gen_star(kind, row):
    def gen(rng, cfg):
        m, inst = random_problem(rng, cfg, with_priorities=(kind == "p"))
        if inst is None:
            return m, {"skip": True}
        p = _problem(inst)
        suite = _suite(m, inst)
        hyps = [Atom(h) for h in p.hypotheses]
        gamma = list(p.background) + [h for h in hyps if rng.random() < 0.6]
        obs = [a for a in m[0].vocabulary if a not in p.hypotheses]
        pool = hyps + [Atom(a) for a in obs] + [_objective(rng, obs, 2) for _ in range(2)]

        def star(gs, f):
            return star_consequence(kind, gs, f, p, suite)

        def pick(cands):
            return rng.choice(cands) if cands and rng.random() < 0.85 else rng.choice(pool)

        inst["gamma"] = [_t(g) for g in gamma]
        if row == "supraclassicality":
            inst["phi"] = _t(pick([f for f in pool if local_entails(suite, gamma, f)]))
        elif row == "reflexivity":
            inst["phi"] = _t(rng.choice(gamma))
        elif row == "cautious_monotony":
            ent = [f for f in pool if star(gamma, f)]
            inst["phi"] = _t(pick(ent))
            inst["psi"] = _t(pick(ent))
        else:
            phi = pick([f for f in pool if star(gamma, f)])
            inst["phi"] = _t(phi)
            inst["psi"] = _t(pick([f for f in pool if star(gamma + [phi], f)]))
        inst["kind"] = kind
        return m, inst
    return gen


def _chk_star(row):
    def chk(m, inst):
        if inst.get("skip"):
            return Outcome(VACUOUS)
        p = _problem(inst)
        suite = _suite(m, inst)
        kind = inst["kind"]
        gamma = _fs(inst["gamma"])
        phi = _f(inst["phi"])

        def star(gs, f):
            return star_consequence(kind, gs, f, p, suite)

        if row == "supraclassicality":
            if not local_entails(suite, gamma, phi):
                return Outcome(VACUOUS)
            ok = star(gamma, phi)
        elif row == "reflexivity":
            if phi not in gamma:
                return Outcome(VACUOUS)
            ok = star(gamma, phi)
        elif row == "cautious_monotony":
            psi = _f(inst["psi"])
            if not (star(gamma, phi) and star(gamma, psi)):
                return Outcome(VACUOUS)
            ok = star(gamma + [phi], psi)
        else:
            psi = _f(inst["psi"])
            if not (star(gamma, phi) and star(gamma + [phi], psi)):
                return Outcome(VACUOUS)
            ok = star(gamma, psi)
        return Outcome(HOLDS) if ok else Outcome(FAILS, {})
    return chk


for _kind in ("s", "c", "p"):
    for _row in ROWS:
        register(f"{_kind}_{_row}", _CLAIMS[_row].format(rel=f"|=<{_kind}"), "order",
                 expected=_expected(_kind, _row), relation=_kind, row=_row)((_gen_star(_kind, _row), _chk_star(_row)))


def check_instance(name: str, model, instance: dict) -> Outcome:
    return REGISTRY[name].check(model, instance)
