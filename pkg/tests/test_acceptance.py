"""Acceptance checks: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``
to see the lines.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from aol.abduction import enumerate_explanations, minimal_state_selection, select  # noqa: E402
from aol.formula import Atom, parse, to_text  # noqa: E402
from aol.metatheory import REGISTRY, AuditConfig, audit, property_matrix, replay  # noqa: E402
from aol.metatheory.generate import random_formula  # noqa: E402
from aol.metatheory.matrix import PUBLISHED, ROWS, load_seeds  # noqa: E402
from aol.modelfile import load_model, load_problem  # noqa: E402
from aol.preferential import satisfies_pref  # noqa: E402

from conftest import ACCEPTANCE, MODELS, cli  # noqa: E402
import exhaustive  # noqa: E402

def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE.append(line)
    print(line, file=sys.__stdout__, flush=True)
    assert ok, line


def run_audit(name, trials):
    return audit(name, AuditConfig(trials=trials, frame_class=REGISTRY[name].frame))


def test_diagnosis_example():
    start = time.perf_counter()
    r = cli("explain", "-m", MODELS / "flu.model", "-p", MODELS / "flu.problem")
    family = r.json["family"]
    check = cli("check", "-m", MODELS / "flu.model", "A flu")
    elapsed = time.perf_counter() - start
    ok = family == [["flu"]] and check.out == "true\n" and elapsed < 1.0
    report("diagnosis example", ok,
           f"family {family}, A flu at actual world {check.out.strip()}, {elapsed:.2f}s")


def test_blocking_and_collapse():
    one = cli("check", "-m", MODELS / "blocking_one.model", "A fever").out.strip()
    two = cli("check", "-m", MODELS / "blocking_two.model", "A fever").out.strip()
    wide = cli("check", "-m", MODELS / "blocking_two.model", "--witness-mode", "unrestricted",
               "--json", "A fever").json
    ok = one == "true" and two == "false" and wide["value"] and bool(wide["notes"])
    report("blocking by an added state", ok,
           f"one state {one}, two states {two}, unrestricted {str(wide['value']).lower()}"
           f" with collapse flag {bool(wide['notes'])}")


def test_minimal_states_table():
    doc = load_model(MODELS / "minimal_states.model")
    problem = load_problem(MODELS / "minimal_states.problem").problem(doc)
    ctx = doc.context("unrestricted", existential_import=True)
    columns = {
        "alpha > gamma | delta": (True, False), "psi > gamma | delta": (False, True),
        "gamma": (True, False), "delta": (False, True),
        "A alpha": (True, False), "A psi": (False, True),
    }
    agree = sum(
        tuple(satisfies_pref(doc.model, ctx, w, parse(t)) for w in ("w1", "w2")) == row
        for t, row in columns.items()
    )
    chosen = minimal_state_selection(problem, [(doc.model, ctx)])
    ok = agree == 6 and chosen == [frozenset({Atom("alpha")})]
    report("two-state plausibility table", ok,
           f"{agree}/6 columns match, selected {[sorted(map(str, d)) for d in chosen]}")


def test_selection_strategies_and_seeded_failures():
    doc = load_model(MODELS / "clinic.model")
    problem = load_problem(MODELS / "clinic.problem").problem(doc)
    family = enumerate_explanations(problem, [(doc.model, doc.context())])
    names = lambda sets: sorted(sorted(map(str, d)) for d in sets)  # noqa: E731
    d1 = ["allergies", "strep_throat"]
    d2 = ["common_cold", "strep_throat"]
    seeds = load_seeds()
    replayed = sum(replay(s) for s in seeds)
    ok = (names(family) == [d1, d2]
          and names(select(family, "subset")) == [d1, d2]
          and names(select(family, "cardinality")) == [d1, d2]
          and names(select(family, "priorization")) == [d1]
          and len(seeds) == 6 and replayed == 6)
    report("selection strategies on the clinic problem", ok,
           f"family {names(family)}, priorization {names(select(family, 'priorization'))}, "
           f"{replayed}/{len(seeds)} stored monotony/transitivity counterexamples replay")


def test_witness_construction():
    r = run_audit("witness_construction", 1000)
    report("canonical or sub-conjunction witness", r.verdict == "confirmed",
           f"{r.verdict}, {r.nonvacuous}/1000 positive instances, "
           f"{r.counterexample_count} failures, tally {dict(sorted(r.tally.items()))}")


def test_explanation_properties():
    r = run_audit("explanation_properties", 1000)
    detail = ""
    if r.counterexamples:
        detail = f"; first: {r.counterexamples[0]['detail']}"
    report("consistency and explainability of abduced formulas", r.verdict == "confirmed",
           f"{r.verdict}, {r.counterexample_count} failures in {r.nonvacuous} positive "
           f"instances{detail}")


def test_abduction_closure():
    reps = [run_audit(n, 1000) for n in ("only_knowing_abduction", "abduction_conjunction",
                                         "abduction_disjunction", "abduction_detachment")]
    ok = all(r.verdict == "confirmed" for r in reps)
    report("only-knowing and closure of abduction", ok,
           ", ".join(f"{r.property} {r.counterexample_count}/{r.nonvacuous}" for r in reps))


def test_nonvacuity_restriction():
    r = run_audit("nonvacuity_after_restriction", 500)
    empty = r.tally.get("empty_restriction", 0)
    ok = r.verdict == "confirmed" and r.trials == 500 and len(r.exhibits) == empty
    report("non-vacuity after restriction", ok,
           f"{r.verdict}, {r.counterexample_count} failures in {r.nonvacuous} models, "
           f"{empty} empty restrictions exhibited")


def test_preferential_laws():
    names = ["supraclassicality", "reflexivity", "cautious_monotony", "cautious_transitivity",
             "minimal_model_existence"]
    reps = [run_audit(n, 1000) for n in names]
    mono = run_audit("plain_monotony_for_pref", 1000)
    ok = (all(r.verdict == "confirmed" and r.nonvacuous >= 100 for r in reps)
          and mono.verdict == "refuted" and replay(mono.counterexamples[0]))
    report("preferential consequence laws", ok,
           ", ".join(f"{r.property} {r.nonvacuous} non-vacuous" for r in reps)
           + f"; plain monotony refuted with {mono.counterexample_count} replayable countermodels")


def test_property_matrix():
    start = time.perf_counter()
    mat = property_matrix()
    elapsed = time.perf_counter() - start
    pref_ok = all(mat.computed(row, "pref") is True for row in ROWS)
    crosses = [(row, c) for row in ROWS for c in "scp" if not PUBLISHED[row][c]]
    crosses_ok = all(mat.computed(row, c) is False and mat.cells[row, c].counterexample
                     for row, c in crosses)
    diff = mat.diff()
    ok = pref_ok and crosses_ok and elapsed < 60
    print(mat.to_table(), file=sys.__stdout__)
    report("consequence property matrix", ok,
           f"preferential column {'all hold' if pref_ok else 'incomplete'}, "
           f"{sum(bool(mat.cells[r, c].counterexample) for r, c in crosses)}/{len(crosses)} "
           f"published failures witnessed, {len(diff)} discrepancies reported, {elapsed:.1f}s")


def test_subset_minimality_equivalence():
    eq = run_audit("subset_preferential_equivalence", 500)
    co = run_audit("cardinality_subset_coincidence", 500)
    flagged = co.verdict == "confirmed" or bool(co.counterexamples)
    detail = (f"biconditional {eq.verdict} ({eq.counterexample_count} violations in "
              f"{eq.nonvacuous} problems); coincidence {co.verdict} "
              f"({co.counterexample_count} flagged in {co.nonvacuous})")
    if eq.counterexamples:
        detail += f"; first violation: {eq.counterexamples[0]['detail']}"
    report("subset minimality versus preferential explanation",
           eq.verdict == "confirmed" and flagged, detail)


def test_oracle_agreement():
    models, checks, bad = exhaustive.exhaustive()
    ranked, bad_pref = exhaustive.exhaustive_pref()
    ok = not bad and not bad_pref
    report("agreement with brute-force oracle", ok,
           f"{models} models x {checks // models} contexts, {ranked} ranked models, "
           f"{len(bad) + len(bad_pref)} disagreements")


def test_round_trip_and_determinism():
    rng = random.Random(13)
    fs = [random_formula(rng, ["p", "q", "r"], 6, modal=True, pref=True) for _ in range(10_000)]
    trips = sum(parse(to_text(f)) == f for f in fs)
    argv = ("audit", "cautious_monotony", "--trials", "200", "--seed", "5", "--json")
    same_audit = cli(*argv).out == cli(*argv).out
    margv = ("matrix", "--trials", "30", "--json")
    same_matrix = cli(*margv).out == cli(*margv).out
    ok = trips == 10_000 and same_audit and same_matrix
    report("round trip and determinism", ok,
           f"{trips}/10000 formulas round-trip, audit JSON identical {same_audit}, "
           f"matrix JSON identical {same_matrix}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                pass
