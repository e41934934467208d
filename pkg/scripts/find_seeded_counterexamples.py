"""Search the clinic model for cautious monotony / transitivity failures of the
selection-based consequence relations and freeze them as matrix seeds.

Usage: python3 scripts/find_seeded_counterexamples.py [--out PATH]
"""

import argparse
import json
from itertools import combinations
from pathlib import Path

from aol.abduction import star_consequence
from aol.formula import And, Atom, Not, Or, to_text
from aol.metatheory.audit import dump_models, replay
from aol.modelfile import load_model, load_problem

ROOT = Path(__file__).resolve().parent.parent


def search(model_path, problem_path):
    doc = load_model(model_path)
    problem = load_problem(problem_path).problem(doc)
    suite = [(doc.model, doc.context())]
    atoms = [Atom(a) for a in doc.base.vocabulary]
    lits = atoms + [Not(a) for a in atoms]
    forms = (lits + [Or(a, b) for a, b in combinations(atoms, 2)]
             + [And(a, b) for a, b in combinations(atoms, 2)])
    cache = {}

    def star(kind, gamma, f):
        key = (kind, frozenset(gamma), f)
        if key not in cache:
            cache[key] = star_consequence(kind, list(gamma), f, problem, suite)
        return cache[key]

    found = {}
    for kind in "scp":
        for n in range(3):
            for extra in combinations(lits, n):
                gamma = list(problem.background) + list(extra)
                ent = [f for f in forms if star(kind, gamma, f)]
                for phi in ent:
                    if (kind, "cautious_monotony") not in found:
                        for psi in ent:
                            if not star(kind, gamma + [phi], psi):
                                found[(kind, "cautious_monotony")] = (gamma, phi, psi)
                                break
                    if (kind, "cautious_transitivity") not in found:
                        for psi in forms:
                            if star(kind, gamma + [phi], psi) and not star(kind, gamma, psi):
                                found[(kind, "cautious_transitivity")] = (gamma, phi, psi)
                                break
    seeds = []
    for (kind, row), (gamma, phi, psi) in sorted(found.items()):
        instance = {
            "background": [to_text(t) for t in problem.background],
            "observation": to_text(problem.observation),
            "hypotheses": list(problem.hypotheses),
            "depth": problem.depth,
            "priorities": dict(problem.priorities or {}),
            "gamma": [to_text(g) for g in gamma],
            "phi": to_text(phi),
            "psi": to_text(psi),
            "kind": kind,
        }
        cex = {
            "property": f"{kind}_{row}",
            "trial": None,
            "model": dump_models([doc.model]),
            "instance": instance,
            "detail": {"source": "clinic model search"},
        }
        assert replay(cex), cex
        seeds.append(cex)
    return seeds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(ROOT / "src/aol/data/seeded.json"))
    args = ap.parse_args()
    seeds = search(ROOT / "models/clinic.model", ROOT / "models/clinic.problem")
    Path(args.out).write_text(json.dumps(seeds, indent=2, sort_keys=True) + "\n")
    for s in seeds:
        i = s["instance"]
        print(f"{s['property']}: gamma={i['gamma'][3:]} phi={i['phi']} psi={i['psi']}")


if __name__ == "__main__":
    main()
