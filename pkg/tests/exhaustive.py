"""Exhaustive agreement check between the evaluator and the oracle.

Models: every Kripke model with at most three worlds over {p} or {p, q},
one representative per isomorphism class under world renaming.

Formulas: both evaluators are compositional in truth sets, so formulas
that agree on a model are interchangeable as subformulas there. Level
``d + 1`` applies every connective to one representative per truth set
found at levels ``<= d``; agreement on these covers every formula of
depth ``<= d + 1``.
"""

from itertools import permutations, product

from aol.formula import (
    FALSE, TRUE, Abd, And, Atom, Implies, Knows, Not, Only, Or, PrefCond,
)
from aol.kripke import EvaluationContext, Evaluator, KripkeModel
from aol.preferential import PlausibilityModel

from oracle import Oracle

VOCABULARIES = (("p",), ("p", "q"))
UNARY = (Not, Knows, Only, Abd)
BINARY = (And, Or, Implies)


def contexts(vocab):
    p = Atom("p")
    q = Atom(vocab[-1])
    bg = (p, Implies(p, q)) if len(vocab) > 1 else (p, Or(p, Not(p)))
    return [
        dict(background=()),
        dict(background=bg, mode="subsets", size=3),
        dict(background=bg, mode="conjunction"),
        dict(background=(), mode="unrestricted"),
    ]


def _canonical(n, rel, val):
    best = None
    for perm in permutations(range(n)):
        key = (tuple(sorted((perm[a], perm[b]) for a, b in rel)),
               tuple(tuple(sorted(perm[w] for w in ws)) for ws in val))
        if best is None or key < best:
            best = key
    return best


def models(max_worlds=3, vocabularies=VOCABULARIES):
    for vocab in vocabularies:
        for n in range(1, max_worlds + 1):
            pairs = [(a, b) for a in range(n) for b in range(n)]
            seen = set()
            for rbits in product((0, 1), repeat=len(pairs)):
                rel = [e for e, b in zip(pairs, rbits) if b]
                for vbits in product((0, 1), repeat=n * len(vocab)):
                    val = [[w for w in range(n) if vbits[k * n + w]] for k in range(len(vocab))]
                    key = _canonical(n, rel, val)
                    if key in seen:
                        continue
                    seen.add(key)
                    names = [f"w{i + 1}" for i in range(n)]
                    yield vocab, KripkeModel.build(
                        names, [(names[a], names[b]) for a, b in rel],
                        {a: [names[w] for w in ws] for a, ws in zip(vocab, val)},
                        vocab, names[0])


def _mode_ctx(setting):
    return EvaluationContext(
        background=setting.get("background", ()),
        witness_mode=setting.get("mode", "subsets"),
        max_witness_size=setting.get("size", 3),
        existential_import=setting.get("existential_import", False),
    )


def compare(model, vocab, setting, max_depth=3, evaluator=None, binary=BINARY):
    """Disagreements ``(formula, impl_set, oracle_set)`` on one model and context."""
    ora = Oracle(model, **setting)
    ev = evaluator or Evaluator(model, _mode_ctx(setting))
    base = getattr(model, "base", model)
    bad = []

    def check(f):
        got = base.worlds_of(ev.mask(f))
        want = ora.ext(f)
        if got != want:
            bad.append((f, got, want))
        return want

    reps = {}
    for f in [TRUE, FALSE, *(Atom(a) for a in vocab)]:
        reps.setdefault(check(f), f)
    fresh = list(reps.values())
    for _ in range(max_depth):
        # combinations of older representatives were checked at an earlier level
        old = [f for f in reps.values() if f not in fresh]
        new = {}
        for op in UNARY:
            for g in fresh:
                new.setdefault(check(op(g)), op(g))
        for op in binary:
            for g in fresh:
                for h in old + fresh:
                    for f in (op(g, h), op(h, g)):
                        new.setdefault(check(f), f)
        fresh = [f for s, f in new.items() if s not in reps]
        for s, f in new.items():
            reps.setdefault(s, f)
        if not fresh:
            break
    return bad


def exhaustive(max_worlds=3, max_depth=3):
    """Return ``(models_checked, checks, disagreements)``."""
    count, checks, bad = 0, 0, []
    for vocab, m in models(max_worlds):
        count += 1
        for setting in contexts(vocab):
            found = compare(m, vocab, setting, max_depth)
            checks += 1
            bad.extend((m, setting, *d) for d in found)
    return count, checks, bad


def plausibility_models(max_worlds=3, vocab=("p",)):
    """Every ranking over every exhaustive model with one atom."""
    for _, m in models(max_worlds, (vocab,)):
        for ranking in permutations(m.worlds):
            yield PlausibilityModel.from_ranking(m, ranking)


def exhaustive_pref(max_worlds=3, max_depth=2):
    count, bad = 0, []
    for pm in plausibility_models(max_worlds):
        count += 1
        for ei in (False, True):
            setting = dict(background=(Atom("p"),), existential_import=ei)
            found = compare(pm, ("p",), setting, max_depth,
                            evaluator=pm.evaluator(_mode_ctx(setting)),
                            binary=BINARY + (PrefCond,))
            bad.extend((pm, setting, *d) for d in found)
    return count, bad
