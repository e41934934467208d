"""Abductive problems: candidate explanations, validation, selection
strategies and the selection-based consequence relations.

An explanation is a set ``delta`` of hypothesis literals; its boolean core is
the conjunction of the members and it is reported as ``A(core)``. Entailment
inside a suite uses preferential consequence on plausibility models and
local consequence on plain Kripke models.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .formula import Abd, Atom, Formula, Not, Or, conjoin, to_text
from .kripke import EvaluationContext, _base, _evaluator, consequence_counterexample
from .preferential import GAMMA_MINIMAL, PlausibilityModel, preferential_counterexample

__all__ = [
    "AbductionError",
    "AlreadyExplained",
    "AbductionProblem",
    "Validation",
    "ExplanationFamily",
    "EquivalenceRow",
    "EquivalenceReport",
    "entails",
    "satisfiable",
    "validate_candidate",
    "validate_problem",
    "candidate_pool",
    "candidate_sets",
    "enumerate_explanations",
    "select",
    "STRATEGIES",
    "star_consequence",
    "subset_pref_equivalence",
    "minimal_state_selection",
    "report_formula",
]

STRATEGIES = ("subset", "cardinality", "priorization")
_STAR = {"s": "subset", "c": "cardinality", "p": "priorization"}


class AbductionError(ValueError):
    pass


class AlreadyExplained(AbductionError):
    """The background alone already entails the observation."""


@dataclass(frozen=True)
class AbductionProblem:
    """``<background, observation>`` plus the hypothesis vocabulary.

    ``priorities`` maps hypothesis atoms to levels (smaller wins); a negated
    hypothesis inherits the level of its atom.
    """

    background: tuple[Formula, ...]
    observation: Formula
    hypotheses: tuple[str, ...]
    depth: int = 2
    priorities: Mapping[str, int] | None = None
    literals: bool = False
    disjunctions: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "background", tuple(self.background))
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        if self.depth < 1:
            raise AbductionError("candidate depth must be positive")
        if self.priorities is not None:
            pr = dict(self.priorities)
            for h, level in pr.items():
                if int(level) < 1:
                    raise AbductionError(f"priority of {h} must be a positive integer")
            object.__setattr__(self, "priorities", pr)

    def replace(self, **changes) -> "AbductionProblem":
        from dataclasses import replace

        return replace(self, **changes)

    def level(self, f: Formula) -> int:
        if self.priorities is None:
            raise AbductionError("priorization needs priority levels")
        atom = f.arg if isinstance(f, Not) else f
        name = getattr(atom, "name", None)
        if name not in self.priorities:
            raise AbductionError(f"no priority level for {to_text(f)}")
        return int(self.priorities[name])


# ------------------------------------------------------------ entailment


def _as_suite(suite):
    if isinstance(suite, (PlausibilityModel,)) or hasattr(suite, "worlds"):
        return [(suite, EvaluationContext())]
    return list(suite)


def entails(suite, gamma: Iterable[Formula], f: Formula) -> bool:
    """Consequence per model: preferential if the model has an order."""
    gamma = list(gamma)
    for m, ctx in _as_suite(suite):
        if isinstance(m, PlausibilityModel):
            if preferential_counterexample([(m, ctx)], gamma, f, GAMMA_MINIMAL) is not None:
                return False
        elif consequence_counterexample([(m, ctx)], gamma, f) is not None:
            return False
    return True


def local_entails(suite, gamma: Iterable[Formula], f: Formula) -> bool:
    """Plain local consequence over every world, ignoring any order."""
    return consequence_counterexample(_as_suite(suite), list(gamma), f) is None


def satisfiable(suite, gamma: Iterable[Formula]) -> bool:
    gamma = list(gamma)
    for m, ctx in _as_suite(suite):
        ev = _evaluator(m, ctx)
        mask = _base(m).full
        for g in gamma:
            ev.check_vocabulary(g)
            mask &= ev.mask(g)
        if mask:
            return True
    return False


# ------------------------------------------------------------- validation


@dataclass(frozen=True)
class Validation:
    candidate: frozenset[Formula]
    consistency: bool
    explainability: tuple[bool, bool, bool]

    @property
    def ok(self) -> bool:
        return self.consistency and all(self.explainability)


def validate_candidate(p: AbductionProblem, suite, delta: Iterable[Formula]) -> Validation:
    """Consistency and the three explainability clauses for one candidate."""
    delta = frozenset(delta)
    theta = list(p.background)
    both = theta + sorted(delta, key=to_text)
    explains = entails(suite, both, p.observation)
    return Validation(
        candidate=delta,
        consistency=satisfiable(suite, both) and explains,
        explainability=(
            not entails(suite, theta, p.observation),
            not entails(suite, delta, p.observation),
            explains,
        ),
    )


def validate_problem(p: AbductionProblem, suite,
                     candidates: Iterable[Iterable[Formula]] | None = None) -> list[Validation]:
    if candidates is None:
        candidates = candidate_sets(p)
    return [validate_candidate(p, suite, d) for d in candidates]


# ---------------------------------------------------------- candidates


def candidate_pool(p: AbductionProblem) -> list[Formula]:
    """Hypothesis formulas an explanation may contain, in search order."""
    pool: list[Formula] = [Atom(h) for h in p.hypotheses]
    if p.literals:
        pool += [Not(Atom(h)) for h in p.hypotheses]
    if p.disjunctions:
        pool += [Or(Atom(a), Atom(b)) for a, b in combinations(p.hypotheses, 2)]
    return pool


def _clashes(delta: Sequence[Formula]) -> bool:
    s = set(delta)
    return any(isinstance(d, Not) and d.arg in s for d in delta)


def candidate_sets(p: AbductionProblem) -> list[frozenset[Formula]]:
    pool = candidate_pool(p)
    if not pool:
        raise AbductionError("empty candidate space: no hypotheses declared")
    out = []
    for k in range(1, min(p.depth, len(pool)) + 1):
        for combo in combinations(pool, k):
            if not _clashes(combo):
                out.append(frozenset(combo))
    return out


def _ordered(p: AbductionProblem, delta: Iterable[Formula]) -> list[Formula]:
    rank = {f: i for i, f in enumerate(candidate_pool(p))}
    return sorted(delta, key=lambda f: (rank.get(f, len(rank)), to_text(f)))


def report_formula(p: AbductionProblem, delta: Iterable[Formula]) -> Formula:
    """The abductive formula ``A(d1 & ... & dn)`` reported for ``delta``."""
    return Abd(conjoin(_ordered(p, delta)))


# --------------------------------------------------------------- family


@dataclass(frozen=True)
class ExplanationFamily:
    problem: AbductionProblem
    explanations: tuple[frozenset[Formula], ...]
    priorities: Mapping[Formula, int] | None = None

    def __post_init__(self) -> None:
        if self.priorities is not None:
            for delta in self.explanations:
                for d in delta:
                    if d not in self.priorities:
                        raise AbductionError(f"no priority level for {to_text(d)}")

    def __len__(self) -> int:
        return len(self.explanations)

    def __iter__(self):
        return iter(self.explanations)

    def as_lists(self) -> list[list[str]]:
        return [[to_text(f) for f in _ordered(self.problem, d)] for d in self.explanations]


def enumerate_explanations(p: AbductionProblem, suite, validate: bool = True) -> ExplanationFamily:
    """All candidate sets ``delta`` with ``background + delta`` entailing the observation.

    With ``validate`` the problem must be open (background alone does not
    entail the observation) and each member must also pass
    :func:`validate_candidate`. Without it the raw family is returned.
    """
    suite = _as_suite(suite)
    cands = candidate_sets(p)
    theta = list(p.background)
    if validate and entails(suite, theta, p.observation):
        raise AlreadyExplained(
            f"the background already entails {to_text(p.observation)}"
        )
    members = []
    for delta in cands:
        if not entails(suite, theta + _ordered(p, delta), p.observation):
            continue
        if validate and not validate_candidate(p, suite, delta).ok:
            continue
        members.append(delta)
    priorities = None
    if p.priorities is not None:
        pool = {d for delta in members for d in delta}
        priorities = {d: p.level(d) for d in pool}
    return ExplanationFamily(p, tuple(members), priorities)


def _levels(family: ExplanationFamily, delta) -> tuple[int, ...]:
    return tuple(sorted(family.priorities[d] for d in delta))


def select(family: ExplanationFamily, strategy: str,
           literal_priorization: bool = False) -> list[frozenset[Formula]]:
    """Filter a family by subset-minimality, cardinality or priority.

    Priorization compares sets by their best (smallest) level, then by the
    sorted list of levels; the sets with the least key survive. With
    ``literal_priorization`` a set is dropped whenever some other member has
    a level no larger than one of its levels, which rejects almost anything.
    """
    members = list(family.explanations)
    if strategy == "subset":
        return [d for d in members if not any(o < d for o in members)]
    if strategy == "cardinality":
        if not members:
            return []
        least = min(len(d) for d in members)
        return [d for d in members if len(d) == least]
    if strategy == "priorization":
        if family.priorities is None:
            raise AbductionError("priorization needs priority levels")
        if not members:
            return []
        if literal_priorization:
            return [
                d for d in members
                if not any(
                    o != d and min(_levels(family, o)) <= max(_levels(family, d))
                    for o in members
                )
            ]
        keys = {d: (min(_levels(family, d)), _levels(family, d)) for d in members}
        best = min(keys.values())
        return [d for d in members if keys[d] == best]
    raise AbductionError(f"unknown strategy {strategy!r}")


# ---------------------------------------------- selection-based consequence


def star_consequence(kind: str, gamma: Iterable[Formula], f: Formula,
                     problem: AbductionProblem, suite) -> bool:
    """``gamma |=<^kind f`` for kind in s, c, p.

    ``gamma`` splits into hypothesis literals (the candidate part) and the
    rest, which serves as the background when the family for ``f`` is
    built. Holds iff some selected ``delta`` lies inside the candidate part
    and ``delta`` alone preferentially entails ``f``. When the background
    part already entails ``f`` there is no problem to solve and the relation
    falls back to plain preferential consequence.
    """
    if kind not in _STAR:
        raise AbductionError(f"unknown consequence kind {kind!r}")
    gamma = list(dict.fromkeys(gamma))
    missing = [t for t in problem.background if t not in gamma]
    if missing:
        raise AbductionError(f"premises must contain the background; missing {to_text(missing[0])}")
    pool = set(candidate_pool(problem))
    hyps = frozenset(g for g in gamma if g in pool)
    theta = tuple(g for g in gamma if g not in pool)
    if entails(suite, theta, f):
        # not an abductive problem: nothing to select, fall back to |=<
        return entails(suite, gamma, f)
    sub = problem.replace(background=theta, observation=f)
    family = enumerate_explanations(sub, suite, validate=False)
    chosen = select(family, _STAR[kind])
    return any(d <= hyps and entails(suite, _ordered(problem, d), f) for d in chosen)


# ------------------------------------------------------ minimality checks


@dataclass(frozen=True)
class EquivalenceRow:
    explanation: frozenset[Formula]
    subset_minimal: bool
    pref_entails: bool
    witness: frozenset[Formula] | None = None  # proper subset that already explains

    @property
    def agrees(self) -> bool:
        return self.subset_minimal == self.pref_entails


@dataclass(frozen=True)
class EquivalenceReport:
    problem: AbductionProblem
    rows: tuple[EquivalenceRow, ...]
    subset_selection: tuple[frozenset[Formula], ...]
    cardinality_selection: tuple[frozenset[Formula], ...]

    @property
    def violations(self) -> list[EquivalenceRow]:
        return [r for r in self.rows if not r.agrees]

    @property
    def selections_coincide(self) -> bool:
        return set(self.subset_selection) == set(self.cardinality_selection)


def _proper_subsets(delta: frozenset) -> Iterable[frozenset]:
    items = sorted(delta, key=to_text)
    for k in range(len(items)):
        for combo in combinations(items, k):
            yield frozenset(combo)


def subset_pref_equivalence(problem: AbductionProblem, suite,
                            family: ExplanationFamily | None = None) -> EquivalenceReport:
    """Compare subset-minimality with preferential explanation, per family member.

    A member is subset-minimal when no proper subset (the empty set
    included) already entails the observation together with the background
    under plain local consequence.
    """
    suite = _as_suite(suite)
    for m, _ in suite:
        if isinstance(m, PlausibilityModel) and m.permissive:
            from .preferential import order_properties

            if not order_properties(m).connected:
                raise AbductionError("the equivalence check needs a connected order")
    if family is None:
        family = enumerate_explanations(problem, suite)
    theta = list(problem.background)
    rows = []
    for delta in family.explanations:
        witness = next(
            (d for d in _proper_subsets(delta)
             if local_entails(suite, theta + _ordered(problem, d), problem.observation)),
            None,
        )
        rows.append(EquivalenceRow(
            explanation=delta,
            subset_minimal=witness is None,
            pref_entails=entails(suite, theta + _ordered(problem, delta), problem.observation),
            witness=witness,
        ))
    return EquivalenceReport(
        problem=problem,
        rows=tuple(rows),
        subset_selection=tuple(select(family, "subset")),
        cardinality_selection=tuple(select(family, "cardinality")),
    )


def minimal_state_selection(problem: AbductionProblem, suite) -> list[frozenset[Formula]]:
    """Raw explanations whose abductive formula holds at the minimal background states.

    This is the choice made when several abductive formulas explain the
    observation but only some of them are true where the background is
    most plausible.
    """
    suite = _as_suite(suite)
    family = enumerate_explanations(problem, suite, validate=False)
    return [
        d for d in family.explanations
        if entails(suite, problem.background, report_formula(problem, d))
    ]
