"""Finite Kripke models and the satisfaction relation for K, O and A.

Truth sets are computed bottom-up as integer bitmasks over the model's
worlds (bit ``i`` is ``model.worlds[i]``). The same evaluator serves
plausibility models: :mod:`aol.preferential` passes a strict order, which
enables the ``>`` connective and switches the abduction clause to its
preferential form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .formula import (
    FALSE,
    TRUE,
    Abd,
    And,
    Atom,
    Bottom,
    Formula,
    Implies,
    Knows,
    Not,
    Only,
    Or,
    PrefCond,
    Top,
    atoms_of,
    conjoin,
    disjoin,
    is_objective,
)

__all__ = [
    "SemanticsError",
    "UnknownWorldError",
    "UnknownAtomError",
    "MissingOrderError",
    "ModelError",
    "WitnessMode",
    "KripkeModel",
    "EvaluationContext",
    "RelationProperties",
    "satisfies",
    "truth_set",
    "canonical_alpha",
    "abduction_witness",
    "local_consequence",
    "consequence_counterexample",
    "global_validity",
    "validity_counterexample",
    "restrict_nonvacuous",
    "nonvacuity_violations",
    "relation_properties",
    "characteristic_formula",
]


class SemanticsError(ValueError):
    pass


class UnknownWorldError(SemanticsError):
    pass


class UnknownAtomError(SemanticsError):
    pass


class MissingOrderError(SemanticsError):
    pass


class ModelError(ValueError):
    """A model violates a load-time invariant."""


class WitnessMode(str, enum.Enum):
    CONJUNCTION = "conjunction"
    SUBSETS = "subsets"
    UNRESTRICTED = "unrestricted"


@dataclass(frozen=True, eq=True)
class KripkeModel:
    """A finite model ``<W, R, v>`` over a declared atom vocabulary.

    ``valuation`` maps each atom to the worlds where it is true; atoms of the
    vocabulary without an entry are false everywhere.
    """

    worlds: tuple[str, ...]
    relation: frozenset[tuple[str, str]]
    valuation: Mapping[str, frozenset[str]]
    vocabulary: tuple[str, ...]
    actual: str | None = None

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not self.worlds:
            raise ModelError("a model needs at least one world")
        if len(set(self.worlds)) != len(self.worlds):
            raise ModelError("duplicate world names")
        known = set(self.worlds)
        for a, b in sorted(self.relation):
            if a not in known or b not in known:
                raise ModelError(f"relation edge {a} -> {b} mentions an undeclared world")
        vocab = set(self.vocabulary)
        for atom, ws in self.valuation.items():
            if atom not in vocab:
                raise ModelError(f"valuation atom {atom!r} is not in the vocabulary")
            stray = set(ws) - known
            if stray:
                raise ModelError(f"valuation of {atom!r} mentions undeclared world {sorted(stray)[0]}")
        if self.actual is not None and self.actual not in known:
            raise ModelError(f"actual world {self.actual!r} is not declared")

    @classmethod
    def build(
        cls,
        worlds: Iterable[str],
        relation: Iterable[tuple[str, str]],
        valuation: Mapping[str, Iterable[str]],
        vocabulary: Iterable[str] | None = None,
        actual: str | None = None,
    ) -> "KripkeModel":
        valuation = {a: frozenset(ws) for a, ws in valuation.items()}
        vocab = list(vocabulary) if vocabulary is not None else []
        for a in sorted(valuation):
            if a not in vocab:
                vocab.append(a)
        return cls(tuple(worlds), frozenset(relation), valuation, tuple(vocab), actual)

    # -- bitmask views --------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @cached_property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1

    @cached_property
    def succ(self) -> tuple[int, ...]:
        masks = [0] * len(self.worlds)
        for a, b in self.relation:
            masks[self.index[a]] |= 1 << self.index[b]
        return tuple(masks)

    @cached_property
    def atom_masks(self) -> dict[str, int]:
        masks = {a: 0 for a in self.vocabulary}
        for a, ws in self.valuation.items():
            for w in ws:
                masks[a] |= 1 << self.index[w]
        return masks

    @cached_property
    def signatures(self) -> tuple[frozenset[str], ...]:
        """Atoms true at each world, in world order."""
        return tuple(
            frozenset(a for a in self.vocabulary if self.atom_masks[a] >> i & 1)
            for i in range(len(self.worlds))
        )

    def mask_of(self, worlds: Iterable[str]) -> int:
        m = 0
        for w in worlds:
            if w not in self.index:
                raise UnknownWorldError(f"unknown world {w!r}")
            m |= 1 << self.index[w]
        return m

    def worlds_of(self, mask: int) -> frozenset[str]:
        return frozenset(w for i, w in enumerate(self.worlds) if mask >> i & 1)

    def successors(self, w: str) -> frozenset[str]:
        return self.worlds_of(self.succ[self._idx(w)])

    def true_atoms(self, w: str) -> frozenset[str]:
        return self.signatures[self._idx(w)]

    def _idx(self, w: str) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise UnknownWorldError(f"unknown world {w!r}") from None

    def restrict(self, keep: Iterable[str]) -> "KripkeModel":
        """Submodel on ``keep``: relation and valuation intersected with it."""
        keep = set(keep)
        worlds = tuple(w for w in self.worlds if w in keep)
        rel = frozenset((a, b) for a, b in self.relation if a in keep and b in keep)
        val = {a: frozenset(ws & keep) for a, ws in self.valuation.items()}
        actual = self.actual if self.actual in keep else None
        return KripkeModel(worlds, rel, val, self.vocabulary, actual)

    def with_vocabulary(self, extra: Iterable[str]) -> "KripkeModel":
        vocab = list(self.vocabulary) + [a for a in extra if a not in self.vocabulary]
        return KripkeModel(self.worlds, self.relation, self.valuation, tuple(vocab), self.actual)


@dataclass(frozen=True)
class EvaluationContext:
    """The agent's only-known background and the witness space for ``A``.

    ``background`` holds the operands ``chi`` of the declared ``O chi``.
    ``existential_import`` makes ``g > h`` false when no accessible world
    satisfies ``g`` (it has no effect on plain Kripke models).
    """

    background: tuple[Formula, ...] = ()
    witness_mode: WitnessMode = WitnessMode.SUBSETS
    max_witness_size: int = 3
    existential_import: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "background", tuple(self.background))
        object.__setattr__(self, "witness_mode", WitnessMode(self.witness_mode))
        if self.max_witness_size < 1:
            raise ValueError("max_witness_size must be positive")

    def replace(self, **changes) -> "EvaluationContext":
        from dataclasses import replace

        return replace(self, **changes)

    def witness_candidates(self) -> list[Formula]:
        """Candidate witnesses for the theory-based modes, in search order."""
        bg = self.background
        if not bg or self.witness_mode is WitnessMode.UNRESTRICTED:
            return []
        if self.witness_mode is WitnessMode.CONJUNCTION:
            return [conjoin(bg)]
        out = []
        for k in range(1, min(self.max_witness_size, len(bg)) + 1):
            for combo in combinations(bg, k):
                out.append(conjoin(combo))
        return out


# ---------------------------------------------------------------- evaluator


class Evaluator:
    """Memoising truth-set evaluator for one model, context and optional order.

    ``below[i]`` is the mask of worlds strictly preferred to world ``i``.
    """

    def __init__(self, model: KripkeModel, ctx: EvaluationContext,
                 below: Sequence[int] | None = None):
        self.model = model
        self.ctx = ctx
        self.below = below
        self._memo: dict[Formula, int] = {}
        self._witness_cache: list[tuple[Formula, int]] | None = None

    def minimal(self, mask: int) -> int:
        """Members of ``mask`` with no strictly preferred member of ``mask``."""
        if self.below is None:
            return mask
        out = 0
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if not self.below[i] & mask:
                out |= low
            m ^= low
        return out

    def check_vocabulary(self, f: Formula) -> None:
        missing = atoms_of(f) - set(self.model.vocabulary)
        if missing:
            raise UnknownAtomError(f"atom {sorted(missing)[0]!r} is not in the model vocabulary")

    def mask(self, f: Formula) -> int:
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        m = self._compute(f)
        self._memo[f] = m
        return m

    def _compute(self, f: Formula) -> int:
        model = self.model
        full = model.full
        if isinstance(f, Atom):
            try:
                return model.atom_masks[f.name]
            except KeyError:
                raise UnknownAtomError(f"atom {f.name!r} is not in the model vocabulary") from None
        if isinstance(f, Top):
            return full
        if isinstance(f, Bottom):
            return 0
        if isinstance(f, Not):
            return full & ~self.mask(f.arg)
        if isinstance(f, And):
            return self.mask(f.left) & self.mask(f.right)
        if isinstance(f, Or):
            return self.mask(f.left) | self.mask(f.right)
        if isinstance(f, Implies):
            return (full & ~self.mask(f.left)) | self.mask(f.right)
        succ = model.succ
        if isinstance(f, Knows):
            inner = self.mask(f.arg)
            return _collect(i for i, s in enumerate(succ) if not s & ~inner)
        if isinstance(f, Only):
            inner = self.mask(f.arg)
            return _collect(i for i, s in enumerate(succ) if s == inner)
        if isinstance(f, PrefCond):
            if self.below is None:
                raise MissingOrderError("'>' needs a plausibility order")
            g, h = self.mask(f.left), self.mask(f.right)
            return _collect(i for i in range(len(succ)) if self._cond_at(i, g, h))
        if isinstance(f, Abd):
            g = self.mask(f.arg)
            return _collect(i for i in range(len(succ)) if self.witness_at(i, g) is not None)
        raise TypeError(f"not a formula: {f!r}")

    def _cond_at(self, i: int, g: int, h: int) -> bool:
        states = self.model.succ[i] & g
        if not states:
            return not self.ctx.existential_import
        return not self.minimal(states) & ~h

    def _theory_witnesses(self) -> list[tuple[Formula, int]]:
        if self._witness_cache is None:
            self._witness_cache = [(a, self.mask(a)) for a in self.ctx.witness_candidates()]
        return self._witness_cache

    def witness_at(self, i: int, g: int) -> Formula | None:
        """A witness for ``A g`` at world ``i`` (``g`` given as a mask), or None."""
        reach = self.model.succ[i]
        if self.ctx.witness_mode is WitnessMode.UNRESTRICTED:
            alpha = characteristic_formula(self.model, reach)
            pool = [] if alpha is None else [(alpha, reach)]
        else:
            pool = self._theory_witnesses()
        for alpha, am in pool:
            if am != reach:
                continue
            if self.below is None:
                if not reach & g & ~am:
                    return alpha
            elif self._cond_at(i, g, am):
                return alpha
        return None


def _collect(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def characteristic_formula(model: KripkeModel, mask: int) -> Formula | None:
    """A boolean formula true exactly on ``mask``, or None if none exists.

    A world set is definable iff it never separates two worlds that agree on
    every vocabulary atom.
    """
    sigs = model.signatures
    inside = {sigs[i] for i in range(len(sigs)) if mask >> i & 1}
    outside = {sigs[i] for i in range(len(sigs)) if not mask >> i & 1}
    if inside & outside:
        return None
    if not inside:
        return FALSE
    if not outside:
        return TRUE
    vocab = model.vocabulary
    terms = []
    for sig in sorted(inside, key=lambda s: tuple(a in s for a in vocab), reverse=True):
        terms.append(conjoin(Atom(a) if a in sig else Not(Atom(a)) for a in vocab))
    return disjoin(terms)


def _evaluator(model, ctx: EvaluationContext) -> Evaluator:
    # plausibility models carry their own evaluator factory
    make = getattr(model, "evaluator", None)
    if make is not None:
        return make(ctx)
    return Evaluator(model, ctx)


def _base(model) -> KripkeModel:
    return getattr(model, "base", model)


# ----------------------------------------------------------------- queries


def truth_set(model: KripkeModel, ctx: EvaluationContext, f: Formula) -> frozenset[str]:
    ev = _evaluator(model, ctx)
    ev.check_vocabulary(f)
    return _base(model).worlds_of(ev.mask(f))


def satisfies(model: KripkeModel, ctx: EvaluationContext, w: str, f: Formula) -> bool:
    """Truth of ``f`` at world ``w``.

    Plain Kripke models reject ``>``; pass a plausibility model (or use
    :func:`aol.preferential.satisfies_pref`) for the preferential clauses.
    """
    base = _base(model)
    i = base._idx(w)
    ev = _evaluator(model, ctx)
    ev.check_vocabulary(f)
    return bool(ev.mask(f) >> i & 1)


def canonical_alpha(model: KripkeModel, ctx: EvaluationContext, w: str) -> Formula | None:
    """Conjunction of the whole background, or None when it is empty."""
    _base(model)._idx(w)
    if not ctx.background:
        return None
    return conjoin(ctx.background)


def abduction_witness(model: KripkeModel, ctx: EvaluationContext, w: str,
                      g: Formula) -> Formula | None:
    """Some ``alpha`` with ``O alpha`` and ``K(g -> alpha)`` (or ``g > alpha``) at ``w``."""
    if not is_objective(g):
        raise SemanticsError("abduction_witness expects a boolean formula")
    base = _base(model)
    i = base._idx(w)
    ev = _evaluator(model, ctx)
    ev.check_vocabulary(g)
    for a in ctx.background:
        ev.check_vocabulary(a)
    return ev.witness_at(i, ev.mask(g))


def consequence_counterexample(models, gamma: Iterable[Formula], f: Formula):
    """First ``(model_index, world)`` where all of ``gamma`` hold and ``f`` fails."""
    gamma = list(gamma)
    for k, (model, ctx) in enumerate(models):
        ev = _evaluator(model, ctx)
        for g in (*gamma, f):
            ev.check_vocabulary(g)
        prem = _base(model).full
        for g in gamma:
            prem &= ev.mask(g)
        bad = prem & ~ev.mask(f)
        if bad:
            i = (bad & -bad).bit_length() - 1
            return k, _base(model).worlds[i]
    return None


def local_consequence(models, gamma: Iterable[Formula], f: Formula) -> bool:
    """``gamma |= f`` over an explicit suite of ``(model, context)`` pairs."""
    return consequence_counterexample(models, gamma, f) is None


def validity_counterexample(models, f: Formula):
    return consequence_counterexample(models, (), f)


def global_validity(models, f: Formula) -> bool:
    return validity_counterexample(models, f) is None


# ---------------------------------------------------------- non-vacuity


def restrict_nonvacuous(model: KripkeModel, ctx: EvaluationContext, g: Formula):
    """Submodel on worlds satisfying the background and ``g``.

    Returns ``(submodel, mapping)`` with ``mapping`` sending each retained
    world to itself, or None when no world qualifies.
    """
    ev = Evaluator(model, ctx)
    keep = ev.mask(g)
    for chi in ctx.background:
        ev.check_vocabulary(chi)
        keep &= ev.mask(chi)
    ev.check_vocabulary(g)
    if not keep:
        return None
    kept = model.worlds_of(keep)
    sub = model.restrict(kept)
    return sub, {w: w for w in sub.worlds}


def nonvacuity_violations(model: KripkeModel, ctx: EvaluationContext,
                          g: Formula) -> list[str]:
    """Worlds where ``A g`` and ``K ~g`` both hold."""
    ev = _evaluator(model, ctx)
    bad = ev.mask(Abd(g)) & ev.mask(Knows(Not(g)))
    return sorted(_base(model).worlds_of(bad), key=_base(model).index.__getitem__)


# ------------------------------------------------------------- frame checks


@dataclass(frozen=True)
class RelationProperties:
    reflexive: bool
    transitive: bool
    symmetric: bool
    euclidean: bool

    @property
    def equivalence(self) -> bool:
        return self.reflexive and self.transitive and self.symmetric


def relation_properties(model: KripkeModel) -> RelationProperties:
    model = _base(model)
    R = model.relation
    W = model.worlds
    return RelationProperties(
        reflexive=all((w, w) in R for w in W),
        transitive=all((a, c) in R for a, b in R for b2, c in R if b == b2),
        symmetric=all((b, a) in R for a, b in R),
        euclidean=all((b, c) in R for a, b in R for a2, c in R if a == a2),
    )
