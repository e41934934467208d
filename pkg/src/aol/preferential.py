"""Plausibility models: strict orders over states, minimal states, the
preferential conditional and preferential consequence.

``w < v`` in the order means ``w`` is more plausible than ``v``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .formula import Formula
from .kripke import (
    EvaluationContext,
    Evaluator,
    KripkeModel,
    ModelError,
    UnknownWorldError,
)

__all__ = [
    "OrderError",
    "PlausibilityModel",
    "OrderProperties",
    "order_properties",
    "minimal_states",
    "satisfies_pref",
    "preferential_consequence",
    "preferential_counterexample",
    "minimal_model",
    "GAMMA_MINIMAL",
    "BARE",
]

GAMMA_MINIMAL = "gamma-minimal"
BARE = "bare"


class OrderError(ModelError):
    pass


@dataclass(frozen=True)
class OrderProperties:
    irreflexive: bool
    transitive: bool
    connected: bool


def _order_props(worlds, order) -> OrderProperties:
    return OrderProperties(
        irreflexive=all(a != b for a, b in order),
        transitive=all((a, c) in order for a, b in order for b2, c in order if b == b2),
        connected=all(
            (a, b) in order or (b, a) in order
            for i, a in enumerate(worlds) for b in worlds[i + 1:]
        ),
    )


@dataclass(frozen=True, eq=True)
class PlausibilityModel:
    """A Kripke model with a strict, transitive, connected plausibility order.

    With ``permissive=True`` a non-connected order only triggers a warning.
    """

    base: KripkeModel
    order: frozenset[tuple[str, str]]
    permissive: bool = False

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", frozenset(self.order))
        known = set(self.base.worlds)
        for a, b in sorted(self.order):
            if a not in known or b not in known:
                raise OrderError(f"order edge {a} < {b} mentions an undeclared world")
        props = _order_props(self.base.worlds, self.order)
        if not props.irreflexive:
            a = next(a for a, b in sorted(self.order) if a == b)
            raise OrderError(f"order is not irreflexive: {a} < {a}")
        if not props.transitive:
            a, b, c = next(
                (a, b, c) for a, b in sorted(self.order) for b2, c in sorted(self.order)
                if b == b2 and (a, c) not in self.order
            )
            raise OrderError(f"order is not transitive: {a} < {b} and {b} < {c} but not {a} < {c}")
        if not props.connected:
            a, b = next(
                (a, b) for i, a in enumerate(self.base.worlds) for b in self.base.worlds[i + 1:]
                if (a, b) not in self.order and (b, a) not in self.order
            )
            msg = f"order is not connected: {a} and {b} are incomparable"
            if not self.permissive:
                raise OrderError(msg)
            warnings.warn(msg, stacklevel=2)

    @classmethod
    def from_ranking(cls, base: KripkeModel, ranking: Iterable[str]) -> "PlausibilityModel":
        """Total order listing worlds from most to least plausible."""
        ranking = list(ranking)
        if sorted(ranking) != sorted(base.worlds):
            raise OrderError("a ranking must list every world exactly once")
        order = {(a, b) for i, a in enumerate(ranking) for b in ranking[i + 1:]}
        return cls(base, frozenset(order))

    # convenience passthroughs
    @property
    def worlds(self) -> tuple[str, ...]:
        return self.base.worlds

    @property
    def relation(self):
        return self.base.relation

    @property
    def vocabulary(self):
        return self.base.vocabulary

    @property
    def actual(self):
        return self.base.actual

    @cached_property
    def below(self) -> tuple[int, ...]:
        masks = [0] * len(self.base.worlds)
        idx = self.base.index
        for a, b in self.order:
            masks[idx[b]] |= 1 << idx[a]
        return tuple(masks)

    def evaluator(self, ctx: EvaluationContext) -> Evaluator:
        return Evaluator(self.base, ctx, self.below)

    def ranking(self) -> list[str]:
        """Worlds sorted from most to least plausible (total orders only)."""
        return sorted(self.base.worlds, key=lambda w: bin(self.below[self.base.index[w]]).count("1"))


def order_properties(m: PlausibilityModel) -> OrderProperties:
    return _order_props(m.base.worlds, m.order)


def minimal_states(m: PlausibilityModel, f: Formula | None = None,
                   ctx: EvaluationContext | None = None) -> frozenset[str]:
    """Minimal worlds of W, or the ``f``-minimal worlds when ``f`` is given."""
    ev = m.evaluator(ctx or EvaluationContext())
    if f is None:
        mask = m.base.full
    else:
        ev.check_vocabulary(f)
        mask = ev.mask(f)
    return m.base.worlds_of(ev.minimal(mask))


def satisfies_pref(m: PlausibilityModel, ctx: EvaluationContext, w: str, f: Formula) -> bool:
    try:
        i = m.base.index[w]
    except KeyError:
        raise UnknownWorldError(f"unknown world {w!r}") from None
    ev = m.evaluator(ctx)
    ev.check_vocabulary(f)
    return bool(ev.mask(f) >> i & 1)


def preferential_counterexample(suite, gamma: Iterable[Formula], f: Formula,
                                reading: str = GAMMA_MINIMAL):
    """First ``(model_index, world)``: a relevant minimal world where ``f`` fails.

    ``reading`` picks between minimality among the gamma-worlds (default)
    and globally minimal worlds that happen to satisfy gamma.
    """
    if reading not in (GAMMA_MINIMAL, BARE):
        raise ValueError(f"unknown reading {reading!r}")
    gamma = list(gamma)
    for k, (m, ctx) in enumerate(suite):
        ev = m.evaluator(ctx)
        for g in (*gamma, f):
            ev.check_vocabulary(g)
        prem = m.base.full
        for g in gamma:
            prem &= ev.mask(g)
        mins = ev.minimal(prem) if reading == GAMMA_MINIMAL else ev.minimal(m.base.full) & prem
        bad = mins & ~ev.mask(f)
        if bad:
            i = (bad & -bad).bit_length() - 1
            return k, m.base.worlds[i]
    return None


def preferential_consequence(suite, gamma: Iterable[Formula], f: Formula,
                             reading: str = GAMMA_MINIMAL) -> bool:
    """``gamma |=< f``: ``f`` holds at every minimal gamma-world of every model.

    ``suite`` is a list of ``(PlausibilityModel, EvaluationContext)`` pairs;
    a bare ``PlausibilityModel`` is accepted as a one-model suite.
    """
    if isinstance(suite, PlausibilityModel):
        suite = [(suite, EvaluationContext())]
    return preferential_counterexample(suite, gamma, f, reading) is None


def minimal_model(m: PlausibilityModel) -> KripkeModel:
    """Restriction of the base model to its order-minimal worlds."""
    ev = m.evaluator(EvaluationContext())
    keep = m.base.worlds_of(ev.minimal(m.base.full))
    return m.base.restrict(keep)
