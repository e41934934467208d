"""Seeded random models, formulas and abductive problems for the audits."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..formula import (
    FALSE, TRUE, Abd, And, Atom, Formula, Implies, Knows, Not, Only, Or, PrefCond,
    conjoin, disjoin,
)
from ..kripke import KripkeModel
from ..preferential import PlausibilityModel

FRAME_CLASSES = ("arbitrary", "reflexive", "s5", "order")
_FRAME_ALIASES = {"S5": "s5", "transitive-connected-order": "order"}
_ATOM_NAMES = ("p", "q", "r", "s", "t", "u", "v", "x")


@dataclass(frozen=True)
class AuditConfig:
    seed: int = 0
    trials: int = 1000
    max_worlds: int = 5
    max_atoms: int = 4
    formula_depth: int = 3
    frame_class: str = "arbitrary"

    def __post_init__(self) -> None:
        object.__setattr__(self, "frame_class",
                           _FRAME_ALIASES.get(self.frame_class, self.frame_class))
        if self.frame_class not in FRAME_CLASSES:
            raise ValueError(f"unknown frame class {self.frame_class!r}")
        for name in ("trials", "max_worlds", "max_atoms", "formula_depth"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")

    def replace(self, **changes) -> "AuditConfig":
        from dataclasses import replace

        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed, "trials": self.trials, "max_worlds": self.max_worlds,
            "max_atoms": self.max_atoms, "formula_depth": self.formula_depth,
            "frame_class": self.frame_class,
        }


def trial_rng(cfg: AuditConfig, trial: int, salt: str = "") -> random.Random:
    return random.Random(f"{cfg.seed}/{trial}/{salt}")


def atom_names(k: int) -> list[str]:
    return [_ATOM_NAMES[i] if i < len(_ATOM_NAMES) else f"p{i}" for i in range(k)]


def _relation(rng: random.Random, worlds: list[str], frame: str) -> set[tuple[str, str]]:
    if frame == "s5":
        cells: list[list[str]] = []
        for w in worlds:
            if cells and rng.random() < 0.5:
                rng.choice(cells).append(w)
            else:
                cells.append([w])
        return {(a, b) for c in cells for a in c for b in c}
    density = rng.choice((0.25, 0.4, 0.6))
    rel = {(a, b) for a in worlds for b in worlds if rng.random() < density}
    if frame == "reflexive":
        rel |= {(w, w) for w in worlds}
    return rel


def random_kripke(rng: random.Random, cfg: AuditConfig, min_atoms: int = 1,
                  atoms: list[str] | None = None) -> KripkeModel:
    n = rng.randint(1, cfg.max_worlds)
    if atoms is None:
        atoms = atom_names(rng.randint(min(min_atoms, cfg.max_atoms), cfg.max_atoms))
    worlds = [f"w{i + 1}" for i in range(n)]
    val = {a: frozenset(w for w in worlds if rng.random() < 0.5) for a in atoms}
    rel = _relation(rng, worlds, cfg.frame_class)
    return KripkeModel(tuple(worlds), frozenset(rel), val, tuple(atoms), worlds[0])


def random_plausibility(rng: random.Random, cfg: AuditConfig, min_atoms: int = 1,
                        atoms: list[str] | None = None) -> PlausibilityModel:
    base = random_kripke(rng, cfg, min_atoms, atoms)
    ranking = list(base.worlds)
    rng.shuffle(ranking)
    return PlausibilityModel.from_ranking(base, ranking)


def random_suite(rng: random.Random, cfg: AuditConfig, min_atoms: int = 1,
                 size: tuple[int, int] = (2, 4)) -> list[PlausibilityModel]:
    """Plausibility models over one shared vocabulary."""
    first = random_plausibility(rng, cfg, min_atoms)
    atoms = list(first.vocabulary)
    return [first] + [random_plausibility(rng, cfg, atoms=atoms)
                      for _ in range(rng.randint(*size) - 1)]


def generate_model(cfg: AuditConfig, trial: int) -> PlausibilityModel:
    """Deterministic in ``(cfg, trial)``; the order is a random total ranking."""
    return random_plausibility(trial_rng(cfg, trial, "model"), cfg)


def with_successors(model, world: str, succ: frozenset[str]):
    """Copy of ``model`` where ``world`` sees exactly ``succ``."""
    base = getattr(model, "base", model)
    rel = {(a, b) for a, b in base.relation if a != world} | {(world, b) for b in succ}
    new = KripkeModel(base.worlds, frozenset(rel), base.valuation, base.vocabulary, base.actual)
    if isinstance(model, PlausibilityModel):
        return PlausibilityModel(new, model.order, model.permissive)
    return new


# ---------------------------------------------------------------- formulas

_OBJ_UNARY = (Not,)
_OBJ_BINARY = (And, Or, Implies)
_MODAL_UNARY = (Knows, Only, Abd)


def random_formula(rng: random.Random, atoms, max_depth: int,
                   modal: bool = False, pref: bool = False) -> Formula:
    """Random formula of depth at most ``max_depth`` over ``atoms``."""
    atoms = list(atoms)
    if max_depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.06:
            return TRUE
        if r < 0.12:
            return FALSE
        return Atom(rng.choice(atoms))
    unary = _OBJ_UNARY + (_MODAL_UNARY if modal else ())
    binary = _OBJ_BINARY + ((PrefCond,) if pref else ())
    if rng.random() < 0.4:
        return rng.choice(unary)(random_formula(rng, atoms, max_depth - 1, modal, pref))
    op = rng.choice(binary)
    return op(random_formula(rng, atoms, max_depth - 1, modal, pref),
              random_formula(rng, atoms, max_depth - 1, modal, pref))


def world_term(base: KripkeModel, w: str) -> Formula:
    """Conjunction of literals fixing the valuation of ``w``."""
    sig = base.true_atoms(w)
    return conjoin(Atom(a) if a in sig else Not(Atom(a)) for a in base.vocabulary)


def worlds_term(base: KripkeModel, worlds) -> Formula:
    """Boolean formula true at least on ``worlds`` (exactly, when definable)."""
    order = base.index
    return disjoin(world_term(base, w) for w in sorted(worlds, key=order.__getitem__))
