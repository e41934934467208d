"""Loading and writing the line-oriented model and problem files, plus JSON
round-tripping of models for stored counterexamples.

Model file::

    worlds: w1 w2 w3
    rel: w1 -> w2, w2 -> w2
    order: w1 < w2, w2 < w3, w1 < w3     # or: ranking: w1 w2 w3
    actual: w1
    val w1: fever cough
    theory: flu -> (cough & fever); cold -> cough
    hypotheses: flu cold
    atoms: chest_pain                      # extra atoms, false unless valued

Problem file::

    observe: fever cough
    priority: allergies=1 strep_throat=2
    depth: 2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .abduction import AbductionProblem
from .formula import RESERVED, Atom, Formula, ParseError, atoms_of, conjoin, parse, to_text
from .kripke import EvaluationContext, KripkeModel, ModelError, WitnessMode
from .preferential import PlausibilityModel

__all__ = [
    "InputError",
    "SyntaxProblem",
    "InvariantViolation",
    "ModelDocument",
    "ProblemDocument",
    "load_model",
    "loads_model",
    "load_problem",
    "loads_problem",
    "dumps_model",
    "model_to_dict",
    "model_from_dict",
]


class InputError(Exception):
    def __init__(self, source: str, line: int | None, message: str):
        self.source = source
        self.line = line
        self.message = message
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


class SyntaxProblem(InputError):
    """Malformed input text."""


class InvariantViolation(InputError):
    """Well-formed text describing an invalid model or problem."""


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_VAL = re.compile(r"val\s+(\S+)\s*:(.*)\Z")
_KEY = re.compile(r"([a-z]+)\s*:(.*)\Z")


@dataclass
class ModelDocument:
    model: KripkeModel | PlausibilityModel
    theory: tuple[Formula, ...] = ()
    hypotheses: tuple[str, ...] = ()
    source: str = "<model>"

    @property
    def base(self) -> KripkeModel:
        return getattr(self.model, "base", self.model)

    @property
    def has_order(self) -> bool:
        return isinstance(self.model, PlausibilityModel)

    @property
    def actual(self) -> str | None:
        return self.base.actual

    def context(self, witness_mode: str | WitnessMode = WitnessMode.SUBSETS,
                max_witness_size: int = 3, existential_import: bool = False) -> EvaluationContext:
        return EvaluationContext(self.theory, WitnessMode(witness_mode), max_witness_size,
                                 existential_import)


@dataclass
class ProblemDocument:
    observation: Formula
    priorities: dict[str, int] | None = None
    depth: int = 2
    hypotheses: tuple[str, ...] | None = None
    literals: bool = False
    source: str = "<problem>"

    def problem(self, doc: ModelDocument) -> AbductionProblem:
        hyps = self.hypotheses if self.hypotheses is not None else doc.hypotheses
        return AbductionProblem(
            background=doc.theory,
            observation=self.observation,
            hypotheses=hyps,
            depth=self.depth,
            priorities=self.priorities,
            literals=self.literals,
        )


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _names(src: str, n: int, text: str, what: str) -> list[str]:
    names = text.split()
    for name in names:
        if not _IDENT.match(name):
            raise SyntaxProblem(src, n, f"invalid {what} name {name!r}")
        if what == "atom" and name in RESERVED:
            raise SyntaxProblem(src, n, f"{name!r} is reserved and cannot name an atom")
    return names


def _edges(src: str, n: int, text: str, arrow: str) -> list[tuple[str, str]]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        pieces = [p.strip() for p in part.split(arrow)]
        if len(pieces) < 2 or not all(_IDENT.match(p) for p in pieces):
            raise SyntaxProblem(src, n, f"malformed edge {part!r} (expected a {arrow} b)")
        out.extend(zip(pieces, pieces[1:]))
    return out


def _formula(src: str, n: int, text: str) -> Formula:
    try:
        return parse(text)
    except ParseError as e:
        raise SyntaxProblem(src, n, f"{e.message} in {text.strip()!r} at column {e.position + 1}") from None
    except ValueError as e:
        raise SyntaxProblem(src, n, str(e)) from None


def loads_model(text: str, source: str = "<model>", permissive: bool = False) -> ModelDocument:
    worlds: list[str] | None = None
    worlds_line = 0
    rel: list[tuple[tuple[str, str], int]] = []
    order: list[tuple[tuple[str, str], int]] = []
    ranking: tuple[list[str], int] | None = None
    actual: tuple[str, int] | None = None
    val: dict[str, tuple[list[str], int]] = {}
    theory: list[Formula] = []
    hyps: list[str] = []
    extra: list[str] = []
    for n, line in _lines(text):
        m = _VAL.match(line)
        if m:
            w = m.group(1)
            if w in val:
                raise SyntaxProblem(source, n, f"duplicate valuation row for {w}")
            val[w] = (_names(source, n, m.group(2), "atom"), n)
            continue
        m = _KEY.match(line)
        if not m:
            raise SyntaxProblem(source, n, f"cannot read line {line!r}")
        key, rest = m.group(1), m.group(2).strip()
        if key == "worlds":
            if worlds is not None:
                raise SyntaxProblem(source, n, "worlds declared twice")
            worlds, worlds_line = _names(source, n, rest, "world"), n
        elif key == "rel":
            rel += [(e, n) for e in _edges(source, n, rest, "->")]
        elif key == "order":
            order += [(e, n) for e in _edges(source, n, rest, "<")]
        elif key == "ranking":
            ranking = (_names(source, n, rest, "world"), n)
        elif key == "actual":
            names = _names(source, n, rest, "world")
            if len(names) != 1:
                raise SyntaxProblem(source, n, "actual takes exactly one world")
            actual = (names[0], n)
        elif key == "theory":
            for part in rest.split(";"):
                if part.strip():
                    theory.append(_formula(source, n, part))
        elif key == "hypotheses":
            hyps += _names(source, n, rest, "atom")
        elif key == "atoms":
            extra += _names(source, n, rest, "atom")
        else:
            raise SyntaxProblem(source, n, f"unknown key {key!r}")

    if not worlds:
        raise InvariantViolation(source, worlds_line or None, "the model declares no worlds")
    known = set(worlds)
    if len(known) != len(worlds):
        raise InvariantViolation(source, worlds_line, "duplicate world names")
    for (a, b), n in rel:
        for x in (a, b):
            if x not in known:
                raise InvariantViolation(source, n, f"relation edge {a} -> {b}: undeclared world {x}")
    for (a, b), n in order:
        for x in (a, b):
            if x not in known:
                raise InvariantViolation(source, n, f"order edge {a} < {b}: undeclared world {x}")
    for w, (_, n) in val.items():
        if w not in known:
            raise InvariantViolation(source, n, f"valuation row for undeclared world {w}")
    if actual and actual[0] not in known:
        raise InvariantViolation(source, actual[1], f"actual world {actual[0]} is not declared")

    vocab: list[str] = []
    def add(atoms):
        for a in atoms:
            if a not in vocab:
                vocab.append(a)
    add(extra)  # declared atoms fix the vocabulary order
    for w in worlds:
        add(val.get(w, ([], 0))[0])
    for f in theory:
        add(sorted(atoms_of(f)))
    add(hyps)
    valuation: dict[str, set[str]] = {a: set() for a in vocab}
    for w, (atoms, _) in val.items():
        for a in atoms:
            valuation[a].add(w)
    try:
        base = KripkeModel(
            tuple(worlds),
            frozenset(e for e, _ in rel),
            {a: frozenset(ws) for a, ws in valuation.items()},
            tuple(vocab),
            actual[0] if actual else None,
        )
    except ModelError as e:
        raise InvariantViolation(source, None, str(e)) from None

    model: KripkeModel | PlausibilityModel = base
    if ranking is not None or order:
        pairs = {e for e, _ in order}
        line = order[0][1] if order else ranking[1]
        if ranking is not None:
            names, line = ranking
            bad = [x for x in names if x not in known]
            if bad:
                raise InvariantViolation(source, line, f"ranking mentions undeclared world {bad[0]}")
            if sorted(names) != sorted(worlds):
                raise InvariantViolation(source, line, "ranking must list every world exactly once")
            pairs |= {(a, b) for i, a in enumerate(names) for b in names[i + 1:]}
        try:
            model = PlausibilityModel(base, frozenset(pairs), permissive=permissive)
        except ModelError as e:
            raise InvariantViolation(source, line, str(e)) from None
    return ModelDocument(model, tuple(theory), tuple(hyps), source)


def load_model(path: str | Path, permissive: bool = False) -> ModelDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SyntaxProblem(str(path), None, f"cannot read file: {e.strerror}") from None
    return loads_model(text, str(path), permissive)


def loads_problem(text: str, source: str = "<problem>") -> ProblemDocument:
    observation = None
    priorities = None
    depth = 2
    hyps = None
    literals = False
    for n, line in _lines(text):
        m = _KEY.match(line)
        if not m:
            raise SyntaxProblem(source, n, f"cannot read line {line!r}")
        key, rest = m.group(1), m.group(2).strip()
        if key == "observe":
            if re.search(r"[()~&|>]|->", rest):
                observation = _formula(source, n, rest)
            else:
                names = _names(source, n, rest, "atom")
                if not names:
                    raise SyntaxProblem(source, n, "observe needs at least one atom")
                observation = conjoin(Atom(a) for a in names)
        elif key == "priority":
            priorities = {}
            for item in rest.split():
                name, sep, level = item.partition("=")
                if not sep or not _IDENT.match(name) or not level.isdigit():
                    raise SyntaxProblem(source, n, f"malformed priority {item!r} (expected atom=level)")
                if int(level) < 1:
                    raise InvariantViolation(source, n, f"priority of {name} must be positive")
                priorities[name] = int(level)
        elif key == "depth":
            if not rest.isdigit() or int(rest) < 1:
                raise SyntaxProblem(source, n, f"depth must be a positive integer, got {rest!r}")
            depth = int(rest)
        elif key == "hypotheses":
            hyps = tuple(_names(source, n, rest, "atom"))
        elif key == "literals":
            literals = rest.lower() in ("yes", "true", "1", "on")
        else:
            raise SyntaxProblem(source, n, f"unknown key {key!r}")
    if observation is None:
        raise SyntaxProblem(source, None, "problem file has no observe line")
    return ProblemDocument(observation, priorities, depth, hyps, literals, source)


def load_problem(path: str | Path) -> ProblemDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SyntaxProblem(str(path), None, f"cannot read file: {e.strerror}") from None
    return loads_problem(text, str(path))


# ------------------------------------------------------------------ output


def dumps_model(model: KripkeModel | PlausibilityModel, theory=(), hypotheses=()) -> str:
    base = getattr(model, "base", model)
    lines = ["worlds: " + " ".join(base.worlds)]
    edges = sorted(base.relation, key=lambda e: (base.index[e[0]], base.index[e[1]]))
    if edges:
        lines.append("rel: " + ", ".join(f"{a} -> {b}" for a, b in edges))
    if isinstance(model, PlausibilityModel) and model.order:
        pairs = sorted(model.order, key=lambda e: (base.index[e[0]], base.index[e[1]]))
        lines.append("order: " + ", ".join(f"{a} < {b}" for a, b in pairs))
    elif isinstance(model, PlausibilityModel) and len(base.worlds) == 1:
        # an empty order still marks a plausibility model
        lines.append("ranking: " + " ".join(base.worlds))
    if base.actual:
        lines.append(f"actual: {base.actual}")
    derived: list[str] = []
    for w in base.worlds:
        atoms = [a for a in base.vocabulary if w in base.valuation.get(a, ())]
        derived += [a for a in atoms if a not in derived]
        lines.append(f"val {w}: " + " ".join(atoms) if atoms else f"val {w}:")
    if theory:
        lines.append("theory: " + "; ".join(to_text(t) for t in theory))
        for t in theory:
            derived += [a for a in sorted(atoms_of(t)) if a not in derived]
    if hypotheses:
        lines.append("hypotheses: " + " ".join(hypotheses))
        derived += [a for a in hypotheses if a not in derived]
    if derived != list(base.vocabulary):
        lines.append("atoms: " + " ".join(base.vocabulary))
    return "\n".join(lines) + "\n"


def model_to_dict(model: KripkeModel | PlausibilityModel) -> dict[str, Any]:
    base = getattr(model, "base", model)
    out: dict[str, Any] = {
        "worlds": list(base.worlds),
        "relation": sorted([a, b] for a, b in base.relation),
        "valuation": {a: sorted(base.valuation.get(a, ())) for a in base.vocabulary},
        "vocabulary": list(base.vocabulary),
        "actual": base.actual,
    }
    if isinstance(model, PlausibilityModel):
        out["order"] = sorted([a, b] for a, b in model.order)
    return out


def model_from_dict(data: dict[str, Any]) -> KripkeModel | PlausibilityModel:
    base = KripkeModel(
        tuple(data["worlds"]),
        frozenset((a, b) for a, b in data["relation"]),
        {a: frozenset(ws) for a, ws in data["valuation"].items()},
        tuple(data["vocabulary"]),
        data.get("actual"),
    )
    if "order" in data:
        return PlausibilityModel(base, frozenset((a, b) for a, b in data["order"]))
    return base
