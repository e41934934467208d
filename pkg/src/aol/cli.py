"""Command-line front end.

Exit codes: 0 success, 1 query false (check, entail), 2 usage or parse
error, 3 invalid model or problem.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .abduction import (
    STRATEGIES, AbductionError, AlreadyExplained, entails, enumerate_explanations,
    local_entails, report_formula, select, star_consequence, _ordered,
)
from .formula import (
    FALSE, Abd, Formula, ParseError, PrefCond, is_objective, parse, subformulas, to_text,
)
from .kripke import (
    EvaluationContext, MissingOrderError, SemanticsError, UnknownAtomError,
    UnknownWorldError, WitnessMode, abduction_witness, restrict_nonvacuous,
    satisfies,
)
from .metatheory import AuditConfig, REGISTRY, audit, property_matrix
from .metatheory.generate import FRAME_CLASSES
from .modelfile import (
    InvariantViolation, ModelDocument, SyntaxProblem, dumps_model, load_model,
    load_problem, model_to_dict,
)
from .preferential import minimal_model

OK, FALSE_ANSWER, USAGE, INVALID = 0, 1, 2, 3


class Usage(Exception):
    pass


class Invalid(Exception):
    pass


# ----------------------------------------------------------------- helpers


def _formula(text: str, what: str = "formula") -> Formula:
    try:
        return parse(text)
    except ParseError as e:
        raise Usage(f"cannot parse {what} {text!r}: {e}") from None


def _uses_pref(fs) -> bool:
    return any(isinstance(g, PrefCond) for f in fs for g in subformulas(f))


def _require_order(doc: ModelDocument, why: str) -> None:
    if not doc.has_order:
        raise Invalid(f"{doc.source}: {why} needs an order block, but the model has none")


def _context(doc: ModelDocument, args) -> EvaluationContext:
    return doc.context(args.witness_mode, args.witness_size, args.existential_import)


def _world(doc: ModelDocument, world: str | None) -> str:
    w = world or doc.actual
    if w is None:
        raise Usage("no world given and the model declares no actual world (use -w)")
    if w not in doc.base.index:
        raise Usage(f"unknown world {w!r} (model worlds: {' '.join(doc.base.worlds)})")
    return w


def _emit(out: TextIO, args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + ("\n" if not text.endswith("\n") else ""))


def _sets(p, family) -> list[list[str]]:
    return [[to_text(f) for f in _ordered(p, d)] for d in family]


# ---------------------------------------------------------------- commands


def cmd_check(args, out, err) -> int:
    doc = load_model(args.model, args.permissive)
    f = _formula(args.formula)
    if _uses_pref([f, *doc.theory]):
        _require_order(doc, "the conditional '>'")
    w = _world(doc, args.world)
    ctx = _context(doc, args)
    value = satisfies(doc.model, ctx, w, f)
    notes = []
    witness = None
    if isinstance(f, Abd) and is_objective(f.arg) and value:
        alpha = abduction_witness(doc.model, ctx, w, f.arg)
        witness = to_text(alpha) if alpha is not None else None
    if ctx.witness_mode is WitnessMode.UNRESTRICTED and satisfies(doc.model, ctx, w, Abd(FALSE)):
        notes.append(f"unrestricted witnesses collapse at {w}: A false holds, "
                     "so every formula is abducible there")
    payload = {"command": "check", "world": w, "formula": to_text(f), "value": value,
               "witness_mode": ctx.witness_mode.value, "witness": witness, "notes": notes}
    text = "true" if value else "false"
    if not args.json:
        for n in notes:
            err.write(f"note: {n}\n")
    _emit(out, args, payload, text)
    return OK if value else FALSE_ANSWER


def cmd_entail(args, out, err) -> int:
    doc = load_model(args.model, args.permissive)
    goal = _formula(args.conclusion, "conclusion")
    premises = [_formula(p, "premise") for p in args.premise]
    rel = args.relation
    if rel != "local" or _uses_pref([goal, *premises, *doc.theory]):
        _require_order(doc, f"relation {rel!r}" if rel != "local" else "the conditional '>'")
    ctx = _context(doc, args)
    suite = [(doc.model, ctx)]
    if rel in ("s", "c", "p"):
        if not args.problem:
            raise Usage(f"relation {rel!r} needs a problem file (-p) for hypotheses and priorities")
        problem = load_problem(args.problem).problem(doc)
        gamma = list(doc.theory) + [p for p in premises if p not in doc.theory]
        value = star_consequence(rel, gamma, goal, problem, suite)
    else:
        gamma = (list(doc.theory) if args.with_theory else []) + premises
        value = local_entails(suite, gamma, goal) if rel == "local" else entails(suite, gamma, goal)
    payload = {"command": "entail", "relation": rel, "premises": [to_text(g) for g in gamma],
               "conclusion": to_text(goal), "value": value}
    _emit(out, args, payload, "true" if value else "false")
    return OK if value else FALSE_ANSWER


def cmd_explain(args, out, err) -> int:
    doc = load_model(args.model, args.permissive)
    pdoc = load_problem(args.problem)
    problem = pdoc.problem(doc)
    if not problem.hypotheses:
        raise Invalid(f"{doc.source}: no hypotheses declared")
    if args.strategy:
        _require_order(doc, f"selection strategy {args.strategy!r}")
    if _uses_pref([problem.observation, *doc.theory]):
        _require_order(doc, "the conditional '>'")
    ctx = _context(doc, args)
    suite = [(doc.model, ctx)]
    try:
        family = enumerate_explanations(problem, suite, validate=not args.raw)
    except AlreadyExplained as e:
        raise Invalid(f"{pdoc.source}: not an abductive problem: {e}") from None
    payload = {
        "command": "explain",
        "observation": to_text(problem.observation),
        "consequence": "preferential" if doc.has_order else "local",
        "depth": problem.depth,
        "family": _sets(problem, family),
        "strategy": args.strategy,
        "selected": None,
        "formulas": [to_text(report_formula(problem, d)) for d in family],
    }
    chosen = list(family)
    if args.strategy:
        chosen = select(family, args.strategy, args.literal_priorization)
        payload["selected"] = _sets(problem, chosen)
        payload["formulas"] = [to_text(report_formula(problem, d)) for d in chosen]
    # explanation reports are JSON by default
    out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    return OK


def cmd_minimize(args, out, err) -> int:
    doc = load_model(args.model, args.permissive)
    _require_order(doc, "minimize")
    mm = minimal_model(doc.model)
    payload = {"command": "minimize", "model": model_to_dict(mm), "worlds": list(mm.worlds)}
    _emit(out, args, payload, dumps_model(mm, doc.theory, doc.hypotheses))
    return OK


def cmd_restrict(args, out, err) -> int:
    doc = load_model(args.model, args.permissive)
    g = _formula(args.formula)
    if not is_objective(g):
        raise Usage("restrict expects a boolean formula")
    ctx = _context(doc, args)
    res = restrict_nonvacuous(doc.base, ctx, g)
    if res is None:
        payload = {"command": "restrict", "formula": to_text(g), "model": None, "mapping": None}
        err.write("note: no world satisfies the background and the formula; no submodel\n")
        _emit(out, args, payload, "# empty restriction")
        return OK
    sub, mapping = res
    payload = {"command": "restrict", "formula": to_text(g), "model": model_to_dict(sub),
               "mapping": dict(sorted(mapping.items()))}
    _emit(out, args, payload, dumps_model(sub, doc.theory, doc.hypotheses))
    return OK


def _config(args, frame: str) -> AuditConfig:
    try:
        return AuditConfig(seed=args.seed, trials=args.trials, max_worlds=args.max_worlds,
                           max_atoms=args.max_atoms, formula_depth=args.depth,
                           frame_class=args.frame or frame)
    except ValueError as e:
        raise Usage(str(e)) from None


def cmd_audit(args, out, err) -> int:
    if args.list or not args.property:
        for name in sorted(REGISTRY):
            p = REGISTRY[name]
            out.write(f"{name}: {p.claim} [{p.frame}; expected {p.expected}]\n")
        return OK
    if args.property not in REGISTRY:
        raise Usage(f"unknown property {args.property!r} (see 'audit --list')")
    rep = audit(args.property, _config(args, REGISTRY[args.property].frame))
    text = rep.summary() + f"\n  {rep.label}"
    _emit(out, args, rep.to_dict(), text)
    return OK


def cmd_matrix(args, out, err) -> int:
    from .metatheory.matrix import DEFAULT_TRIALS

    if args.trials is None:
        args.trials = DEFAULT_TRIALS
    mat = property_matrix(_config(args, "order"))
    _emit(out, args, mat.to_dict(), mat.to_table())
    return OK


# ------------------------------------------------------------------ parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise Usage(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="aol", description="Only-knowing, abduction and preferential consequence "
                                         "over finite models.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_opts(p, evaluation=True):
        p.add_argument("-m", "--model", required=True, help="model file")
        p.add_argument("--permissive", action="store_true",
                       help="warn instead of failing on a non-connected order")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if evaluation:
            p.add_argument("--witness-mode", choices=[m.value for m in WitnessMode],
                           default="subsets")
            p.add_argument("--witness-size", type=int, default=3, metavar="N")
            p.add_argument("--existential-import", action="store_true",
                           help="make 'g > h' false when no accessible world satisfies g")

    p = sub.add_parser("check", help="truth of a formula at a world")
    model_opts(p)
    p.add_argument("-w", "--world", help="world (default: the model's actual world)")
    p.add_argument("formula")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("entail", help="consequence from premises")
    model_opts(p)
    p.add_argument("-r", "--relation", choices=["local", "pref", "s", "c", "p"], default="local")
    p.add_argument("-P", "--premise", action="append", default=[], help="premise (repeatable)")
    p.add_argument("-p", "--problem", help="problem file (needed for s, c, p)")
    p.add_argument("--with-theory", action="store_true",
                   help="add the model theory to the premises (always on for s, c, p)")
    p.add_argument("conclusion")
    p.set_defaults(run=cmd_entail)

    p = sub.add_parser("explain", help="enumerate and select explanations")
    model_opts(p)
    p.add_argument("-p", "--problem", required=True, help="problem file")
    p.add_argument("--strategy", choices=STRATEGIES)
    p.add_argument("--literal-priorization", action="store_true",
                   help="drop a set whenever another has a level no larger than one of its own")
    p.add_argument("--raw", action="store_true", help="skip consistency/explainability filtering")
    p.set_defaults(run=cmd_explain)

    p = sub.add_parser("minimize", help="emit the minimal model")
    model_opts(p, evaluation=False)
    p.set_defaults(run=cmd_minimize)

    p = sub.add_parser("restrict", help="emit the non-vacuity submodel for a formula")
    model_opts(p)
    p.add_argument("formula")
    p.set_defaults(run=cmd_restrict)

    def audit_opts(p, trials):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--frame", choices=FRAME_CLASSES)
        p.add_argument("--max-worlds", type=int, default=5)
        p.add_argument("--max-atoms", type=int, default=4)
        p.add_argument("--depth", type=int, default=3, help="formula depth bound")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("audit", help="randomized audit of a named property")
    p.add_argument("property", nargs="?")
    p.add_argument("--list", action="store_true", help="list registered properties")
    audit_opts(p, 1000)
    p.set_defaults(run=cmd_audit)

    p = sub.add_parser("matrix", help="property matrix of the consequence relations")
    audit_opts(p, None)
    p.set_defaults(run=cmd_matrix)
    return ap


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out, err)
    except Usage as e:
        err.write(f"aol: error: {e}\n")
        return USAGE
    except SyntaxProblem as e:
        err.write(f"aol: error: {e}\n")
        return USAGE
    except (InvariantViolation, Invalid) as e:
        err.write(f"aol: invalid input: {e}\n")
        return INVALID
    except UnknownWorldError as e:
        err.write(f"aol: error: {e}\n")
        return USAGE
    except (UnknownAtomError, MissingOrderError, SemanticsError, AbductionError) as e:
        err.write(f"aol: invalid input: {e}\n")
        return INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
