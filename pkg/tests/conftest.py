import io
import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from aol.cli import run
from aol.formula import (
    FALSE, TRUE, Abd, And, Atom, Implies, Knows, Not, Only, Or, PrefCond,
)
from aol.modelfile import load_model, load_problem

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
# acceptance lines, echoed in the terminal summary
ACCEPTANCE = []
SCHEMAS = ROOT / "src" / "aol" / "schemas"


def formulas(atoms=("p", "q", "r"), modal=True, pref=True, max_leaves=40):
    leaves = st.sampled_from([Atom(a) for a in atoms]) | st.just(TRUE) | st.just(FALSE)
    unary = [Not] + ([Knows, Only, Abd] if modal else [])
    binary = [And, Or, Implies] + ([PrefCond] if pref else [])

    def extend(child):
        return (st.builds(lambda op, a: op(a), st.sampled_from(unary), child)
                | st.builds(lambda op, a, b: op(a, b), st.sampled_from(binary), child, child))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


class CliResult:
    def __init__(self, code, out, err):
        self.code, self.out, self.err = code, out, err

    @property
    def json(self):
        return json.loads(self.out)


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return CliResult(code, out.getvalue(), err.getvalue())


@pytest.fixture
def models_dir():
    return MODELS


@pytest.fixture
def clinic_case():
    doc = load_model(MODELS / "clinic.model")
    return doc, load_problem(MODELS / "clinic.problem").problem(doc)


@pytest.fixture
def flu_case():
    doc = load_model(MODELS / "flu.model")
    return doc, load_problem(MODELS / "flu.problem").problem(doc)


@pytest.fixture
def minimal_case():
    doc = load_model(MODELS / "minimal_states.model")
    return doc, load_problem(MODELS / "minimal_states.problem").problem(doc)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
