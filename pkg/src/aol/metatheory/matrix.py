"""Property matrix: four structural properties against five consequence relations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .audit import AuditReport, audit, replay
from .generate import AuditConfig
from .properties import PUBLISHED_FAILS, ROWS

COLUMNS = ("local", "pref", "s", "c", "p")
COLUMN_LABELS = {"local": "|=", "pref": "|=<", "s": "|=<s", "c": "|=<c", "p": "|=<p"}
ROW_LABELS = {
    "supraclassicality": "Supraclassicality",
    "reflexivity": "Reflexivity",
    "cautious_monotony": "Cautious Monotony",
    "cautious_transitivity": "Cautious Transitivity",
}
# published cells, True for a check mark
PUBLISHED = {row: {c: (c, row) not in PUBLISHED_FAILS for c in COLUMNS} for row in ROWS}
DEFAULT_TRIALS = 300


def cell_property(row: str, column: str) -> str:
    if column == "pref":
        return row
    if column == "local":
        return f"local_{row}"
    return f"{column}_{row}"


def load_seeds() -> list[dict]:
    text = resources.files("aol.data").joinpath("seeded.json").read_text()
    return json.loads(text)


@dataclass
class Cell:
    row: str
    column: str
    report: AuditReport
    seeded: list[dict] = field(default_factory=list)

    @property
    def holds(self) -> bool | None:
        if self.seeded or self.report.counterexamples:
            return False
        return True if self.report.nonvacuous else None

    @property
    def symbol(self) -> str:
        return {True: "✓", False: "✗", None: "?"}[self.holds]

    @property
    def counterexample(self) -> dict | None:
        if self.seeded:
            return self.seeded[0]
        return self.report.counterexamples[0] if self.report.counterexamples else None

    def to_dict(self) -> dict:
        return {
            "property": self.report.property,
            "verdict": self.symbol,
            "trials": self.report.trials,
            "nonvacuous": self.report.nonvacuous,
            "search_counterexamples": self.report.counterexample_count,
            "seeded_counterexamples": len(self.seeded),
            "counterexample": self.counterexample,
        }


@dataclass
class PropertyMatrix:
    config: AuditConfig
    cells: dict[tuple[str, str], Cell]

    def computed(self, row: str, column: str) -> bool | None:
        return self.cells[row, column].holds

    def diff(self) -> list[dict]:
        out = []
        for row in ROWS:
            for col in COLUMNS:
                got = self.computed(row, col)
                if got != PUBLISHED[row][col]:
                    out.append({
                        "row": row, "column": COLUMN_LABELS[col],
                        "published": "✓" if PUBLISHED[row][col] else "✗",
                        "computed": self.cells[row, col].symbol,
                    })
        return out

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "label": "finite-suite evidence, not a proof",
            "columns": [COLUMN_LABELS[c] for c in COLUMNS],
            "rows": {
                row: {COLUMN_LABELS[c]: self.cells[row, c].to_dict() for c in COLUMNS}
                for row in ROWS
            },
            "discrepancies": self.diff(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_table(self) -> str:
        width = max(len(v) for v in ROW_LABELS.values())
        head = " " * width + "".join(f"{COLUMN_LABELS[c]:>8}" for c in COLUMNS)
        lines = [head]
        for row in ROWS:
            cells = "".join(f"{self.cells[row, c].symbol:>8}" for c in COLUMNS)
            lines.append(f"{ROW_LABELS[row]:<{width}}{cells}")
        lines.append("")
        for row in ROWS:
            for c in COLUMNS:
                cell = self.cells[row, c]
                r = cell.report
                note = f"{r.nonvacuous}/{r.trials} non-vacuous"
                if cell.holds is False:
                    note += (f", {r.counterexample_count} found by search"
                             f", {len(cell.seeded)} seeded")
                lines.append(f"  {ROW_LABELS[row]} {COLUMN_LABELS[c]}: {cell.symbol} ({note})")
        diff = self.diff()
        lines.append("")
        if diff:
            lines.append("discrepancies against the published table:")
            for d in diff:
                lines.append(f"  {ROW_LABELS[d['row']]} {d['column']}: "
                             f"published {d['published']}, computed {d['computed']}")
        else:
            lines.append("no discrepancies against the published table")
        return "\n".join(lines)


def property_matrix(cfg: AuditConfig | None = None, seeds: list[dict] | None = None) -> PropertyMatrix:
    """Audit every cell; stored seeds are replayed and kept only if they still fail."""
    cfg = cfg or AuditConfig(trials=DEFAULT_TRIALS, frame_class="order")
    seeds = load_seeds() if seeds is None else seeds
    cells = {}
    for row in ROWS:
        for col in COLUMNS:
            name = cell_property(row, col)
            rep = audit(name, cfg)
            kept = [s for s in seeds if s["property"] == name and replay(s)]
            cells[row, col] = Cell(row, col, rep, kept)
    return PropertyMatrix(cfg, cells)
