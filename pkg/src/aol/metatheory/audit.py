"""Audit runner: seeded trials, verdicts and replayable reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..modelfile import model_from_dict, model_to_dict
from .generate import AuditConfig, trial_rng
from .properties import FAILS, REGISTRY, VACUOUS, Outcome

LABEL = "finite-suite evidence, not a proof"
MAX_STORED = 5


@dataclass
class AuditReport:
    property: str
    claim: str
    expected: str
    config: AuditConfig
    trials: int = 0
    nonvacuous: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    counterexample_count: int = 0
    tally: dict[str, int] = field(default_factory=dict)
    exhibits: list[dict] = field(default_factory=list)
    label: str = LABEL

    @property
    def verdict(self) -> str:
        if self.counterexamples:
            return "refuted"
        return "confirmed" if self.nonvacuous else "vacuous"

    @property
    def matches_expectation(self) -> bool:
        want = "refuted" if self.expected == "fails" else "confirmed"
        return self.verdict == want

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "claim": self.claim,
            "expected": self.expected,
            "verdict": self.verdict,
            "label": self.label,
            "config": self.config.to_dict(),
            "trials": self.trials,
            "nonvacuous": self.nonvacuous,
            "counterexample_count": self.counterexample_count,
            "counterexamples": self.counterexamples,
            "tally": dict(sorted(self.tally.items())),
            "exhibits": self.exhibits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        return (f"{self.property}: {self.verdict} "
                f"({self.nonvacuous}/{self.trials} non-vacuous, "
                f"{self.counterexample_count} counterexamples; expected {self.expected})")


def run_trial(name: str, cfg: AuditConfig, trial: int):
    prop = REGISTRY[name]
    model, instance = prop.generate(trial_rng(cfg, trial, name), cfg)
    return model, instance, prop.check(model, instance)


def audit(name: str, cfg: AuditConfig | None = None) -> AuditReport:
    """Run ``cfg.trials`` seeded instances of a registered property."""
    if name not in REGISTRY:
        raise KeyError(f"unknown property {name!r}; known: {', '.join(sorted(REGISTRY))}")
    prop = REGISTRY[name]
    cfg = cfg or AuditConfig(frame_class=prop.frame)
    rep = AuditReport(name, prop.claim, prop.expected, cfg)
    for t in range(cfg.trials):
        model, instance, out = run_trial(name, cfg, t)
        rep.trials += 1
        for tag in out.tally:
            rep.tally[tag] = rep.tally.get(tag, 0) + 1
        if out.status == VACUOUS:
            continue
        rep.nonvacuous += 1
        if out.exhibit is not None:
            rep.exhibits.append({"trial": t, "model": dump_models(model),
                                 "instance": instance, **out.exhibit})
        if out.status == FAILS:
            rep.counterexample_count += 1
            if len(rep.counterexamples) < MAX_STORED:
                rep.counterexamples.append(counterexample(name, t, model, instance, out))
    return rep


def dump_models(model) -> dict:
    if isinstance(model, (list, tuple)):
        return {"suite": [model_to_dict(m) for m in model]}
    return model_to_dict(model)


def load_models(data: dict):
    if "suite" in data:
        return [model_from_dict(d) for d in data["suite"]]
    return model_from_dict(data)


def counterexample(name: str, trial, model, instance: dict, out: Outcome) -> dict:
    return {
        "property": name,
        "trial": trial,
        "model": dump_models(model),
        "instance": instance,
        "detail": out.detail or {},
    }


def replay(cex: dict) -> bool:
    """True iff the stored counterexample still violates its property."""
    model = load_models(cex["model"])
    return REGISTRY[cex["property"]].check(model, cex["instance"]).status == FAILS


def registered() -> list[str]:
    return sorted(REGISTRY)
