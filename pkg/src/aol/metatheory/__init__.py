"""Randomized audits of the logic's metatheorems."""

from .audit import AuditReport, audit, counterexample, registered, replay
from .generate import AuditConfig, generate_model, random_formula
from .matrix import property_matrix
from .properties import REGISTRY, Outcome, check_instance

__all__ = [
    "AuditConfig", "AuditReport", "audit", "replay", "registered", "counterexample",
    "generate_model", "random_formula", "property_matrix", "REGISTRY", "Outcome",
    "check_instance",
]
