"""Pullback maps, effective generators, certificates and Reid-Tai ages."""

from .catalog import GENERATOR_SPECS, Generator, canonical_class, resolve_generator
from .certify import Certificate, InequalitySystem, build_system, certify, solve, verify
from .maps import forgetful_pullback, glue_pullback, hyperelliptic_restrict, symmetrize
from .singularity import DiagonalAction, age, classify, hyperelliptic_tangent_action

__all__ = [
    "GENERATOR_SPECS",
    "Generator",
    "canonical_class",
    "resolve_generator",
    "Certificate",
    "InequalitySystem",
    "build_system",
    "certify",
    "solve",
    "verify",
    "forgetful_pullback",
    "glue_pullback",
    "hyperelliptic_restrict",
    "symmetrize",
    "DiagonalAction",
    "age",
    "classify",
    "hyperelliptic_tangent_action",
]
