"""Exact checks for bihamiltonian structures, Veronese flags and bivector pencils."""

from ._bihamil import (
    REPORT_SCHEMA,
    DefectError,
    ParseError,
    PoleError,
    PreconditionError,
    decompose,
    default_params,
    fixture_names,
    run,
    simplify,
    verify,
)

__all__ = [
    "REPORT_SCHEMA",
    "DefectError",
    "ParseError",
    "PoleError",
    "PreconditionError",
    "decompose",
    "default_params",
    "fixture_names",
    "run",
    "simplify",
    "verify",
]
