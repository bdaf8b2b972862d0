# SPDX-License-Identifier: MIT
"""Elimination of list arguments from constrained Horn clauses."""

from ._core import (
    Bounds,
    Program,
    TransformResult,
    Verdict,
    check_complement,
    check_lemmas,
    check_total_functional,
    eliminate,
    parse,
    run_pipeline,
)

__all__ = [
    "Bounds",
    "Program",
    "TransformResult",
    "Verdict",
    "check_complement",
    "check_lemmas",
    "check_total_functional",
    "eliminate",
    "parse",
    "run_pipeline",
]
