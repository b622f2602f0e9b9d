"""Presburger arithmetic with two power predicates."""

from ._core import (
    decide,
    encode_minsky,
    oracle_box,
    run_cli,
    solve_equation,
    solve_system,
)

__all__ = [
    "decide",
    "encode_minsky",
    "oracle_box",
    "run_cli",
    "solve_equation",
    "solve_system",
]
