"""Quantifier elimination for the integers with p-adic valuations."""

from ._padiq import (
    Formula,
    ParseError,
    ResourceError,
    decide,
    evaluate,
    fuzz_check,
    parse,
    qe,
    recognize_subgroup,
    render,
    solve,
)

__all__ = [
    "Formula",
    "ParseError",
    "ResourceError",
    "decide",
    "evaluate",
    "fuzz_check",
    "parse",
    "qe",
    "recognize_subgroup",
    "render",
    "solve",
]
