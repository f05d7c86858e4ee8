"""Linearized models of spinning rigid bodies and flexible beams."""

from ._core import (
    ModelInvalid,
    NumericalFailure,
    SchemaError,
    builtin_scenarios,
    cantilever_ratios,
    freqresp,
    modes,
    run,
    scenario_grammar,
    table,
)

__all__ = [
    "ModelInvalid",
    "NumericalFailure",
    "SchemaError",
    "builtin_scenarios",
    "cantilever_ratios",
    "freqresp",
    "modes",
    "run",
    "scenario_grammar",
    "table",
]
