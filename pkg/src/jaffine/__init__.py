"""Quantum stabilizer codes from subfield-subcodes of J-affine variety codes."""

from __future__ import annotations

from ._kernels import BACKEND
from .cache import WeightCache
from .codes import LinearCode
from .cyclotomic import minimal_cyclotomic_sets, subfield_dims, trace_code
from .galois import FiniteField, make_field
from .harness import run_construct, run_reproduce_table, run_search
from .stabilizer import (
    DistanceOptions,
    EnlargementInput,
    PreconditionError,
    StabilizerParams,
    build_symplectic_code,
    css_construct,
    enlargement_from_codes,
    expurgate,
    generalized_enlarge,
    gv_check,
    hermitian_construct,
    params_from_delta_euclid,
    params_from_delta_herm,
    replay,
    steane_enlarge,
)
from .variety import DefiningSet, VarietyParams, evaluate_code
from .weights import WeightReport, min_weight

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FiniteField",
    "make_field",
    "LinearCode",
    "WeightReport",
    "min_weight",
    "WeightCache",
    "VarietyParams",
    "DefiningSet",
    "evaluate_code",
    "minimal_cyclotomic_sets",
    "subfield_dims",
    "trace_code",
    "DistanceOptions",
    "PreconditionError",
    "StabilizerParams",
    "EnlargementInput",
    "css_construct",
    "hermitian_construct",
    "params_from_delta_euclid",
    "params_from_delta_herm",
    "steane_enlarge",
    "generalized_enlarge",
    "enlargement_from_codes",
    "build_symplectic_code",
    "expurgate",
    "gv_check",
    "replay",
    "run_construct",
    "run_reproduce_table",
    "run_search",
]
