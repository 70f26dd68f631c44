# SPDX-License-Identifier: MIT
# Copyright (c) 2026 The ncg-forge authors
"""Python access to the ncg-forge library."""

import json

from ._ncg_forge import (
    CapacityError,
    DecompositionError,
    DimensionError,
    InputError,
    InvariantError,
    chain_uniform,
    distance_chain4,
    distance_scalar,
    distance_three_point,
    gluon_propagator,
    integer_determinant,
    powers_rieffel,
    standard_model_intersection_form,
    vertex3,
)
from . import _ncg_forge as _core


def _load(source):
    if isinstance(source, dict):
        return json.dumps(source)
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return source
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def validate(source):
    """Axiom report for a finite triple given as a path, JSON text or dict."""
    return json.loads(_core.validate_json(_load(source)))


def distance(source, i=None, j=None):
    """Distance between 1-based points of a distance problem."""
    return json.loads(_core.distance_json(_load(source), i, j))


def model(source):
    return json.loads(_core.model_json(_load(source)))


__all__ = [
    "CapacityError",
    "DecompositionError",
    "DimensionError",
    "InputError",
    "InvariantError",
    "chain_uniform",
    "distance",
    "distance_chain4",
    "distance_scalar",
    "distance_three_point",
    "gluon_propagator",
    "integer_determinant",
    "model",
    "powers_rieffel",
    "standard_model_intersection_form",
    "validate",
    "vertex3",
]
