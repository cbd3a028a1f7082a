"""Exact divisor theory on abstract tropical curves with finite symmetry groups."""

from .automorphism import AutGroup, Automorphism, compose, enumerate_aut, identity, validate_group
from .cohomology import (
    Cocycle1D,
    Cocycle1F,
    Cocycle2F,
    Cocycle2R,
    check_real_1cocycle,
    div_1cocycle_witness,
    h90_witness,
    mq_2cocycle_witness,
    real_2cocycle_witness,
)
from .curve import Curve, Edge, EdgePoint, Vertex, VertexPoint, minimal_model, refine, validate_curve
from .divisor import Divisor, act_on_divisor, degree
from .errors import TropsymError
from .invariantize import is_class_invariant, symmetrize_degree0, symmetrize_divisor
from .plfunction import PLFunction, div, evaluate, ord_at, pullback
from .principal import is_equivalent, solve_principal

__version__ = "0.1.0"

__all__ = [
    "AutGroup",
    "Automorphism",
    "Cocycle1D",
    "Cocycle1F",
    "Cocycle2F",
    "Cocycle2R",
    "Curve",
    "Divisor",
    "Edge",
    "EdgePoint",
    "PLFunction",
    "TropsymError",
    "Vertex",
    "VertexPoint",
    "act_on_divisor",
    "check_real_1cocycle",
    "compose",
    "degree",
    "div",
    "div_1cocycle_witness",
    "enumerate_aut",
    "evaluate",
    "h90_witness",
    "identity",
    "is_class_invariant",
    "is_equivalent",
    "minimal_model",
    "mq_2cocycle_witness",
    "ord_at",
    "pullback",
    "real_2cocycle_witness",
    "refine",
    "solve_principal",
    "symmetrize_degree0",
    "symmetrize_divisor",
    "validate_curve",
    "validate_group",
]
