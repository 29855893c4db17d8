"""Finite modules, their submodule lattices and intersection graphs."""

from .counting import (
    chromatic_formula,
    count_by_length,
    count_complements,
    count_intersecting,
    count_maximal,
    count_maximal_homogeneous,
    gaussian_binomial,
)
from .enumeration import complements_of, cyclic_submodule, enumerate_submodules, enumerate_subspaces
from .errors import SizeBoundExceeded, UnsupportedCase
from .field import FieldSpec, field_make, field_of_size
from .graph import IntersectionGraph, build_graph, compute_invariants
from .modules import ExplicitSpec, SemisimpleSpec, SubmoduleLattice, semisimple
from .specio import SpecParseError, load_spec, parse_spec, serialize_spec

__version__ = "0.1.0"

__all__ = [
    "ExplicitSpec",
    "FieldSpec",
    "IntersectionGraph",
    "SemisimpleSpec",
    "SizeBoundExceeded",
    "SpecParseError",
    "SubmoduleLattice",
    "UnsupportedCase",
    "build_graph",
    "chromatic_formula",
    "complements_of",
    "compute_invariants",
    "count_by_length",
    "count_complements",
    "count_intersecting",
    "count_maximal",
    "count_maximal_homogeneous",
    "cyclic_submodule",
    "enumerate_submodules",
    "enumerate_subspaces",
    "field_make",
    "field_of_size",
    "gaussian_binomial",
    "load_spec",
    "parse_spec",
    "semisimple",
    "serialize_spec",
]
