"""Exact Coxeter-group computations over Q(tau).

Root systems, graph foldings that preserve the Coxeter number, affine
dihedral labels, lattice cells and Coxeter-plane projections.
"""
from .exactnum import TAU, GoldenMatrix, GoldenNumber, format_golden, parse_golden
from .rootsys import RootSystem, UnsupportedType, build_root_system, extend, parse_type

__version__ = "0.1.0"

__all__ = [
    "TAU",
    "GoldenMatrix",
    "GoldenNumber",
    "RootSystem",
    "UnsupportedType",
    "build_root_system",
    "extend",
    "format_golden",
    "parse_golden",
    "parse_type",
]
