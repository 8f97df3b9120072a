"""Exact PBW normal forms, braid actions and p-adic lattice norms for U_q(g)."""

from .rootdata import RootSystem, build_root_system, longest_word, beta_sequence
from .scalars import QSpec, valuation, qint, qbinom
from .uqcore import AlgebraElement, QuantumGroup, TensorElement, get_group
from .words import WordElement

__version__ = "0.1.0"

__all__ = [
    "RootSystem",
    "build_root_system",
    "longest_word",
    "beta_sequence",
    "QSpec",
    "valuation",
    "qint",
    "qbinom",
    "AlgebraElement",
    "QuantumGroup",
    "TensorElement",
    "get_group",
    "WordElement",
]
