"""Quon algebra, modular data and graphic quons for unitary modular tensor categories."""
from __future__ import annotations

__version__ = "0.1.0"

from .graphic import (RationalFn, brute_force_dim, check_graph_duality, check_max_equals_s_ghz, ghz,
                      ghz_genfun, graph_coefficient, max_genfun, max_state)
from .graphs import (PlanarGraph, cycle_graph, dipole_graph, dual_graph, platonic, reverse_all_edges,
                     tetrahedron_graph, wheel_graph)
from .mtc import MtcData, builtin, fibonacci, ising, pointed_z, su2_level, verify_modular_data
from .quon import Quon, convolve, multiply, sft
from .recoupling import RecouplingData, build_recoupling

__all__ = [
    "MtcData", "PlanarGraph", "Quon", "RationalFn", "RecouplingData", "brute_force_dim", "build_recoupling",
    "builtin", "check_graph_duality", "check_max_equals_s_ghz", "convolve", "cycle_graph", "dipole_graph",
    "dual_graph", "fibonacci", "ghz", "ghz_genfun", "graph_coefficient", "ising", "max_genfun", "max_state",
    "multiply", "platonic", "pointed_z", "reverse_all_edges", "sft", "su2_level", "tetrahedron_graph",
    "verify_modular_data", "wheel_graph",
]
