"""Cartan KHK decomposition of Pauli-sum Hamiltonians.

Thin wrapper over the compiled extension. The C++ CLI (``cartanqs``) exposes
the same pipeline for batch use; this module is for interactive work and
smoke tests.
"""

from cartanqs._core import (
    CartanSolution,
    GroundState,
    PauliError,
    PauliString,
    PauliSum,
    build_hubbard,
    build_tfim,
    decompose,
    emit_qasm,
    format_pauli_sum,
    ground_state,
    hubbard_gf,
    parse_pauli_sum,
    spectral,
)

__all__ = [
    "CartanSolution",
    "GroundState",
    "PauliError",
    "PauliString",
    "PauliSum",
    "build_hubbard",
    "build_tfim",
    "decompose",
    "emit_qasm",
    "format_pauli_sum",
    "ground_state",
    "hubbard_gf",
    "parse_pauli_sum",
    "spectral",
]

__version__ = "0.1.0"
