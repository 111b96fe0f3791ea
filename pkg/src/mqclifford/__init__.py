"""Compile Clifford circuits to a constant number of global multiqubit gates."""

from .circuit import Circuit, CompiledResult, Gate, parse, serialize, to_symplectic
from .power import walker_optimize
from .symfactor import SymmetricPair, factor_symmetric_pair
from .symplectic import PauliString, SymplecticOp
from .synth import compile_clifford, synthesize_cx, synthesize_cx_alt

__all__ = [
    "Circuit",
    "CompiledResult",
    "Gate",
    "PauliString",
    "SymmetricPair",
    "SymplecticOp",
    "compile_clifford",
    "factor_symmetric_pair",
    "parse",
    "serialize",
    "synthesize_cx",
    "synthesize_cx_alt",
    "to_symplectic",
    "walker_optimize",
]

__version__ = "0.1.0"
