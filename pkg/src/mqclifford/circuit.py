"""Circuit IR, its text format, and lowering to :class:`SymplecticOp`.

Text format::

    qubits 3
    # comment
    H 0
    CNOT 0 1
    MQZ 011;101;110
    PAULI 010 001

Gate index 0 acts first. ``MQX``/``MQZ`` take the rows of the symmetric
interaction matrix separated by ``;``. ``PAULI mu eta`` is the layer
``Z**mu X**eta`` (X part applied first).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import f2
from . import symplectic as sp
from .exceptions import (
    NonLinearGateError,
    NonSymmetricXiError,
    ParseError,
    QubitOutOfRangeError,
    XiNotSymmetricError,
)

SINGLE = ("H", "S", "SDG", "X", "Y", "Z")
TWO = ("CNOT", "CZ")
MQ = ("MQX", "MQZ")
KINDS = SINGLE + TWO + MQ + ("PAULI",)


@dataclass(frozen=True, eq=False)
class Gate:
    kind: str
    qubits: tuple = ()
    xi: np.ndarray | None = None
    mu: np.ndarray | None = None
    eta: np.ndarray | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 1 if kind in SINGLE else 2 if kind in TWO else 0
        if len(self.qubits) != arity:
            raise ValueError(f"{kind} takes {arity} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{kind} qubits must be distinct")
        if (self.xi is not None) != (kind in MQ):
            raise ValueError("xi is required for MQX/MQZ and only for them")
        if self.xi is not None:
            xi = f2.as_f2(self.xi)
            if xi.ndim != 2 or xi.shape[0] != xi.shape[1]:
                raise ValueError("xi must be square")
            if not f2.is_symmetric(xi):
                raise NonSymmetricXiError(f"{kind} interaction matrix is not symmetric")
            xi.flags.writeable = False
            object.__setattr__(self, "xi", xi)
        if kind == "PAULI":
            if self.mu is None or self.eta is None:
                raise ValueError("PAULI needs mu and eta masks")
            mu, eta = f2.as_f2(self.mu), f2.as_f2(self.eta)
            if mu.shape != eta.shape or mu.ndim != 1:
                raise ValueError("mu and eta must be equal-length bit vectors")
            mu.flags.writeable = eta.flags.writeable = False
            object.__setattr__(self, "mu", mu)
            object.__setattr__(self, "eta", eta)
        elif self.mu is not None or self.eta is not None:
            raise ValueError("masks are only valid on PAULI")

    @property
    def width(self) -> int | None:
        """Qubit count a whole-register gate is defined for."""
        if self.xi is not None:
            return self.xi.shape[0]
        if self.mu is not None:
            return self.mu.size
        return None

    @property
    def is_entangling(self) -> bool:
        return self.kind in MQ

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        same = self.kind == other.kind and self.qubits == other.qubits
        for a, b in ((self.xi, other.xi), (self.mu, other.mu), (self.eta, other.eta)):
            if (a is None) != (b is None) or (a is not None and not np.array_equal(a, b)):
                return False
        return same

    def __repr__(self):
        return f"Gate({format_gate(self)!r})"


def mqz(xi) -> Gate:
    return Gate("MQZ", xi=xi)


def mqx(xi) -> Gate:
    return Gate("MQX", xi=xi)


def pauli_layer(mu, eta) -> Gate:
    return Gate("PAULI", mu=mu, eta=eta)


@dataclass(frozen=True, eq=False)
class Circuit:
    n: int
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n < 1:
            raise ValueError("a circuit needs at least one qubit")
        for g in self.gates:
            if any(q >= self.n for q in g.qubits):
                raise QubitOutOfRangeError(f"{g.kind} acts outside {self.n} qubits")
            if g.width is not None and g.width != self.n:
                raise ValueError(f"{g.kind} is sized for {g.width} qubits, circuit has {self.n}")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise ValueError("qubit count mismatch")
        return Circuit(self.n, self.gates + other.gates)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n == other.n and self.gates == other.gates

    @property
    def mq_count(self) -> int:
        return sum(g.is_entangling for g in self.gates)

    def __repr__(self):
        return f"Circuit(n={self.n}, gates={len(self.gates)})"


@dataclass(frozen=True, eq=False)
class CompiledResult:
    """Output of the synthesis routines.

    ``s1``/``s2`` are the symmetric factors used for the linear layer,
    with ``B = s1 @ s2``; ``variant`` names the construction.
    """

    circuit: Circuit
    s1: np.ndarray | None = None
    s2: np.ndarray | None = None
    permutation: tuple | None = None
    variant: str = "primary"

    @property
    def mq_count(self) -> int:
        return self.circuit.mq_count


def _bits(v) -> str:
    return "".join("1" if b else "0" for b in v)


def format_gate(g: Gate) -> str:
    if g.kind in MQ:
        return f"{g.kind} " + ";".join(_bits(row) for row in g.xi)
    if g.kind == "PAULI":
        return f"PAULI {_bits(g.mu)} {_bits(g.eta)}"
    return " ".join([g.kind, *map(str, g.qubits)])


def serialize(c: Circuit) -> str:
    lines = [f"qubits {c.n}"] + [format_gate(g) for g in c.gates]
    return "\n".join(lines) + "\n"


def _parse_bits(token: str, lineno: int) -> np.ndarray:
    if not token or set(token) - {"0", "1"}:
        raise ParseError(f"bad bit string {token!r}", lineno)
    return np.array([c == "1" for c in token], dtype=np.uint8)


def parse(text: str) -> Circuit:
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].upper()
        if n is None:
            if head != "QUBITS" or len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("expected header 'qubits <n>'", lineno)
            n = int(tokens[1])
            if n < 1:
                raise ParseError("qubit count must be positive", lineno)
            continue
        args = tokens[1:]
        if head in SINGLE or head in TWO:
            arity = 1 if head in SINGLE else 2
            if len(args) != arity or not all(a.isdigit() for a in args):
                raise ParseError(f"{head} expects {arity} qubit index(es)", lineno)
            qubits = tuple(int(a) for a in args)
            if any(q >= n for q in qubits):
                raise QubitOutOfRangeError(f"qubit index out of range in {line!r}", lineno)
            if len(set(qubits)) != arity:
                raise ParseError(f"{head} qubits must be distinct", lineno)
            gates.append(Gate(head, qubits))
        elif head in MQ:
            if len(args) != 1:
                raise ParseError(f"{head} expects one ';'-separated matrix", lineno)
            rows = [_parse_bits(r, lineno) for r in args[0].split(";")]
            if len(rows) != n or any(r.size != n for r in rows):
                raise ParseError(f"{head} matrix must be {n} x {n}", lineno)
            xi = np.array(rows, dtype=np.uint8)
            if not f2.is_symmetric(xi):
                raise XiNotSymmetricError(f"{head} matrix is not symmetric", lineno)
            gates.append(Gate(head, xi=xi))
        elif head == "PAULI":
            if len(args) != 2:
                raise ParseError("PAULI expects mu and eta bit strings", lineno)
            mu, eta = (_parse_bits(a, lineno) for a in args)
            if mu.size != n or eta.size != n:
                raise ParseError(f"PAULI masks must have length {n}", lineno)
            gates.append(pauli_layer(mu, eta))
        elif head == "QUBITS":
            raise ParseError("duplicate header", lineno)
        else:
            raise ParseError(f"unknown gate {tokens[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'qubits <n>' header")
    return Circuit(n, gates)


def apply_gate(tableau, g: Gate) -> None:
    """Update an ``(x, z, phase)`` tableau in place by conjugating with ``g``."""
    x, z, phase = tableau
    k = g.kind
    if k == "H":
        sp._apply_h(x, z, phase, g.qubits[0])
    elif k == "S":
        sp._apply_s(x, z, phase, g.qubits[0])
    elif k == "SDG":
        sp._apply_sdg(x, z, phase, g.qubits[0])
    elif k in ("X", "Y", "Z"):
        q = g.qubits[0]
        flip = {"X": z[q], "Z": x[q], "Y": x[q] ^ z[q]}[k]
        phase += 2 * flip
    elif k == "CNOT":
        sp._apply_cnot(x, z, phase, *g.qubits)
    elif k == "CZ":
        a, b = g.qubits
        sub = np.array([[0, 1], [1, 0]])
        rows = [a, b]
        xs, zs = x[rows], z[rows]
        ph = np.zeros(x.shape[1], dtype=np.int64)
        sp._apply_gcz(xs, zs, ph, sub)
        z[rows] = zs
        phase += ph
    elif k == "MQZ":
        sp._apply_gcz(x, z, phase, g.xi)
    elif k == "MQX":
        sp._apply_hadamard_all(x, z, phase)
        sp._apply_gcz(x, z, phase, g.xi)
        sp._apply_hadamard_all(x, z, phase)
    elif k == "PAULI":
        sp._apply_pauli(x, z, phase, g.mu, g.eta)
    else:  # pragma: no cover - Gate validates kinds
        raise ValueError(k)


def to_symplectic(c: Circuit) -> sp.SymplecticOp:
    """Symplectic operator of the whole circuit (gate 0 applied first)."""
    tableau = sp._tableau(sp.identity(c.n))
    for g in c.gates:
        apply_gate(tableau, g)
    x, z, phase = tableau
    return sp._to_op(x, z, phase & 3)


def gate_op(g: Gate, n: int) -> sp.SymplecticOp:
    return to_symplectic(Circuit(n, [g]))


def linear_layer_matrix(c: Circuit) -> np.ndarray:
    """``M`` with ``|v> -> |M v>`` for a CNOT-only circuit."""
    m = f2.identity(c.n)
    for g in c.gates:
        if g.kind != "CNOT":
            raise NonLinearGateError(f"{g.kind} is not a CNOT")
        control, target = g.qubits
        m[target] ^= m[control]
    return m


def cnot_circuit(n: int, steps) -> Circuit:
    return Circuit(n, [Gate("CNOT", (s.control, s.target)) for s in steps])
