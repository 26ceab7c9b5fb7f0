"""Quantum channels in Kraus form, gates, circuits and noisy compilation.

Tensor conventions match densmat: qubit 0 is the leftmost, most significant
factor, so the basis index of a bitstring is int(bits, 2).

``compile_noisy`` never materializes the per-gate Kraus product (which grows
exponentially in the gate count).  It evolves the full matrix-unit basis
through the circuit, interleaving unitary conjugations with the analytic
action of depolarizing noise, then reads the channel off its Choi matrix.
Any channel on dimension d has a Kraus representation with at most d**2
operators, and that is what the eigendecomposition of the Choi matrix
returns.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field

import numpy as np

from .densmat import (
    DensityMatrix,
    EIGENVALUE_ZERO_TOL,
    MAX_DIM,
    VALIDATION_TOL,
    _as_square_matrix,
)
from .errors import (
    BadStrengthError,
    CircuitError,
    ConfigError,
    DimensionMismatchError,
    KrausExplosionError,
    NotUnitaryError,
)

# compose() refuses to build a Kraus family larger than this.
KRAUS_CAP = 4 ** 16

MAX_QUBITS = 8

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_GATE_TABLE: dict[str, np.ndarray] = {
    "I": _PAULI["I"],
    "X": _PAULI["X"],
    "Y": _PAULI["Y"],
    "Z": _PAULI["Z"],
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


def _unitarity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive trace-preserving map given by Kraus operators.

    Completeness sum(K+ K) = I must hold within Frobenius norm 1e-9 on the
    input dimension.  Operators may be rectangular (dim_out x dim_in) but
    must all share one shape.
    """

    kraus_ops: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.kraus_ops) == 0:
            raise DimensionMismatchError("a channel needs at least one Kraus operator")
        ops = []
        shape = None
        for k in self.kraus_ops:
            m = np.asarray(k, dtype=complex)
            if m.ndim != 2:
                raise DimensionMismatchError("Kraus operators must be 2-d matrices")
            if shape is None:
                shape = m.shape
            elif m.shape != shape:
                raise DimensionMismatchError(
                    f"Kraus shapes differ: {m.shape} vs {shape}"
                )
            ops.append(m)
        if max(shape) > MAX_DIM:
            raise DimensionMismatchError(
                f"Kraus dimension {max(shape)} exceeds the cap {MAX_DIM}"
            )
        total = sum(m.conj().T @ m for m in ops)
        defect = float(np.linalg.norm(total - np.eye(shape[1])))
        if defect > VALIDATION_TOL:
            raise NotUnitaryError(
                f"completeness defect {defect:.3e} exceeds {VALIDATION_TOL:.0e} "
                "(sum K+K != I)"
            )
        frozen = []
        for m in ops:
            c = m.copy()
            c.flags.writeable = False
            frozen.append(c)
        object.__setattr__(self, "kraus_ops", tuple(frozen))

    @property
    def dim_in(self) -> int:
        return self.kraus_ops[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.kraus_ops[0].shape[0]


@dataclass(frozen=True)
class Gate:
    """One circuit element: either a named gate or an explicit unitary.

    targets lists the qubits the gate acts on, in the gate's own factor
    order (for CNOT the first target is the control).
    """

    targets: tuple[int, ...]
    name: str | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) == 0:
            raise CircuitError("gate needs at least one target")
        if len(set(targets)) != len(targets):
            raise CircuitError(f"duplicate targets {targets}")
        if any(t < 0 for t in targets):
            raise CircuitError(f"negative target in {targets}")
        if (self.name is None) == (self.matrix is None):
            raise CircuitError("specify exactly one of name or matrix")
        if self.name is not None:
            if self.name not in _GATE_TABLE:
                raise CircuitError(
                    f"unknown gate {self.name!r}; known: {sorted(_GATE_TABLE)}"
                )
            arity = _GATE_TABLE[self.name].shape[0].bit_length() - 1
            if arity != len(targets):
                raise CircuitError(
                    f"gate {self.name} acts on {arity} qubit(s), got {len(targets)} targets"
                )
        else:
            m = _as_square_matrix(self.matrix)
            want = 2 ** len(targets)
            if m.shape[0] != want:
                raise CircuitError(
                    f"matrix dim {m.shape[0]} does not match 2**{len(targets)} targets"
                )
            defect = _unitarity_defect(m)
            if defect > VALIDATION_TOL:
                raise NotUnitaryError(
                    f"gate matrix unitarity defect {defect:.3e} exceeds {VALIDATION_TOL:.0e}"
                )
            c = m.copy()
            c.flags.writeable = False
            object.__setattr__(self, "matrix", c)

    def unitary(self) -> np.ndarray:
        return _GATE_TABLE[self.name] if self.name is not None else self.matrix


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not (1 <= self.num_qubits <= MAX_QUBITS):
            raise CircuitError(
                f"num_qubits {self.num_qubits} outside [1, {MAX_QUBITS}]"
            )
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if not isinstance(g, Gate):
                raise CircuitError("gates must be Gate instances")
            if max(g.targets) >= self.num_qubits:
                raise CircuitError(
                    f"target {max(g.targets)} out of range for {self.num_qubits} qubits"
                )

    @property
    def dim(self) -> int:
        return 2 ** self.num_qubits


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate noise: kind 'none', or 'depolarizing' with strength in [0, 1]."""

    kind: str
    strength: float = 0.0

    def __post_init__(self):
        if self.kind not in ("none", "depolarizing"):
            raise BadStrengthError(f"unknown noise kind {self.kind!r}")
        s = float(self.strength)
        if not (0.0 <= s <= 1.0):
            raise BadStrengthError(f"strength {s} outside [0, 1]")
        if self.kind == "none" and s != 0.0:
            raise BadStrengthError("noise kind 'none' must have strength 0")
        object.__setattr__(self, "strength", s)


def depolarizing(strength: float, num_qubits: int = 1) -> KrausChannel:
    """Depolarizing channel rho -> (1-s) rho + s tr(rho) I/d on num_qubits.

    Kraus family: sqrt(1 - s + s/d**2) I together with sqrt(s)/d P for every
    nontrivial Pauli string P.
    """
    s = float(strength)
    if not (0.0 <= s <= 1.0):
        raise BadStrengthError(f"strength {s} outside [0, 1]")
    if not (1 <= num_qubits <= MAX_QUBITS):
        raise DimensionMismatchError(
            f"num_qubits {num_qubits} outside [1, {MAX_QUBITS}]"
        )
    d = 2 ** num_qubits
    ops = [np.sqrt(1.0 - s + s / d ** 2) * np.eye(d, dtype=complex)]
    coeff = np.sqrt(s) / d
    if s > 0.0:
        for labels in itertools.product("IXYZ", repeat=num_qubits):
            if all(c == "I" for c in labels):
                continue
            p = _PAULI[labels[0]]
            for c in labels[1:]:
                p = np.kron(p, _PAULI[c])
            ops.append(coeff * p)
    return KrausChannel(tuple(ops))


def unitary_channel(u) -> KrausChannel:
    """The channel rho -> U rho U+ for a unitary U."""
    m = _as_square_matrix(u)
    defect = _unitarity_defect(m)
    if defect > VALIDATION_TOL:
        raise NotUnitaryError(f"unitarity defect {defect:.3e} exceeds {VALIDATION_TOL:.0e}")
    return KrausChannel((m,))


def compose(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """Channel running `first`, then `second` (i.e. second o first).

    Raises KrausExplosionError if the product family would exceed KRAUS_CAP.
    """
    if second.dim_in != first.dim_out:
        raise DimensionMismatchError(
            f"cannot chain: first outputs dim {first.dim_out}, "
            f"second expects dim {second.dim_in}"
        )
    n_ops = len(first.kraus_ops) * len(second.kraus_ops)
    if n_ops > KRAUS_CAP:
        raise KrausExplosionError(
            f"composition would need {n_ops} Kraus operators (cap {KRAUS_CAP})"
        )
    ops = tuple(
        k2 @ k1 for k2 in second.kraus_ops for k1 in first.kraus_ops
    )
    return KrausChannel(ops)


def apply(chan: KrausChannel, state: DensityMatrix) -> DensityMatrix:
    """Apply the channel: sum_k K rho K+.  Output is validated as a state."""
    if chan.dim_in != state.dim:
        raise DimensionMismatchError(
            f"channel expects dim {chan.dim_in}, state has dim {state.dim}"
        )
    ops = np.stack(chan.kraus_ops)
    out = np.einsum("kab,bc,kdc->ad", ops, state.entries, ops.conj())
    return DensityMatrix(out)


def _embed_unitary(g: np.ndarray, targets: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Expand a k-qubit unitary to the full register, acting on `targets`.

    Factor order inside g follows the order of `targets`, so CNOT on
    targets (1, 0) has its control on qubit 1.
    """
    k = len(targets)
    n = num_qubits
    d = 2 ** n
    gt = g.reshape((2,) * (2 * k))
    ident = np.eye(d, dtype=complex).reshape((2,) * (2 * n))
    # contract gate input axes with the row axes of the identity at `targets`
    out = np.tensordot(gt, ident, axes=(tuple(range(k, 2 * k)), targets))
    # axes now: k gate outputs (targets order), n-k untouched row axes
    # (ascending), n column axes; restore row axes to qubit order
    rest = [q for q in range(n) if q not in targets]
    perm = []
    for q in range(n):
        if q in targets:
            perm.append(targets.index(q))
        else:
            perm.append(k + rest.index(q))
    perm += [n + j for j in range(n)]
    return out.transpose(perm).reshape(d, d)


def _depolarize_stack(
    stack: np.ndarray, targets: tuple[int, ...], num_qubits: int, strength: float
) -> np.ndarray:
    """Apply depolarizing noise on `targets` to a batch of operators.

    Uses the closed form (1-s) M + s (tr_T M) (x) I_T / d_T on each matrix
    of the batch, with the identity re-inserted at the target positions.
    """
    if strength == 0.0:
        return stack
    n = num_qubits
    k = len(targets)
    m = stack.shape[0]
    d = 2 ** n
    letters = string.ascii_letters
    batch = letters[2 * n]
    rows = [letters[q] for q in range(n)]
    cols = [letters[n + q] for q in range(n)]
    t = np.asarray(stack).reshape((m,) + (2,) * n + (2,) * n)
    # trace over target row/col pairs by repeating the row letter
    in_sub = batch + "".join(rows) + "".join(
        rows[q] if q in targets else cols[q] for q in range(n)
    )
    kept_rows = [rows[q] for q in range(n) if q not in targets]
    kept_cols = [cols[q] for q in range(n) if q not in targets]
    out_sub = batch + "".join(kept_rows) + "".join(kept_cols)
    reduced = np.einsum(f"{in_sub}->{out_sub}", t)
    # re-insert I/2 on each traced qubit
    eye_half = np.eye(2) / 2.0
    id_subs = [f"{rows[q]}{cols[q]}" for q in targets]
    expand_sub = (
        out_sub + "," + ",".join(id_subs) + "->" + batch + "".join(rows) + "".join(cols)
    )
    expanded = np.einsum(expand_sub, reduced, *([eye_half] * k)).reshape(m, d, d)
    return (1.0 - strength) * stack + strength * expanded


def compile_ideal(circ: Circuit) -> KrausChannel:
    """Compose the circuit's gates into one unitary channel on the register."""
    d = circ.dim
    u = np.eye(d, dtype=complex)
    for g in circ.gates:
        u = _embed_unitary(g.unitary(), g.targets, circ.num_qubits) @ u
    return unitary_channel(u)


def compile_noisy(circ: Circuit, noise: NoiseModel) -> KrausChannel:
    """Compile the circuit with per-gate noise into a compact Kraus channel.

    After every gate the noise channel acts on that gate's targets.  The
    result carries at most dim**2 Kraus operators regardless of gate count.
    With noise kind 'none' (or zero strength) this is exactly compile_ideal.
    """
    if noise.kind == "none" or noise.strength == 0.0 or not circ.gates:
        return compile_ideal(circ)
    n = circ.num_qubits
    d = circ.dim
    # evolve the matrix units E_ij; row m = i*d + j of the identity
    stack = np.eye(d * d, dtype=complex).reshape(d * d, d, d)
    for g in circ.gates:
        u = _embed_unitary(g.unitary(), g.targets, n)
        stack = u @ stack @ u.conj().T
        stack = _depolarize_stack(stack, g.targets, n, noise.strength)
    # Choi matrix with row index (i, a), column index (j, b)
    choi = stack.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    choi = (choi + choi.conj().T) / 2.0
    w, v = np.linalg.eigh(choi)
    ops = []
    for idx in range(d * d):
        if w[idx] > EIGENVALUE_ZERO_TOL:
            ops.append(np.sqrt(w[idx]) * v[:, idx].reshape(d, d).T)
    return KrausChannel(tuple(ops))


def gate_count(circ: Circuit) -> int:
    return len(circ.gates)


def _complex_from_json(entry) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if (
        isinstance(entry, list)
        and len(entry) == 2
        and all(isinstance(x, (int, float)) for x in entry)
    ):
        return complex(entry[0], entry[1])
    raise ConfigError(f"matrix entry {entry!r} is neither a number nor [re, im]")


def circuit_from_json(obj: dict) -> Circuit:
    """Build a Circuit from its JSON object form.

    Schema: {"num_qubits": n, "gates": [{"name": "H", "targets": [0]} or
    {"matrix": [[...]], "targets": [0, 1]}, ...]}.  Matrix entries are
    numbers or [re, im] pairs.
    """
    if not isinstance(obj, dict):
        raise ConfigError("circuit must be a JSON object")
    if "num_qubits" not in obj or not isinstance(obj["num_qubits"], int):
        raise ConfigError('circuit needs an integer "num_qubits" field')
    raw_gates = obj.get("gates", [])
    if not isinstance(raw_gates, list):
        raise ConfigError('"gates" must be a list')
    gates = []
    for i, g in enumerate(raw_gates):
        if not isinstance(g, dict):
            raise ConfigError(f"gate {i} must be an object")
        if "targets" not in g or not isinstance(g["targets"], list):
            raise ConfigError(f'gate {i} needs a "targets" list')
        targets = tuple(g["targets"])
        if not all(isinstance(t, int) for t in targets):
            raise ConfigError(f"gate {i} targets must be integers")
        has_name = "name" in g
        has_matrix = "matrix" in g
        if has_name == has_matrix:
            raise ConfigError(f'gate {i} needs exactly one of "name" or "matrix"')
        if has_name:
            if not isinstance(g["name"], str):
                raise ConfigError(f"gate {i} name must be a string")
            gates.append(Gate(targets=targets, name=g["name"]))
        else:
            rows = g["matrix"]
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise ConfigError(f"gate {i} matrix must be a list of rows")
            mat = np.array(
                [[_complex_from_json(e) for e in row] for row in rows], dtype=complex
            )
            gates.append(Gate(targets=targets, matrix=mat))
    return Circuit(num_qubits=obj["num_qubits"], gates=tuple(gates))
