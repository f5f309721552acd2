"""Dense statevector engine.

States are 1-D complex numpy arrays of length 2^n and operators are 2-D
arrays; both are treated as immutable values (every function returns a new
array). Basis indexing is most-significant-bit first: qubit 0 is the leading
binary digit, so ``|v_1 v_2 ... v_m>`` has index ``v_1 2^{m-1} + ... + v_m``.

Registers are contiguous qubit ranges described by :class:`RegisterLayout`.
Operations on a register reshape the state to ``(before, register, after)``
and contract only the register axis; :func:`expand_operator` gives the
equivalent full Kronecker-product matrix for differential testing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

ATOL = 1e-10
MAX_OPERATOR_QUBITS = 16
MAX_STATE_QUBITS = 24


class DimensionError(ValueError):
    pass


class ZeroProbabilityError(ValueError):
    """Post-selection onto a branch whose probability is numerically zero."""


@dataclass(frozen=True)
class RegisterLayout:
    """Named contiguous registers; the first register holds qubit 0."""

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.registers]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate register names: {names}")
        if any(width < 0 for _, width in self.registers):
            raise ValueError("register widths must be non-negative")

    @classmethod
    def of(cls, **widths: int) -> "RegisterLayout":
        return cls(tuple(widths.items()))

    @property
    def n_qubits(self) -> int:
        return sum(width for _, width in self.registers)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.registers)

    def width(self, name: str) -> int:
        return dict(self.registers)[name]

    def qubits(self, name: str) -> range:
        start = 0
        for reg, width in self.registers:
            if reg == name:
                return range(start, start + width)
            start += width
        raise KeyError(name)

    def shape(self) -> tuple[int, ...]:
        return tuple(2**width for _, width in self.registers)

    def axis(self, name: str) -> int:
        return self.names.index(name)

    def _split(self, name: str) -> tuple[int, int, int]:
        q = self.qubits(name)
        return 2**q.start, 2 ** len(q), 2 ** (self.n_qubits - q.stop)


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def _check_state(state: np.ndarray, layout: RegisterLayout) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape != (layout.dim,):
        raise DimensionError(f"state of shape {state.shape} does not match {layout.dim} amplitudes")
    return state


def _check_op(op: np.ndarray, dim: int) -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.shape != (dim, dim):
        raise DimensionError(f"operator of shape {op.shape} does not act on dimension {dim}")
    return op


def is_unitary(op: np.ndarray, atol: float = ATOL) -> bool:
    op = np.asarray(op)
    return op.ndim == 2 and op.shape[0] == op.shape[1] and np.allclose(
        op.conj().T @ op, np.eye(op.shape[0]), atol=atol, rtol=0
    )


def is_hermitian(op: np.ndarray, atol: float = ATOL) -> bool:
    op = np.asarray(op)
    return op.ndim == 2 and op.shape[0] == op.shape[1] and np.allclose(op, op.conj().T, atol=atol, rtol=0)


def apply_operator(op: np.ndarray, state: np.ndarray, layout: RegisterLayout, target: str) -> np.ndarray:
    """Apply ``op`` to register ``target`` and the identity elsewhere."""
    state = _check_state(state, layout)
    before, width, after = layout._split(target)
    op = _check_op(op, width)
    psi = state.reshape(before, width, after)
    return np.einsum("ij,ajb->aib", op, psi).reshape(-1)


def expand_operator(op: np.ndarray, layout: RegisterLayout, target: str) -> np.ndarray:
    """Full-width matrix I (x) op (x) I for register ``target``."""
    before, width, after = layout._split(target)
    op = _check_op(op, width)
    if layout.n_qubits > MAX_OPERATOR_QUBITS:
        raise DimensionError(f"dense operators are capped at {MAX_OPERATOR_QUBITS} qubits")
    return np.kron(np.kron(np.eye(before), op), np.eye(after))


def controlled_apply(
    op: np.ndarray,
    state: np.ndarray,
    layout: RegisterLayout,
    control: str,
    index: int,
    target: str,
) -> np.ndarray:
    """Apply ``op`` on ``target`` only where register ``control`` reads ``index``."""
    state = _check_state(state, layout)
    if not 0 <= index < 2 ** layout.width(control):
        raise DimensionError(f"control index {index} does not fit register {control!r}")
    if control == target:
        raise ValueError("control and target registers must differ")
    psi = state.reshape(layout.shape()).copy()
    c_axis, t_axis = layout.axis(control), layout.axis(target)
    _check_op(op, psi.shape[t_axis])
    sl = [slice(None)] * psi.ndim
    sl[c_axis] = index
    block = psi[tuple(sl)]
    t_sub = t_axis if t_axis < c_axis else t_axis - 1
    block = np.moveaxis(np.tensordot(op, block, axes=([1], [t_sub])), 0, t_sub)
    psi[tuple(sl)] = block
    return psi.reshape(-1)


@dataclass(frozen=True, eq=False)
class PostSelectedState:
    """Normalized state with the cumulative post-selection probability."""

    state: np.ndarray
    probability: float

    def then(self, other: "PostSelectedState") -> "PostSelectedState":
        """Compose with a later post-selection applied to ``self.state``."""
        return PostSelectedState(other.state, self.probability * other.probability)

    def to_json(self) -> dict[str, Any]:
        return {"probability": float(self.probability), "state": state_to_json(self.state)}


def register_probabilities(state: np.ndarray, layout: RegisterLayout, register: str) -> np.ndarray:
    state = _check_state(state, layout)
    before, width, after = layout._split(register)
    return np.sum(np.abs(state.reshape(before, width, after)) ** 2, axis=(0, 2))


def measure_register(
    state: np.ndarray,
    layout: RegisterLayout,
    register: str,
    outcome: int,
    min_probability: float = 1e-14,
) -> PostSelectedState:
    """Project ``register`` onto ``|outcome>`` and renormalize."""
    state = _check_state(state, layout)
    before, width, after = layout._split(register)
    if not 0 <= outcome < width:
        raise DimensionError(f"outcome {outcome} does not fit register {register!r}")
    psi = state.reshape(before, width, after)
    projected = np.zeros_like(psi)
    projected[:, outcome, :] = psi[:, outcome, :]
    prob = float(np.sum(np.abs(projected) ** 2))
    if prob < min_probability:
        raise ZeroProbabilityError(
            f"outcome {outcome} on register {register!r} has probability {prob:.3e}"
        )
    return PostSelectedState(projected.reshape(-1) / np.sqrt(prob), prob)


def sample_register(
    state: np.ndarray,
    layout: RegisterLayout,
    register: str,
    shots: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Counts per outcome from ``shots`` seeded measurements of ``register``."""
    probs = register_probabilities(state, layout, register)
    probs = probs / probs.sum()
    return rng.multinomial(shots, probs)


def exact_eigensystem(op: np.ndarray, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and column eigenvectors of a hermitian matrix."""
    op = np.asarray(op, dtype=complex)
    if check and not is_hermitian(op):
        raise ValueError("exact_eigensystem requires a hermitian operator")
    return np.linalg.eigh(op)


def expectation(state: np.ndarray, op: np.ndarray) -> complex:
    state = np.asarray(state, dtype=complex)
    op = _check_op(op, state.shape[0])
    return complex(np.vdot(state, op @ state))


def kron_all(ops: Iterable[np.ndarray]) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


# single-qubit constants
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def single_qubit_op(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    return kron_all(op if q == qubit else I2 for q in range(n_qubits))


# ---------------------------------------------------------------------------
# JSON helpers: complex numbers are [re, im] pairs, matrices row-major


def complex_to_json(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def state_to_json(state: np.ndarray) -> list[list[float]]:
    return [complex_to_json(z) for z in np.asarray(state).ravel()]


def state_from_json(data: list) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=complex)


def operator_to_json(op: np.ndarray) -> list[list[list[float]]]:
    return [[complex_to_json(z) for z in row] for row in np.asarray(op)]


def operator_from_json(data: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)
