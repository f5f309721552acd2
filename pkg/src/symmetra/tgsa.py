"""Group-symmetry-adapted transform and isotypic projectors.

Circuit path
    Registers are ``anc (x) prep (x) sys``. ``anc`` indexes conjugacy
    classes (and, after the character transform, irreps); ``prep`` holds the
    LCU index over class members. SELECT applies, on ancilla value ``C``,
    ``PREP_C`` on ``prep``, ``rho(g_j)`` controlled on ``prep = j`` and then
    ``PREP_C^dagger``; post-selecting ``prep = 0`` leaves
    ``sum_C |C><C| (x) rho~(C)`` with ``rho~(C) = (1/|C|) sum_{g in C} rho(g)``.

Oracle path
    Dense matrices built straight from the group sum, used to check the
    circuit in tests.

With the trivial irrep loaded in the ancilla, the branch at irrep ``Gamma``
after ``QCT^dagger -> SELECT -> QCT`` is ``P^Gamma |psi> / d_Gamma`` with
``P^Gamma = (d_Gamma / |G|) sum_g chi_Gamma(g) rho(g)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .groups import ConjugacyClass, FiniteGroup
from .qct import build_qct, register_width
from .reps import UnitaryRep
from .simulator import (
    DimensionError,
    PostSelectedState,
    RegisterLayout,
    ZeroProbabilityError,
    complex_to_json,
    state_to_json,
)

ZERO_PROBABILITY = 1e-14


class NonAbelianError(ValueError):
    pass


def prepare_uniform(dim: int) -> np.ndarray:
    """Unitary on ``ceil(log2 dim)`` qubits sending |0> to the uniform state over ``dim`` entries.

    Built as the Householder reflection exchanging ``e_0`` and the target
    vector, so it is hermitian and reduces to the Hadamard for ``dim = 2``.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    size = 2 ** register_width(dim)
    target = np.zeros(size, dtype=complex)
    target[:dim] = 1 / np.sqrt(dim)
    w = -target
    w[0] += 1
    nrm = np.linalg.norm(w)
    if nrm < 1e-15:
        return np.eye(size, dtype=complex)
    w /= nrm
    return np.eye(size, dtype=complex) - 2 * np.outer(w, w.conj())


def _check_rep(group: FiniteGroup, rep: UnitaryRep):
    if rep.group.order != group.order or rep.group.table.class_labels != group.table.class_labels:
        raise ValueError(f"representation is of {rep.group.name}, not {group.name}")


def _max_class_size(group: FiniteGroup) -> int:
    return max(c.size for c in group.classes)


# ---------------------------------------------------------------------------
# class mixers


def class_mixer(rep: UnitaryRep, cls: ConjugacyClass) -> np.ndarray:
    """Dense ``rho~(C) = (1/|C|) sum_{g in C} rho(g)``."""
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for g in cls.members:
        out += rep.matrix(g)
    return out / cls.size


def _mixer_circuit(rep: UnitaryRep, cls: ConjugacyClass, block: np.ndarray, prep_dim: int) -> np.ndarray:
    """PREP, member SELECT and PREP^dagger on a (prep, sys) block; no post-selection."""
    P = prepare_uniform(cls.size)
    p = P.shape[0]
    lead = np.zeros((prep_dim, prep_dim), dtype=complex)
    lead[:p, :p] = P
    lead[p:, p:] = np.eye(prep_dim - p)
    block = lead @ block
    block = block.copy()
    for j, g in enumerate(cls.members):
        block[j] = rep.apply(g, block[j])
    return lead.conj().T @ block


def class_mixer_apply(rep: UnitaryRep, cls: ConjugacyClass, state: np.ndarray) -> PostSelectedState:
    """LCU realization of ``rho~(C)|psi>`` with post-selection on the prep register."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (rep.dim,):
        raise DimensionError(f"state has {state.shape[0]} amplitudes, representation acts on {rep.dim}")
    prep_dim = 2 ** register_width(cls.size)
    block = np.zeros((prep_dim, rep.dim), dtype=complex)
    block[0] = state
    out = _mixer_circuit(rep, cls, block, prep_dim)[0]
    prob = float(np.vdot(out, out).real)
    if prob < ZERO_PROBABILITY:
        raise ZeroProbabilityError(f"class {cls.label} annihilates the input state")
    return PostSelectedState(out / np.sqrt(prob), prob)


def class_mixer_apply_via_oracle(rep: UnitaryRep, cls: ConjugacyClass, state: np.ndarray) -> PostSelectedState:
    out = class_mixer(rep, cls) @ np.asarray(state, dtype=complex)
    prob = float(np.vdot(out, out).real)
    if prob < ZERO_PROBABILITY:
        raise ZeroProbabilityError(f"class {cls.label} annihilates the input state")
    return PostSelectedState(out / np.sqrt(prob), prob)


# ---------------------------------------------------------------------------
# SELECT


def _select_full(group: FiniteGroup, rep: UnitaryRep, joint: np.ndarray) -> np.ndarray:
    """SELECT on an (anc, sys) array with prep starting in |0>; returns (anc, prep, sys)."""
    n_anc_dim = joint.shape[0]
    prep_dim = 2 ** register_width(_max_class_size(group))
    out = np.zeros((n_anc_dim, prep_dim, rep.dim), dtype=complex)
    out[:, 0, :] = joint
    for c, cls in enumerate(group.classes[:n_anc_dim]):
        out[c] = _mixer_circuit(rep, cls, out[c], prep_dim)
    # indices beyond the class count are padding and pass through unchanged
    return out


def _select_unnormalized(group: FiniteGroup, rep: UnitaryRep, joint: np.ndarray) -> np.ndarray:
    """Apply SELECT to an (anc, sys) array and keep the prep = 0 slice."""
    return _select_full(group, rep, joint)[:, 0, :]


def select_over_classes(group: FiniteGroup, rep: UnitaryRep, joint_state: np.ndarray) -> PostSelectedState:
    """``sum_C |C><C| (x) rho~(C)`` on an ``anc (x) sys`` state, prep post-selected."""
    _check_rep(group, rep)
    joint_state = np.asarray(joint_state, dtype=complex)
    if joint_state.size % rep.dim:
        raise DimensionError("joint state is not anc (x) sys")
    n_anc_dim = joint_state.size // rep.dim
    if n_anc_dim < group.n_classes:
        raise DimensionError(f"ancilla of dimension {n_anc_dim} cannot index {group.n_classes} classes")
    out = _select_unnormalized(group, rep, joint_state.reshape(n_anc_dim, rep.dim)).reshape(-1)
    prob = float(np.vdot(out, out).real)
    if prob < ZERO_PROBABILITY:
        raise ZeroProbabilityError("SELECT post-selection has zero probability")
    return PostSelectedState(out / np.sqrt(prob), prob)


def select_matrix(group: FiniteGroup, rep: UnitaryRep, n_anc: int | None = None) -> np.ndarray:
    """Dense oracle for the post-selected SELECT block."""
    n_anc = register_width(group.n_classes) if n_anc is None else n_anc
    A = 2**n_anc
    out = np.zeros((A * rep.dim, A * rep.dim), dtype=complex)
    for c in range(A):
        sl = slice(c * rep.dim, (c + 1) * rep.dim)
        out[sl, sl] = class_mixer(rep, group.classes[c]) if c < group.n_classes else np.eye(rep.dim)
    return out


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True, eq=False)
class Branch:
    label: str
    probability: float
    amplitude: complex
    vector: np.ndarray = field(repr=False)  # unnormalized: amplitude * state

    @property
    def state(self) -> np.ndarray | None:
        if self.probability < ZERO_PROBABILITY:
            return None
        return self.vector / self.amplitude

    def to_json(self) -> dict[str, Any]:
        st = self.state
        return {
            "label": self.label,
            "probability": float(self.probability),
            "amplitude": complex_to_json(self.amplitude),
            "state": state_to_json(st) if st is not None else None,
        }


@dataclass(frozen=True, eq=False)
class TgsaOutcome:
    """Joint ``anc (x) sys`` state after the prep post-selection, split by irrep.

    ``joint_state`` is subnormalized: its squared norm is the probability of
    the prep register returning to zero.
    """

    group: str
    joint_state: np.ndarray = field(repr=False)
    branches: tuple[Branch, ...]

    def branch(self, label: str | int) -> Branch:
        if isinstance(label, (int, np.integer)):
            return self.branches[label]
        for b in self.branches:
            if b.label == label:
                return b
        raise KeyError(label)

    def postselect(self, label: str | int) -> PostSelectedState:
        b = self.branch(label)
        if b.probability < ZERO_PROBABILITY:
            raise ZeroProbabilityError(f"irrep {b.label} has zero weight")
        return PostSelectedState(b.state, b.probability)

    @property
    def total_probability(self) -> float:
        return float(sum(b.probability for b in self.branches))

    def to_json(self) -> dict[str, Any]:
        return {"group": self.group, "branches": [b.to_json() for b in self.branches]}


def _outcome(group: FiniteGroup, joint: np.ndarray) -> TgsaOutcome:
    branches = []
    for i, irrep in enumerate(group.irreps):
        vec = joint[i].copy()
        amp = float(np.linalg.norm(vec))
        branches.append(Branch(irrep.label, amp**2, complex(amp), vec))
    return TgsaOutcome(group.name, joint.reshape(-1), tuple(branches))


def _ancilla_input(group: FiniteGroup, anc_input, size: int) -> np.ndarray:
    if isinstance(anc_input, (str, int, np.integer)):
        vec = np.zeros(size, dtype=complex)
        vec[group.irrep_index(anc_input)] = 1
        return vec
    vec = np.asarray(anc_input, dtype=complex)
    if vec.shape != (size,):
        raise DimensionError(f"ancilla input needs {size} amplitudes")
    return vec


def tgsa_apply(group: FiniteGroup, rep: UnitaryRep, sys_state: np.ndarray, anc_input: Any = 0) -> TgsaOutcome:
    """``QCT^dagger -> SELECT -> QCT`` with the ancilla loaded from ``anc_input``.

    ``anc_input`` is an irrep label or index (default: the trivial irrep) or a
    raw ancilla amplitude vector.
    """
    _check_rep(group, rep)
    Q = build_qct(group).unitary
    A = Q.shape[0]
    psi = np.asarray(sys_state, dtype=complex)
    if psi.shape != (rep.dim,):
        raise DimensionError(f"system state has {psi.size} amplitudes, representation acts on {rep.dim}")
    anc = Q.conj().T @ _ancilla_input(group, anc_input, A)
    joint = np.outer(anc, psi)
    joint = _select_unnormalized(group, rep, joint)
    joint = Q @ joint
    return _outcome(group, joint)


def tgsa_circuit_state(
    group: FiniteGroup, rep: UnitaryRep, sys_state: np.ndarray, anc_input: Any = 0
) -> tuple[np.ndarray, RegisterLayout]:
    """Full ``anc (x) prep (x) sys`` state at the end of the transform, before any measurement."""
    _check_rep(group, rep)
    Q = build_qct(group).unitary
    psi = np.asarray(sys_state, dtype=complex)
    anc = Q.conj().T @ _ancilla_input(group, anc_input, Q.shape[0])
    full = _select_full(group, rep, np.outer(anc, psi))
    full = np.einsum("ij,jps->ips", Q, full)
    layout = RegisterLayout.of(
        anc=register_width(group.n_classes), prep=register_width(_max_class_size(group)), sys=rep.n_qubits
    )
    return full.reshape(-1), layout


def tgsa_oracle(group: FiniteGroup, rep: UnitaryRep, sys_state: np.ndarray, anc_input: Any = 0) -> TgsaOutcome:
    """Dense twin of :func:`tgsa_apply`.

    Branch ``Gamma'`` is ``sum_C QCT[Gamma', C] beta_C rho~(C)|psi>`` with
    ``beta = QCT^dagger alpha`` for ancilla input ``alpha``.
    """
    Q = build_qct(group).unitary
    A = Q.shape[0]
    psi = np.asarray(sys_state, dtype=complex)
    beta = Q.conj().T @ _ancilla_input(group, anc_input, A)
    mixed = np.stack(
        [class_mixer(rep, group.classes[c]) @ psi if c < group.n_classes else psi for c in range(A)]
    )
    joint = Q @ (beta[:, None] * mixed)
    return _outcome(group, joint)


# ---------------------------------------------------------------------------
# projectors


def projector_matrix(group: FiniteGroup, rep: UnitaryRep, irrep: str | int) -> np.ndarray:
    """``P^Gamma = (d_Gamma / |G|) sum_C chi_Gamma(C) sum_{g in C} rho(g)``."""
    i = group.irrep_index(irrep)
    d = group.irreps[i].dim
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for c, cls in enumerate(group.classes):
        out += group.table.chi[i, c] * cls.size * class_mixer(rep, cls)
    return out * d / group.order


def all_projectors(group: FiniteGroup, rep: UnitaryRep) -> list[np.ndarray]:
    return [projector_matrix(group, rep, i) for i in range(len(group.irreps))]


def project_and_postselect(group: FiniteGroup, rep: UnitaryRep, irrep: str | int, state: np.ndarray) -> PostSelectedState:
    """Run the transform with the trivial ancilla and keep the ``irrep`` outcome."""
    return tgsa_apply(group, rep, state).postselect(group.irrep_index(irrep))


def prepare_projection_abelian(group: FiniteGroup, rep: UnitaryRep, state: np.ndarray) -> TgsaOutcome:
    """Uniform PREPARE -> SELECT -> QCT for abelian groups.

    With every irrep one dimensional the uniform preparation already carries
    the correct weights, so branch ``Gamma`` holds ``P^Gamma |psi>`` with no
    dimension factor and unit normalization.
    """
    if not group.is_abelian:
        raise NonAbelianError(
            f"{group.name} is not abelian; the PREPARE weighting for higher-dimensional irreps is not defined here"
        )
    _check_rep(group, rep)
    Q = build_qct(group).unitary
    A = Q.shape[0]
    prep = prepare_uniform(group.n_classes)
    anc = np.zeros(A, dtype=complex)
    anc[: prep.shape[0]] = prep[:, 0]
    joint = np.outer(anc, np.asarray(state, dtype=complex))
    joint = _select_unnormalized(group, rep, joint)
    return _outcome(group, Q @ joint)


def sector_weights(group: FiniteGroup, rep: UnitaryRep, state: np.ndarray) -> np.ndarray:
    """``||P^Gamma psi||^2`` per irrep from the dense projectors."""
    psi = np.asarray(state, dtype=complex)
    return np.array([np.linalg.norm(P @ psi) ** 2 for P in all_projectors(group, rep)])


def trace_multiplicities(group: FiniteGroup, rep: UnitaryRep) -> np.ndarray:
    """``trace(P^Gamma) / d_Gamma`` per irrep; integers for a genuine representation."""
    return np.array(
        [np.trace(P).real / irrep.dim for P, irrep in zip(all_projectors(group, rep), group.irreps)]
    )


def labels(group: FiniteGroup) -> Sequence[str]:
    return [r.label for r in group.irreps]
