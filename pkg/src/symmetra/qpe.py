"""Phase estimation and its symmetry-adapted composition.

Ancilla qubit ``l`` (most significant first) controls ``U^{2^{n-1-l}}``,
so after the controlled powers the ancilla value ``v`` carries ``U^v |psi>``;
the inverse transform then maps eigenphase ``phi`` to a peak at
``u = phi 2^n``.

Energies are mapped to phases through ``U = exp(2 pi i s (H - E_min))`` with
``s = (1 - 2^-n) / (E_max - E_min + eps)``, so every eigenphase lies in
``[0, 1 - 2^-n)`` and nothing aliases across the wrap.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup
from .qct import qft_matrix
from .reps import UnitaryRep
from .simulator import exact_eigensystem, is_hermitian, is_unitary
from .tgsa import tgsa_apply

CALIBRATION_PAD = 1e-6
SYMMETRY_TOL = 1e-8


class SymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class Calibration:
    e_min: float
    scale: float
    convention: str = "U = exp(+2 pi i s (H - E_min))"

    @classmethod
    def for_spectrum(cls, e_min: float, e_max: float, n: int, pad: float = CALIBRATION_PAD) -> "Calibration":
        return cls(float(e_min), (1 - 2.0**-n) / (e_max - e_min + pad))

    @classmethod
    def for_hamiltonian(cls, H: np.ndarray, n: int) -> "Calibration":
        evals, _ = exact_eigensystem(H)
        return cls.for_spectrum(evals[0], evals[-1], n)

    def bin_width(self, n: int) -> float:
        """Energy spacing between neighboring outcomes."""
        return 2.0**-n / self.scale


def phase_to_energy(u, n: int, calibration: Calibration):
    return calibration.e_min + (np.asarray(u) / 2**n) / calibration.scale


def evolution_operator(H: np.ndarray, calibration: Calibration) -> np.ndarray:
    evals, vecs = exact_eigensystem(H)
    phases = np.exp(2j * np.pi * calibration.scale * (evals - calibration.e_min))
    return (vecs * phases) @ vecs.conj().T


@dataclass(frozen=True, eq=False)
class PhaseDistribution:
    """Joint probabilities ``probabilities[branch, u]``.

    Plain phase estimation has a single unlabeled branch. Symmetry-adapted
    runs have one row per irrep, weighted by that irrep's post-selection
    probability, so the full array sums to the total success probability.
    """

    n: int
    probabilities: np.ndarray = field(repr=False)
    labels: tuple[str, ...] = ("",)
    calibration: Calibration | None = None

    @property
    def branch_probabilities(self) -> np.ndarray:
        return self.probabilities.sum(axis=1)

    def _row(self, label) -> int:
        return label if isinstance(label, (int, np.integer)) else self.labels.index(label)

    def conditional(self, label=0) -> np.ndarray:
        row = self.probabilities[self._row(label)]
        total = row.sum()
        if total <= 0:
            raise ValueError(f"branch {label!r} has zero probability")
        return row / total

    def peak(self, label=0) -> int:
        return int(np.argmax(self.probabilities[self._row(label)]))

    def peak_energy(self, label=0) -> float:
        if self.calibration is None:
            raise ValueError("distribution carries no energy calibration")
        return float(phase_to_energy(self.peak(label), self.n, self.calibration))

    def energies(self) -> np.ndarray:
        u = np.arange(2**self.n)
        if self.calibration is None:
            return np.full(u.shape, np.nan)
        return phase_to_energy(u, self.n, self.calibration)

    def rows(self):
        energies = self.energies()
        for b, label in enumerate(self.labels):
            for u in range(2**self.n):
                yield label, u, float(self.probabilities[b, u]), float(energies[u])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["irrep_label", "u", "probability", "energy"])
        for label, u, p, e in self.rows():
            w.writerow([label, u, repr(p), "" if np.isnan(e) else repr(e)])
        return buf.getvalue()


def _qpe_amplitudes(U: np.ndarray, psi: np.ndarray, n: int) -> np.ndarray:
    """(2^n, dim) joint amplitudes after the inverse transform."""
    M = 2**n
    rows = np.tile(psi, (M, 1)) / np.sqrt(M)
    power = U
    v = np.arange(M)
    # ancilla qubit l carries weight 2^(n-1-l); iterate weights from 1 upward
    for j in range(n):
        mask = (v >> j) & 1 == 1
        rows[mask] = rows[mask] @ power.T
        if j < n - 1:
            power = power @ power
    return qft_matrix(n).conj().T @ rows


def qpe(U: np.ndarray, state: np.ndarray, n: int) -> PhaseDistribution:
    if n < 1:
        raise ValueError("need at least one ancilla")
    U = np.asarray(U, dtype=complex)
    if not is_unitary(U):
        raise ValueError("phase estimation requires a unitary")
    psi = np.asarray(state, dtype=complex)
    amps = _qpe_amplitudes(U, psi, n)
    probs = np.sum(np.abs(amps) ** 2, axis=1)
    return PhaseDistribution(n, probs[None, :])


def check_symmetry(group: FiniteGroup, rep: UnitaryRep, H: np.ndarray, tol: float = SYMMETRY_TOL) -> float:
    worst = 0.0
    for g in group.elements:
        R = rep.matrix(g)
        err = float(np.linalg.norm(H @ R - R @ H, 2))
        if err > tol:
            raise SymmetryError(f"Hamiltonian does not commute with rho({g}): commutator norm {err:.3e}")
        worst = max(worst, err)
    return worst


def sqpe(
    group: FiniteGroup,
    rep: UnitaryRep,
    H: np.ndarray,
    state: np.ndarray,
    n: int,
    anc_input=0,
    calibration: Calibration | None = None,
) -> PhaseDistribution:
    """Symmetry-adapted transform followed by phase estimation on every irrep branch."""
    H = np.asarray(H, dtype=complex)
    if not is_hermitian(H):
        raise ValueError("Hamiltonian is not hermitian")
    check_symmetry(group, rep, H)
    cal = calibration or Calibration.for_hamiltonian(H, n)
    U = evolution_operator(H, cal)
    outcome = tgsa_apply(group, rep, state, anc_input)
    probs = np.zeros((len(outcome.branches), 2**n))
    for b, branch in enumerate(outcome.branches):
        if branch.state is None:
            continue
        amps = _qpe_amplitudes(U, branch.state, n)
        probs[b] = branch.probability * np.sum(np.abs(amps) ** 2, axis=1)
    return PhaseDistribution(n, probs, tuple(b.label for b in outcome.branches), cal)
