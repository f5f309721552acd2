"""Shared container and helpers for the model Hamiltonians."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..groups import FiniteGroup
from ..reps import UnitaryRep
from ..simulator import RegisterLayout, exact_eigensystem, is_hermitian

RANK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ModelHamiltonian:
    H: np.ndarray = field(repr=False)
    layout: RegisterLayout
    group: FiniteGroup | None = None
    rep: UnitaryRep | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not is_hermitian(self.H):
            raise ValueError("model Hamiltonian is not hermitian")

    @property
    def dim(self) -> int:
        return self.H.shape[0]

    def spectrum(self) -> np.ndarray:
        return exact_eigensystem(self.H)[0]

    def symmetry_residual(self) -> float:
        """Largest commutator norm ||[H, rho(g)]|| over the declared group."""
        if self.group is None or self.rep is None:
            return 0.0
        return max(
            float(np.linalg.norm(self.H @ R - R @ self.H, 2))
            for R in (self.rep.matrix(g) for g in self.group.elements)
        )


def range_basis(P: np.ndarray) -> np.ndarray:
    """Orthonormal columns spanning the range of a hermitian projector."""
    evals, vecs = np.linalg.eigh(P)
    return vecs[:, evals > 0.5]


def numerical_rank(P: np.ndarray, tol: float = RANK_TOL) -> int:
    return int(np.sum(np.linalg.svd(P, compute_uv=False) > tol))


def restrict(H: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Matrix of ``H`` on range(P) in an orthonormal basis of that range."""
    B = range_basis(P)
    return B.conj().T @ H @ B


def block_spectra_union(H: np.ndarray, projectors) -> np.ndarray:
    parts = [np.linalg.eigvalsh(restrict(H, P)) for P in projectors if numerical_rank(P) > 0]
    return np.sort(np.concatenate(parts)) if parts else np.array([])
