"""Periodic Ising chain with transverse and longitudinal fields.

``H = - sum_j a_j X_j - J sum_j Z_j Z_{j+1} - sum_j w_j Z_j`` with
``Z_{N+1} = Z_1``. Translations and the global spin flip generate
``Z_N x Z_2``; the flip is broken by any nonzero ``w``.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from ..groups import FiniteGroup
from ..reps import UnitaryRep, parity_flip_rep, product_rep, translation_rep
from ..simulator import RegisterLayout, X, single_qubit_op
from ..tgsa import projector_matrix
from .base import ModelHamiltonian, restrict

MAX_SITES = 12


def ising_symmetry(n_sites: int) -> tuple[FiniteGroup, UnitaryRep]:
    rep = product_rep(translation_rep(n_sites), parity_flip_rep(n_sites), shared=True)
    return rep.group, rep


def _zz_diagonal(n: int) -> np.ndarray:
    bits = (np.arange(2**n)[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1
    return 1 - 2 * bits  # Z eigenvalue per site


def ising_hamiltonian(n_sites: int, a, w, J: float = 1.0) -> ModelHamiltonian:
    if not 1 <= n_sites <= MAX_SITES:
        raise ValueError(f"Ising chain limited to 1..{MAX_SITES} sites")
    a = np.broadcast_to(np.asarray(a, dtype=float), (n_sites,))
    w = np.broadcast_to(np.asarray(w, dtype=float), (n_sites,))
    z = _zz_diagonal(n_sites)
    bonds = sum(z[:, j] * z[:, (j + 1) % n_sites] for j in range(n_sites))
    diag = -J * bonds - z @ w
    H = np.diag(diag.astype(complex))
    for j in range(n_sites):
        if a[j]:
            H -= a[j] * single_qubit_op(X, j, n_sites)
    group, rep = ising_symmetry(n_sites)
    return ModelHamiltonian(
        H,
        RegisterLayout.of(sys=n_sites),
        group,
        rep,
        {"N": n_sites, "a": a.tolist(), "w": w.tolist(), "J": float(J)},
    )


def longitudinal_term(w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    n = len(w)
    return np.diag((_zz_diagonal(n) @ w).astype(complex))


def ising_symmetry_projectors(n_sites: int) -> dict[tuple[int, int], np.ndarray]:
    """``P^{k, sigma}`` keyed by momentum index and parity index."""
    group, rep = ising_symmetry(n_sites)
    out = {}
    for i, irrep in enumerate(group.irreps):
        k, s = divmod(i, 2)
        out[(k, s)] = projector_matrix(group, rep, irrep.label)
    return out


def momentum_projector(n_sites: int, k: int) -> np.ndarray:
    """``R_k = (1/N) sum_v exp(2 pi i k v / N) T^v`` built directly from the bit rotation."""
    rep = translation_rep(n_sites)
    out = sum(np.exp(2j * np.pi * k * v / n_sites) * rep.matrix(v) for v in range(n_sites))
    return out / n_sites


def parity_projector(n_sites: int, sigma: int) -> np.ndarray:
    Q = parity_flip_rep(n_sites).matrix(1)
    return (np.eye(2**n_sites) + (-1) ** sigma * Q) / 2


def ising_projected_block(H: np.ndarray, P: np.ndarray) -> np.ndarray:
    """``P^dagger H P`` on the full space."""
    return P.conj().T @ H @ P


def ising_block_spectra(model: ModelHamiltonian) -> dict[tuple[int, int], np.ndarray]:
    projs = ising_symmetry_projectors(model.params["N"])
    return {key: np.linalg.eigvalsh(restrict(model.H, P)) for key, P in projs.items()}


def blocks_to_csv(blocks: dict[tuple[int, int], np.ndarray]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["k", "sigma", "E"])
    for (k, s), evals in sorted(blocks.items()):
        for e in evals:
            wr.writerow([k, s, repr(float(e))])
    return buf.getvalue()
