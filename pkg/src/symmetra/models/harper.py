"""Harper-Hofstadter model on a 2^m x 2^m torus.

``H = Jx (U_b + U_b^dagger) + Jy (V_b + V_b^dagger)`` on registers ``x (x) y``.
``V_b`` carries the flux phase and shifts ``y``; plain ``y`` translations
commute with both terms, so a Fourier transform on ``y`` splits ``H`` into
``2^m`` one-dimensional blocks

``H_k = Jx (S + S^dagger) + diag(2 Jy cos(2 pi (x b - k / M)))``

with ``S`` the ring shift on ``x``.
"""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction

import numpy as np
from scipy.linalg import block_diag

from ..qct import qft_matrix
from ..reps import cyclic_shift_rep, embed_rep, magnetic_translation_reps
from ..simulator import RegisterLayout
from .base import ModelHamiltonian

MAX_QUBITS = 14


def parse_flux(b) -> float | Fraction:
    """Accept floats, Fractions, ``(p, q)`` pairs and ``"p/q"`` strings."""
    if isinstance(b, str):
        return Fraction(b) if "/" in b else float(b)
    if isinstance(b, tuple):
        return Fraction(int(b[0]), int(b[1]))
    return b


def _ring(M: int) -> np.ndarray:
    S = np.roll(np.eye(M), 1, axis=1)  # |x><x+1|
    return S + S.T


def harper_hamiltonian(m: int, b, Jx: float = 1.0, Jy: float = 1.0) -> ModelHamiltonian:
    if 2 * m > MAX_QUBITS:
        raise ValueError(f"Harper model limited to {MAX_QUBITS} qubits")
    b = parse_flux(b)
    U, V = magnetic_translation_reps(m, b)
    H = Jx * (U + U.conj().T) + Jy * (V + V.conj().T)
    rep = embed_rep(cyclic_shift_rep(m), before=m)
    return ModelHamiltonian(
        H,
        RegisterLayout.of(x=m, y=m),
        rep.group,
        rep,
        {"m": m, "b": str(b), "Jx": Jx, "Jy": Jy},
    )


def harper_momentum_blocks(m: int, b, Jx: float = 1.0, Jy: float = 1.0) -> list[np.ndarray]:
    M = 2**m
    b = float(parse_flux(b))
    x = np.arange(M)
    ring = Jx * _ring(M)
    return [ring + np.diag(2 * Jy * np.cos(2 * np.pi * (x * b - k / M))) for k in range(M)]


def fourier_y_conjugate(H: np.ndarray, m: int) -> np.ndarray:
    """``(I (x) F) H (I (x) F)^dagger`` reordered so ``k_y`` is the outer index."""
    M = 2**m
    W = np.kron(np.eye(M), qft_matrix(m))
    Ht = W @ H @ W.conj().T
    # (x, k) -> (k, x)
    order = np.arange(M * M).reshape(M, M).T.ravel()
    return Ht[np.ix_(order, order)]


def block_diagonalization_residual(m: int, b, Jx: float = 1.0, Jy: float = 1.0) -> float:
    model = harper_hamiltonian(m, b, Jx, Jy)
    target = block_diag(*harper_momentum_blocks(m, b, Jx, Jy))
    return float(np.max(np.abs(fourier_y_conjugate(model.H, m) - target)))


def harper_pseudospin_half(m: int, k_y: int, Jx: float = 1.0, Jy: float = 1.0) -> np.ndarray:
    """Dimerized two-site-cell form of the ``b = 1/2`` block ``H_{k_y}``.

    Cells ``n`` hold sites ``2n`` (up) and ``2n + 1`` (down). The on-site term
    is ``+eps`` on up and ``-eps`` on down with ``eps = 2 Jy cos(2 pi k_y / M)``;
    hopping ``Jx`` links up-down inside a cell and down to the next cell's up.
    """
    M = 2**m
    cells = M // 2
    eps = 2 * Jy * np.cos(2 * np.pi * k_y / M)
    sz = np.diag([1.0, -1.0])
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    raise_up = np.array([[0.0, 1.0], [0.0, 0.0]])  # |up><down|
    C = np.roll(np.eye(cells), 1, axis=0)  # |n+1><n|
    inter = Jx * np.kron(C, raise_up)
    H = eps * np.kron(np.eye(cells), sz) + Jx * np.kron(np.eye(cells), sx) + inter + inter.T
    return H.astype(complex)


def farey_fluxes(q_max: int) -> list[Fraction]:
    """Reduced fractions ``p/q`` in ``[0, 1]`` with ``q <= q_max``, ascending."""
    out = {Fraction(p, q) for q in range(1, q_max + 1) for p in range(q + 1) if math.gcd(p, q) == 1}
    return sorted(out)


def butterfly(m: int, q_max: int, Jx: float = 1.0, Jy: float = 1.0):
    """(b, sorted block eigenvalues, sorted full eigenvalues) per flux."""
    rows = []
    for b in farey_fluxes(q_max):
        blocks = np.sort(np.concatenate([np.linalg.eigvalsh(B) for B in harper_momentum_blocks(m, b, Jx, Jy)]))
        full = np.linalg.eigvalsh(harper_hamiltonian(m, b, Jx, Jy).H)
        rows.append((b, blocks, full))
    return rows


def butterfly_to_csv(rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["b", "E"])
    for b, blocks, _ in rows:
        for e in blocks:
            wr.writerow([repr(float(b)), repr(float(e))])
    return buf.getvalue()
