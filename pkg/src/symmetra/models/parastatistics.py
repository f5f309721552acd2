"""Three identical particles with d single-particle states.

Each particle owns a ``ceil(log2 d)``-qubit block; S_3 permutes the blocks.
When ``d`` is not a power of two the projectors are compressed onto the
span of basis states whose block values are all below ``d``.
"""
from __future__ import annotations

import numpy as np

from ..groups import symmetric_group
from ..qct import register_width
from ..reps import permutation_rep
from ..tgsa import projector_matrix
from .base import numerical_rank


def physical_indices(d: int) -> np.ndarray:
    w = max(1, register_width(d))
    B = 2**w
    idx = np.arange(B**3)
    digits = np.stack([(idx // B**2) % B, (idx // B) % B, idx % B], axis=1)
    return idx[np.all(digits < d, axis=1)]


def three_particle_projectors(d: int) -> dict[str, np.ndarray]:
    """S_3 isotypic projectors keyed by partition label, on the d^3 physical states."""
    if d < 1:
        raise ValueError("d must be >= 1")
    w = max(1, register_width(d))
    S3 = symmetric_group(3)
    rep = permutation_rep(3, w)
    keep = physical_indices(d)
    return {
        irrep.label: projector_matrix(S3, rep, irrep.label)[np.ix_(keep, keep)] for irrep in S3.irreps
    }


def three_particle_ranks(d: int) -> dict[str, int]:
    return {label: numerical_rank(P) for label, P in three_particle_projectors(d).items()}
