"""Independent reference computations used to cross-check the main code paths.

Nothing here is used by the production paths it checks: symmetric-group
characters come from border-strip removal rather than polynomial
coefficients, and conjugacy classes come from brute-force conjugation.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .groups import FiniteGroup, Partition


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beads:
            continue
        height = sum(1 for c in beta if target < c < b)
        moved = tuple(sorted((beads - {b}) | {target}, reverse=True))
        total += (-1) ** height * _mn(moved, rest)
    return total


def murnaghan_nakayama(lam: Partition, mu: Partition) -> int:
    """chi_lambda(mu) by recursive rim-hook removal on the beta-set abacus."""
    if lam.total != mu.total:
        raise ValueError("partitions of different sizes")
    k = len(lam)
    beta = tuple(p + k - 1 - i for i, p in enumerate(lam.parts))
    return _mn(beta, mu.parts)


def brute_force_classes(group: FiniteGroup) -> list[frozenset]:
    """Conjugacy classes from explicit h g h^-1 orbits."""
    remaining = set(group.elements)
    out = []
    while remaining:
        g = next(iter(remaining))
        orbit = frozenset(
            group.multiply(group.multiply(h, g), group.inverse(h)) for h in group.elements
        )
        out.append(orbit)
        remaining -= orbit
    return out


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)
