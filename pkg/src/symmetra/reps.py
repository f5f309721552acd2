"""Unitary representations of the finite groups on qubit registers.

Every representation in the catalog is monomial: each group element maps a
basis state to a single basis state times a phase. That form is stored as
``(perm, phase)`` arrays with ``rho(g)|i> = phase[i] |perm[i]>``, applied in
O(2^n) and turned into a dense matrix only on request.

Block permutations use the convention that content moves with the
permutation, ``rho(g)|x_1 ... x_N> = |x_{g^-1(1)} ... x_{g^-1(N)}>``, which
makes ``rho(g) rho(h) = rho(gh)`` under right-to-left composition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable

import numpy as np

from .groups import FiniteGroup, Permutation, cyclic_group, product_group, symmetric_group
from .simulator import MAX_STATE_QUBITS, DimensionError

EXHAUSTIVE_LIMIT = 64


@dataclass(frozen=True, eq=False)
class MonomialAction:
    """Basis permutation with phases: ``|i> -> phase[i] |perm[i]>``."""

    perm: np.ndarray
    phase: np.ndarray

    @classmethod
    def identity(cls, dim: int) -> "MonomialAction":
        return cls(np.arange(dim), np.ones(dim, dtype=complex))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Act on the last axis of ``psi``."""
        psi = np.asarray(psi, dtype=complex)
        if psi.shape[-1] != self.dim:
            raise DimensionError(f"action on {self.dim} amplitudes got {psi.shape[-1]}")
        out = np.empty_like(psi)
        out[..., self.perm] = psi * self.phase
        return out

    def compose(self, first: "MonomialAction") -> "MonomialAction":
        """``self`` after ``first``."""
        return MonomialAction(self.perm[first.perm], first.phase * self.phase[first.perm])

    def adjoint(self) -> "MonomialAction":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.dim)
        return MonomialAction(inv, np.conj(self.phase[inv]))

    def kron(self, other: "MonomialAction") -> "MonomialAction":
        perm = (self.perm[:, None] * other.dim + other.perm[None, :]).ravel()
        phase = np.outer(self.phase, other.phase).ravel()
        return MonomialAction(perm, phase)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        out[self.perm, np.arange(self.dim)] = self.phase
        return out

    def distance(self, other: "MonomialAction") -> float:
        """Largest column norm of ``self - other``."""
        same = self.perm == other.perm
        diff = np.where(same, np.abs(self.phase - other.phase), np.hypot(np.abs(self.phase), np.abs(other.phase)))
        return float(diff.max()) if diff.size else 0.0


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """``rho : G -> U(2^n)`` with cached per-element actions."""

    group: FiniteGroup
    n_qubits: int
    action_fn: Callable[[Hashable], MonomialAction] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        if self.n_qubits > MAX_STATE_QUBITS:
            raise DimensionError(f"representation on {self.n_qubits} qubits exceeds the simulator cap")
        object.__setattr__(self, "_cache", {})

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def action(self, g) -> MonomialAction:
        cache = self._cache
        if g not in cache:
            act = self.action_fn(g)
            if act.dim != self.dim:
                raise DimensionError(f"action of {g} has dimension {act.dim}, expected {self.dim}")
            cache[g] = act
        return cache[g]

    def apply(self, g, psi: np.ndarray) -> np.ndarray:
        return self.action(g).apply(psi)

    def matrix(self, g) -> np.ndarray:
        return self.action(g).dense()

    def __str__(self):
        return self.name or f"rep of {self.group.name} on {self.n_qubits} qubits"


def _bits(dim: int, n_qubits: int) -> np.ndarray:
    """(dim, n) array of binary digits, most significant first."""
    idx = np.arange(dim)
    return (idx[:, None] >> np.arange(n_qubits - 1, -1, -1)[None, :]) & 1


def _from_digits(digits: np.ndarray, base: int) -> np.ndarray:
    out = np.zeros(digits.shape[0], dtype=np.int64)
    for col in range(digits.shape[1]):
        out = out * base + digits[:, col]
    return out


def cyclic_shift_rep(m: int) -> UnitaryRep:
    """Z_{2^m} acting as ``|j> -> |j + v mod 2^m>``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    M = 2**m
    idx = np.arange(M)
    return UnitaryRep(
        cyclic_group(M),
        m,
        lambda v: MonomialAction((idx + v) % M, np.ones(M, dtype=complex)),
        name=f"shift on {m} qubits",
    )


def translation_rep(n_sites: int) -> UnitaryRep:
    """Z_N acting on N qubits by rotating the bit string one site to the left per step.

    ``rho(1)|b_1 b_2 ... b_N> = |b_2 ... b_N b_1>``.
    """
    if n_sites < 1:
        raise ValueError("need at least one site")
    dim = 2**n_sites
    bits = _bits(dim, n_sites)

    def act(v):
        shifted = np.roll(bits, -v, axis=1)
        return MonomialAction(_from_digits(shifted, 2), np.ones(dim, dtype=complex))

    return UnitaryRep(cyclic_group(n_sites), n_sites, act, name=f"translation on {n_sites} sites")


def parity_flip_rep(n_qubits: int) -> UnitaryRep:
    """Z_2 acting by the global bit flip X^{(x)N}."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    dim = 2**n_qubits
    idx = np.arange(dim)

    def act(s):
        perm = idx ^ (dim - 1) if s else idx
        return MonomialAction(perm, np.ones(dim, dtype=complex))

    return UnitaryRep(cyclic_group(2), n_qubits, act, name=f"parity flip on {n_qubits} qubits")


def _block_permutation_action(g: Permutation, n_blocks: int, width: int, positions) -> MonomialAction:
    """Permute the ``width``-qubit blocks listed in ``positions`` (0-based block slots)."""
    total = n_blocks * width
    dim = 2**total
    digits = _bits(dim, total)
    out = digits.copy()
    ginv = g.inverse()
    for j, pos in enumerate(positions):
        src = positions[ginv(j)]
        out[:, pos * width : (pos + 1) * width] = digits[:, src * width : (src + 1) * width]
    return MonomialAction(_from_digits(out, 2), np.ones(dim, dtype=complex))


def permutation_rep(n_blocks: int, block_width: int, group: FiniteGroup | None = None) -> UnitaryRep:
    """S_N permuting N blocks of ``block_width`` qubits."""
    if n_blocks * block_width > MAX_STATE_QUBITS:
        raise DimensionError(f"{n_blocks} blocks of {block_width} qubits exceed the simulator cap")
    group = group or symmetric_group(n_blocks)
    positions = list(range(n_blocks))
    return UnitaryRep(
        group,
        n_blocks * block_width,
        lambda g: _block_permutation_action(g, n_blocks, block_width, positions),
        name=f"S{n_blocks} on {n_blocks}x{block_width} qubits",
    )


def spin_only_permutation_rep(n_particles: int, spin_qubits: tuple[int, ...], n_qubits: int) -> UnitaryRep:
    """S_N permuting only the single-qubit spin labels at ``spin_qubits``.

    For two particles in the layout ``[orb1, spin1, orb2, spin2]`` pass
    ``spin_qubits=(1, 3)``.
    """
    if len(spin_qubits) != n_particles:
        raise ValueError("one spin qubit per particle is required")
    group = symmetric_group(n_particles)
    positions = list(spin_qubits)
    return UnitaryRep(
        group,
        n_qubits,
        lambda g: _block_permutation_action(g, n_qubits, 1, positions),
        name=f"spin-only S{n_particles}",
    )


def product_rep(rep1: UnitaryRep, rep2: UnitaryRep, shared: bool = False) -> UnitaryRep:
    """Representation of G1 x G2.

    With ``shared=False`` the factors act on separate registers (rep1 first);
    with ``shared=True`` both act on the same register and must commute.
    """
    group = product_group(rep1.group, rep2.group)
    if shared:
        if rep1.n_qubits != rep2.n_qubits:
            raise DimensionError("shared product needs equal widths")
        n = rep1.n_qubits
        act = lambda g: rep1.action(g[0]).compose(rep2.action(g[1]))  # noqa: E731
    else:
        n = rep1.n_qubits + rep2.n_qubits
        act = lambda g: rep1.action(g[0]).kron(rep2.action(g[1]))  # noqa: E731
    return UnitaryRep(group, n, act, name=f"({rep1}) x ({rep2})")


def embed_rep(rep: UnitaryRep, before: int = 0, after: int = 0) -> UnitaryRep:
    """Extend ``rep`` by identity on ``before`` leading and ``after`` trailing qubits."""
    lead, tail = MonomialAction.identity(2**before), MonomialAction.identity(2**after)
    return UnitaryRep(
        rep.group,
        before + rep.n_qubits + after,
        lambda g: lead.kron(rep.action(g)).kron(tail),
        name=f"{rep} embedded",
    )


# ---------------------------------------------------------------------------
# magnetic translations


def _as_rational(b) -> Fraction | None:
    if isinstance(b, Fraction):
        return b
    if isinstance(b, tuple):
        p, q = b
        return Fraction(int(p), int(q))
    if isinstance(b, (int, np.integer)):
        return Fraction(int(b))
    return None


def flux_phases(b, values: np.ndarray) -> np.ndarray:
    """``exp(2 pi i x b)`` for integer ``x``; exact reduction when ``b`` is rational."""
    values = np.asarray(values)
    frac = _as_rational(b)
    if frac is None:
        return np.exp(2j * np.pi * values * float(b))
    p, q = frac.numerator, frac.denominator
    turns = (values * p) % q
    out = np.exp(2j * np.pi * turns / q)
    # land exactly on the axes where possible
    for num, val in ((0, 1), (q / 2, -1), (q / 4, 1j), (3 * q / 4, -1j)):
        out = np.where(turns == num, val, out)
    return out


def magnetic_translation_actions(m: int, b) -> tuple[MonomialAction, MonomialAction]:
    M = 2**m
    x = np.arange(M)
    ones = np.ones(M, dtype=complex)
    down = MonomialAction((x - 1) % M, ones)  # sum_x |x><x+1|
    U = down.kron(MonomialAction.identity(M))
    V = MonomialAction(x, flux_phases(b, x)).kron(down)
    return U, V


def magnetic_translation_reps(m: int, b) -> tuple[np.ndarray, np.ndarray]:
    """Dense ``(U_b, V_b)`` on registers ``x (x) y`` of ``m`` qubits each.

    ``U_b = sum_x |x><x+1| (x) I`` and
    ``V_b = sum_x e^{2 pi i x b} |x><x| (x) sum_y |y><y+1|``. ``b`` may be a
    float, a :class:`fractions.Fraction` or a ``(p, q)`` pair.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    U, V = magnetic_translation_actions(m, b)
    return U.dense(), V.dense()


# ---------------------------------------------------------------------------
# checks


def verify_homomorphism(rep: UnitaryRep, samples: int = 200, seed: int = 0) -> float:
    """max over pairs of the largest column norm of rho(g)rho(h) - rho(gh).

    Exhaustive when |G| <= 64, otherwise ``samples`` seeded random pairs.
    """
    G = rep.group
    if G.order <= EXHAUSTIVE_LIMIT:
        pairs: Any = itertools.product(G.elements, repeat=2)
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, G.order, size=(samples, 2))
        pairs = ((G.elements[i], G.elements[j]) for i, j in idx)
    worst = 0.0
    for g, h in pairs:
        lhs = rep.action(g).compose(rep.action(h))
        worst = max(worst, lhs.distance(rep.action(G.multiply(g, h))))
    return worst


def verify_inverse_adjoint(rep: UnitaryRep) -> float:
    G = rep.group
    return max(rep.action(G.inverse(g)).distance(rep.action(g).adjoint()) for g in G.elements)
