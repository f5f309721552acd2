"""Finite groups used by the symmetry engine.

Three families are supported: cyclic groups Z_M, symmetric groups S_N (up to a
configurable size cap) and direct products of any two supported groups. Every
group is enumerated densely; conjugacy classes and characters are computed
exactly.

Ordering conventions (fixed so that matrices and file outputs are stable):

* cyclic classes/irreps: by value ``v`` / label ``k``;
* symmetric classes: cycle types in ascending lexicographic order, so the
  identity class ``(1, ..., 1)`` comes first and the N-cycle last;
* symmetric irreps: by dimension, ties broken by descending partition, so the
  trivial irrep comes first and the sign irrep second;
* product classes/irreps: lexicographic on the factor indices.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Hashable, Sequence

import numpy as np

SYMMETRIC_GROUP_CAP = 6


class GroupSizeError(ValueError):
    """Raised when a requested group exceeds the dense-enumeration cap."""


# ---------------------------------------------------------------------------
# Partitions and permutations


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing sequence of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts!r}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in descending lexicographic order."""
    out: list[Partition] = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for p in range(min(remaining, largest), 0, -1):
            rec(remaining - p, p, prefix + [p])

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0, ..., N-1}; ``images[i]`` is where ``i`` is sent.

    Composition is right-to-left: ``(g * h)(i) == g(h(i))``. Cycle notation in
    ``str`` and :meth:`from_cycles` is 1-based to match the usual
    mathematical notation.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {self.images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    @property
    def cycle_type(self) -> Partition:
        return Partition.of(*(len(c) for c in self.cycles()))

    @property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self):
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "e"
        return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in nontrivial)


# ---------------------------------------------------------------------------
# Group descriptors


@dataclass(frozen=True)
class ConjugacyClass:
    label: str
    representative: Hashable
    members: tuple

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Irrep:
    label: str
    dim: int


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Characters ``chi[irrep, class]`` with class sizes and irrep dimensions.

    ``chi_int`` is an exact integer copy when every character is an integer
    (symmetric groups and their products); otherwise ``None``.
    """

    group: str
    irreps: tuple[Irrep, ...]
    class_labels: tuple[str, ...]
    class_sizes: tuple[int, ...]
    chi: np.ndarray
    chi_int: tuple[tuple[int, ...], ...] | None = None

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def dims(self) -> np.ndarray:
        return np.array([r.dim for r in self.irreps])

    def to_json(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "irreps": [{"label": r.label, "dim": r.dim} for r in self.irreps],
            "classes": [
                {"label": lab, "size": size}
                for lab, size in zip(self.class_labels, self.class_sizes)
            ],
            "chi": [[[float(z.real), float(z.imag)] for z in row] for row in self.chi],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any] | str) -> "CharacterTable":
        if isinstance(data, str):
            data = json.loads(data)
        chi = np.array([[complex(re, im) for re, im in row] for row in data["chi"]])
        return cls(
            group=data["group"],
            irreps=tuple(Irrep(r["label"], int(r["dim"])) for r in data["irreps"]),
            class_labels=tuple(c["label"] for c in data["classes"]),
            class_sizes=tuple(int(c["size"]) for c in data["classes"]),
            chi=chi,
        )


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Densely enumerated finite group.

    ``factors`` is non-empty only for product groups. The character table is
    built once, at construction, by the family-specific constructor.
    """

    kind: str
    name: str
    elements: tuple
    identity: Hashable
    multiply: Callable[[Any, Any], Any] = field(repr=False)
    inverse: Callable[[Any], Any] = field(repr=False)
    classes: tuple[ConjugacyClass, ...] = field(repr=False)
    table: CharacterTable = field(repr=False)
    factors: tuple["FiniteGroup", ...] = ()
    degree: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def irreps(self) -> tuple[Irrep, ...]:
        return self.table.irreps

    @property
    def is_abelian(self) -> bool:
        return all(c.size == 1 for c in self.classes)

    def class_index(self, g) -> int:
        return self._class_lookup()[g]

    def irrep_index(self, label: str | int) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < len(self.irreps):
                raise IndexError(f"irrep index {label} out of range for {self.name}")
            return int(label)
        for i, irrep in enumerate(self.irreps):
            if irrep.label == label:
                return i
        raise KeyError(f"{self.name} has no irrep labelled {label!r}")

    def _class_lookup(self) -> dict:
        cached = self.__dict__.get("_lookup")
        if cached is None:
            cached = {g: i for i, c in enumerate(self.classes) for g in c.members}
            object.__setattr__(self, "_lookup", cached)
        return cached

    def __str__(self):
        return self.name


def cyclic_group(m: int) -> FiniteGroup:
    """Z_M with characters chi_k(v) = exp(2 pi i k v / M)."""
    if m < 1:
        raise ValueError("cyclic group order must be >= 1")
    elements = tuple(range(m))
    classes = tuple(ConjugacyClass(str(v), v, (v,)) for v in elements)
    k = np.arange(m)
    chi = np.exp(2j * np.pi * np.outer(k, k) / m)
    # exact values at the quarter turns keep Z_2 / Z_4 tables free of 1e-16 noise
    chi = np.where(np.abs(chi.real) < 1e-15, 1j * chi.imag, chi)
    chi = np.where(np.abs(chi.imag) < 1e-15, chi.real + 0j, chi)
    table = CharacterTable(
        group=f"Z{m}",
        irreps=tuple(Irrep(str(i), 1) for i in range(m)),
        class_labels=tuple(c.label for c in classes),
        class_sizes=(1,) * m,
        chi=chi,
        chi_int=tuple(tuple(int(round(x.real)) for x in row) for row in chi)
        if m <= 2
        else None,
    )
    return FiniteGroup(
        kind="cyclic",
        name=f"Z{m}",
        elements=elements,
        identity=0,
        multiply=lambda a, b: (a + b) % m,
        inverse=lambda a: (-a) % m,
        classes=classes,
        table=table,
        degree=m,
    )


def _class_sort_key(p: Partition):
    return p.parts


def _irrep_sort_key(item):
    partition, dim = item
    return (dim, tuple(-x for x in partition.parts))


def symmetric_group(n: int, cap: int = SYMMETRIC_GROUP_CAP) -> FiniteGroup:
    """S_N with classes indexed by cycle type and Frobenius characters."""
    if n < 1:
        raise ValueError("symmetric group degree must be >= 1")
    if n > cap:
        raise GroupSizeError(
            f"S_{n} has {math.factorial(n)} elements; dense cap is S_{cap}"
        )
    elements = tuple(Permutation(p) for p in itertools.permutations(range(n)))
    by_type: dict[Partition, list[Permutation]] = {}
    for g in elements:
        by_type.setdefault(g.cycle_type, []).append(g)
    class_types = sorted(by_type, key=_class_sort_key)
    classes = tuple(
        ConjugacyClass(str(mu), by_type[mu][0], tuple(by_type[mu])) for mu in class_types
    )

    shapes = partitions(n)
    rows = {lam: [frobenius_character(lam, mu) for mu in class_types] for lam in shapes}
    identity_col = class_types.index(Partition((1,) * n))
    ordered = sorted(((lam, rows[lam][identity_col]) for lam in shapes), key=_irrep_sort_key)
    chi_int = tuple(tuple(rows[lam]) for lam, _ in ordered)
    table = CharacterTable(
        group=f"S{n}",
        irreps=tuple(Irrep(str(lam), dim) for lam, dim in ordered),
        class_labels=tuple(c.label for c in classes),
        class_sizes=tuple(c.size for c in classes),
        chi=np.array(chi_int, dtype=complex),
        chi_int=chi_int,
    )
    return FiniteGroup(
        kind="symmetric",
        name=f"S{n}",
        elements=elements,
        identity=Permutation.identity(n),
        multiply=lambda a, b: a * b,
        inverse=lambda a: a.inverse(),
        classes=classes,
        table=table,
        degree=n,
    )


def product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with component-wise multiplication."""
    elements = tuple(itertools.product(g1.elements, g2.elements))
    classes = tuple(
        ConjugacyClass(
            f"({c1.label}|{c2.label})",
            (c1.representative, c2.representative),
            tuple(itertools.product(c1.members, c2.members)),
        )
        for c1, c2 in itertools.product(g1.classes, g2.classes)
    )
    t1, t2 = g1.table, g2.table
    chi_int = None
    if t1.chi_int is not None and t2.chi_int is not None:
        chi_int = tuple(
            tuple(a * b for a in r1 for b in r2) for r1 in t1.chi_int for r2 in t2.chi_int
        )
    table = CharacterTable(
        group=f"{g1.name}x{g2.name}",
        irreps=tuple(
            Irrep(f"({a.label}|{b.label})", a.dim * b.dim)
            for a, b in itertools.product(t1.irreps, t2.irreps)
        ),
        class_labels=tuple(c.label for c in classes),
        class_sizes=tuple(c.size for c in classes),
        chi=np.kron(t1.chi, t2.chi),
        chi_int=chi_int,
    )
    return FiniteGroup(
        kind="product",
        name=f"{g1.name}x{g2.name}",
        elements=elements,
        identity=(g1.identity, g2.identity),
        multiply=lambda a, b: (g1.multiply(a[0], b[0]), g2.multiply(a[1], b[1])),
        inverse=lambda a: (g1.inverse(a[0]), g2.inverse(a[1])),
        classes=classes,
        table=table,
        factors=(g1, g2),
    )


def character_table(group: FiniteGroup) -> CharacterTable:
    return group.table


# ---------------------------------------------------------------------------
# Frobenius character formula


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def _power_sum_product(k: int, cycle_type: tuple[int, ...]) -> dict:
    """prod_q P_q(x)^{j_q} in k variables as {exponent tuple: coefficient}."""
    poly = {(0,) * k: 1}
    for q in cycle_type:
        p_q = {tuple(q if i == j else 0 for i in range(k)): 1 for j in range(k)}
        poly = _poly_mul(poly, p_q)
    return poly


def frobenius_character(lam: Partition, mu: Partition) -> int:
    """chi_lambda(C_mu) as the coefficient of x^l in Delta(x) * prod P_q^{j_q}.

    ``l_n = lambda_n + k - n`` with ``k = len(lambda)``. The Vandermonde
    determinant is expanded as a signed sum over permutations of the
    exponents ``(k-1, ..., 0)``, so only integer arithmetic is used.
    """
    lam = lam if isinstance(lam, Partition) else Partition.of(*lam)
    mu = mu if isinstance(mu, Partition) else Partition.of(*mu)
    if lam.total != mu.total:
        raise ValueError(f"partitions of different sizes: {lam} vs {mu}")
    k = len(lam)
    target = tuple(part + k - (n + 1) for n, part in enumerate(lam.parts))
    body = _power_sum_product(k, mu.parts)
    total = 0
    for sigma in itertools.permutations(range(k)):
        # Delta = sum_sigma sgn(sigma) prod_a x_a^{k-1-sigma(a)}
        shift = tuple(k - 1 - s for s in sigma)
        need = tuple(t - s for t, s in zip(target, shift))
        if min(need) < 0:
            continue
        coeff = body.get(need, 0)
        if coeff:
            total += Permutation(sigma).sign * coeff
    return total


# ---------------------------------------------------------------------------
# Canonical coding of S_N elements


def _long_cycle(n: int, length: int) -> Permutation:
    return Permutation.from_cycles(n, tuple(range(1, length + 1)))


def canonical_digits(g: Permutation) -> tuple[int, ...]:
    """Digits (i_1, ..., i_{N-1}) with g = c_N^{i_{N-1}} ... c_3^{i_2} c_2^{i_1}.

    ``c_j`` is the cycle (1, 2, ..., j) and ``i_j`` ranges over Z_{j+1}.
    """
    n = g.degree
    digits = [0] * max(n - 1, 0)
    h = g
    for length in range(n, 1, -1):
        # h = c_length^i * h' with h' fixing `length`; c^i sends length -> i
        image = h(length - 1) + 1
        i = image % length
        digits[length - 2] = i
        c = _long_cycle(n, length)
        c_inv_i = Permutation.identity(n)
        for _ in range(i):
            c_inv_i = c_inv_i * c.inverse()
        h = c_inv_i * h
    return tuple(digits)


def canonical_index(g: Permutation) -> int:
    """Index i = sum_j i_j N!/(j+1)! of the canonical coding."""
    n = g.degree
    return sum(d * math.factorial(n) // math.factorial(j + 2) for j, d in enumerate(canonical_digits(g)))


def permutation_from_index(n: int, index: int) -> Permutation:
    if not 0 <= index < math.factorial(n):
        raise ValueError(f"index {index} outside [0, {n}!)")
    digits = []
    for j in range(1, n):
        weight = math.factorial(n) // math.factorial(j + 1)
        digits.append((index // weight) % (j + 1))
    g = Permutation.identity(n)
    # g = c_N^{i_{N-1}} ... c_2^{i_1}: build right-to-left
    for j, d in enumerate(digits, start=1):
        c = _long_cycle(n, j + 1)
        for _ in range(d):
            g = c * g
    return g


# ---------------------------------------------------------------------------
# Checks


def verify_orthogonality(table: CharacterTable) -> tuple[float, float]:
    """Max deviation of the weighted row and the column orthogonality relations."""
    chi = np.asarray(table.chi, dtype=complex)
    sizes = np.asarray(table.class_sizes, dtype=float)
    order = sizes.sum()
    rows = (chi * sizes) @ chi.conj().T / order
    row_res = float(np.max(np.abs(rows - np.eye(len(chi)))))
    cols = chi.T @ chi.conj()
    expected = np.diag(order / sizes)
    col_res = float(np.max(np.abs(cols - expected)))
    return row_res, col_res
