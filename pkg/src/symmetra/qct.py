"""Quantum character transform.

``QCT[Gamma, C] = sqrt(|C| / |G|) chi_Gamma(C)`` maps the class basis of the
ancilla register to the irrep basis. Column orthogonality of the character
table makes the block unitary; the register is padded to the next power of
two with identity on the unused indices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .groups import FiniteGroup
from .simulator import is_unitary, operator_to_json

UNITARITY_TOL = 1e-10


class QctError(ValueError):
    pass


def register_width(n: int) -> int:
    """Qubits needed to index ``n`` items (0 for a single item)."""
    return max(0, math.ceil(math.log2(n))) if n > 1 else 0


@dataclass(frozen=True, eq=False)
class QctMatrix:
    group: str
    unitary: np.ndarray
    n_anc: int
    class_labels: tuple[str, ...]
    irrep_labels: tuple[str, ...]

    @property
    def n_classes(self) -> int:
        return len(self.class_labels)

    @property
    def class_to_basis(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.class_labels)}

    @property
    def irrep_to_basis(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.irrep_labels)}

    @property
    def block(self) -> np.ndarray:
        n = self.n_classes
        return self.unitary[:n, :n]

    def to_json(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "n_anc": self.n_anc,
            "class_to_basis": self.class_to_basis,
            "irrep_to_basis": self.irrep_to_basis,
            "matrix": operator_to_json(self.unitary),
        }


def build_qct(group: FiniteGroup) -> QctMatrix:
    table = group.table
    n = group.n_classes
    n_anc = register_width(n)
    weights = np.sqrt(np.array(table.class_sizes, dtype=float) / table.order)
    U = np.eye(2**n_anc, dtype=complex)
    U[:n, :n] = table.chi * weights[None, :]
    if not is_unitary(U, UNITARITY_TOL):
        raise QctError(f"character transform of {group.name} is not unitary; character table is inconsistent")
    return QctMatrix(
        group=group.name,
        unitary=U,
        n_anc=n_anc,
        class_labels=table.class_labels,
        irrep_labels=tuple(r.label for r in table.irreps),
    )


def qft_matrix(m: int) -> np.ndarray:
    """``(1/sqrt(M)) exp(2 pi i k v / M)`` with ``M = 2^m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    M = 2**m
    k = np.arange(M)
    return np.exp(2j * np.pi * np.outer(k, k) / M) / np.sqrt(M)


def _element_fourier(group: FiniteGroup) -> np.ndarray:
    """Group Fourier transform on the element basis, built from the group law only."""
    if group.factors:
        f1, f2 = (_element_fourier(f) for f in group.factors)
        return np.kron(f1, f2)
    if group.kind == "cyclic":
        M = group.order
        k = np.arange(M)
        return np.exp(2j * np.pi * np.outer(k, k) / M) / np.sqrt(M)
    if group.kind == "symmetric" and group.degree <= 2:
        # one-dimensional irreps: trivial and sign
        signs = np.array([g.sign for g in group.elements], dtype=complex)
        return np.vstack([np.ones_like(signs), signs]) / np.sqrt(group.order)
    raise QctError(f"{group.name} is not abelian; its Fourier transform is not a character transform")


def verify_qct_equals_abelian_fourier(group: FiniteGroup) -> float:
    """Residual between the character transform and the element-basis Fourier transform.

    For abelian groups every class is a single element and every irrep is one
    dimensional, so the two unitaries must coincide once classes are listed
    in element order.
    """
    if not group.is_abelian:
        raise QctError(f"{group.name} is not abelian")
    F = _element_fourier(group)
    Q = build_qct(group).block
    order = [group.class_index(g) for g in group.elements]
    return float(np.max(np.abs(Q[:, order] - F)))
