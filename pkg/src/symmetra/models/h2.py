"""Two-electron H2 in first quantization.

Four qubits ordered ``[orb1, spin1, orb2, spin2]``: each electron owns an
orbital qubit (0 = gerade, 1 = ungerade) and a spin qubit (0 = up). The
Hamiltonian is ``h (x) I + I (x) h + V`` with ``h`` spin-diagonal and
``<p s, q t|V|r s', u t'> = g[p, q, r, u] delta_{s s'} delta_{t t'}`` in
physicist ordering.

Exchange symmetry is labeled with two commuting copies of S_2: the full
particle swap (statistics) and the swap of spin qubits only (spin).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ..groups import symmetric_group
from ..reps import UnitaryRep, permutation_rep, product_rep, spin_only_permutation_rep
from ..simulator import I2, RegisterLayout, X, H as HADAMARD, Z, basis_state, kron_all
from ..tgsa import Branch, TgsaOutcome, ZERO_PROBABILITY, tgsa_apply
from .base import ModelHamiltonian

SYMMETRY_TOL = 1e-12
STATISTICS = {"(2)": "boson", "(1,1)": "fermion"}
SPIN = {"(2)": "triplet", "(1,1)": "singlet"}
SPIN_QUBITS = (1, 3)


def _symmetry_images(p, q, r, s):
    return {
        (p, q, r, s), (q, p, s, r), (r, s, p, q), (s, r, q, p),
        (r, q, p, s), (p, s, r, q), (s, p, q, r), (q, r, s, p),
    }


@dataclass(frozen=True, eq=False)
class H2Integrals:
    eps_g: float
    eps_u: float
    g: np.ndarray = field(repr=False)  # g[p, q, r, s] = <pq|rs>, 0-based

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        if g.shape != (2, 2, 2, 2):
            raise ValueError("two-electron integrals must be a 2x2x2x2 array")
        worst = max(
            abs(g[idx] - g[img]) for idx in itertools.product(range(2), repeat=4) for img in _symmetry_images(*idx)
        )
        if worst > SYMMETRY_TOL:
            raise ValueError(f"two-electron integrals break permutational symmetry by {worst:.3e}")
        object.__setattr__(self, "g", g)

    @classmethod
    def from_coulomb_exchange(cls, eps_g, eps_u, J11, J22, J12, K12) -> "H2Integrals":
        """Expand the parity-allowed Coulomb and exchange integrals to the full array."""
        g = np.zeros((2, 2, 2, 2))
        unique = {(0, 0, 0, 0): J11, (1, 1, 1, 1): J22, (0, 1, 0, 1): J12, (0, 1, 1, 0): K12, (0, 0, 1, 1): K12}
        for idx, val in unique.items():
            for img in _symmetry_images(*idx):
                g[img] = val
        return cls(float(eps_g), float(eps_u), g)

    @classmethod
    def from_dict(cls, data: dict) -> "H2Integrals":
        if "g" in data:
            return cls(float(data["eps_g"]), float(data["eps_u"]), np.array(data["g"], dtype=float))
        keys = ("eps_g", "eps_u", "J11", "J22", "J12", "K12")
        missing = [k for k in keys if k not in data]
        if missing:
            raise ValueError(f"H2 config is missing {missing}")
        return cls.from_coulomb_exchange(*(data[k] for k in keys))

    @classmethod
    def from_json(cls, path: str | Path) -> "H2Integrals":
        return cls.from_dict(json.loads(Path(path).read_text()))

    @classmethod
    def sample(cls) -> "H2Integrals":
        text = resources.files("symmetra.data").joinpath("h2_sto3g.json").read_text()
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {"eps_g": self.eps_g, "eps_u": self.eps_u, "g": self.g.tolist()}


def h2_symmetry() -> tuple[UnitaryRep, UnitaryRep, UnitaryRep]:
    """(full exchange, spin-only exchange, their shared product) on 4 qubits."""
    full = permutation_rep(2, 2)
    spin = spin_only_permutation_rep(2, SPIN_QUBITS, 4)
    return full, spin, product_rep(full, spin, shared=True)


def h2_hamiltonian(ints: H2Integrals) -> ModelHamiltonian:
    h = np.kron(np.diag([ints.eps_g, ints.eps_u]), I2)
    one = np.kron(h, np.eye(4)) + np.kron(np.eye(4), h)
    V = np.einsum("pqrs,ik,jl->piqjrksl", ints.g, np.eye(2), np.eye(2)).reshape(16, 16)
    _, _, rep = h2_symmetry()
    model = ModelHamiltonian(
        (one + V).astype(complex),
        RegisterLayout.of(particle1=2, particle2=2),
        rep.group,
        rep,
        {"eps_g": ints.eps_g, "eps_u": ints.eps_u},
    )
    if model.symmetry_residual() > 1e-8:
        raise ValueError("H2 Hamiltonian breaks exchange symmetry; check the integrals")
    return model


def sector_name(stat_label: str, spin_label: str) -> str:
    return f"{STATISTICS[stat_label]}/{SPIN[spin_label]}"


def product_label_to_sector(label: str) -> str:
    """``"((1,1)|(2))"`` -> ``"fermion/triplet"``."""
    stat, spin = label[1:-1].split("|")
    return sector_name(stat, spin)


def h2_sector_label(state: np.ndarray) -> TgsaOutcome:
    """Statistics then spin, as two chained S_2 transforms with trivial ancillas.

    Branch order is statistics-major: boson/triplet, boson/singlet,
    fermion/triplet, fermion/singlet.
    """
    S2 = symmetric_group(2)
    full, spin, _ = h2_symmetry()
    psi = np.asarray(state, dtype=complex)
    first = tgsa_apply(S2, full, psi)
    branches, joint = [], []
    for b1 in first.branches:
        if b1.probability < ZERO_PROBABILITY:
            second = [(r.label, np.zeros_like(psi)) for r in S2.irreps]
        else:
            out = tgsa_apply(S2, spin, b1.state)
            second = [(b2.label, b1.amplitude * b2.vector) for b2 in out.branches]
        for spin_label, vec in second:
            amp = float(np.linalg.norm(vec))
            branches.append(Branch(sector_name(b1.label, spin_label), amp**2, complex(amp), vec))
            joint.append(vec)
    return TgsaOutcome("S2xS2", np.concatenate(joint), tuple(branches))


def mixed_spin_product_state() -> np.ndarray:
    """``(I (x) ZH (x) X (x) H)|0000>``: particle 1 in gerade with spin ``(|0> - |1>)/sqrt 2``, particle 2 in ungerade with spin ``|+>``."""
    return kron_all([I2, Z @ HADAMARD, X, HADAMARD]) @ basis_state(0, 4)


def spin_orbital_state(orb1: int, spin1: int, orb2: int, spin2: int) -> np.ndarray:
    return basis_state(orb1 * 8 + spin1 * 4 + orb2 * 2 + spin2, 4)
