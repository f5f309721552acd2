"""Release gate: eleven numbered criteria, each a function returning a result.

Numerical tolerances are the stated defaults multiplied by the
``SYMMETRA_TOL`` environment variable (default 1). Exact checks (integer
tables, ranks, gate counts) and the one-bin phase resolution are not scaled.
"""
from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import groups as grp
from .models.base import block_spectra_union, range_basis
from .models.h2 import (
    H2Integrals,
    h2_hamiltonian,
    h2_sector_label,
    h2_symmetry,
    mixed_spin_product_state,
    product_label_to_sector,
    spin_orbital_state,
)
from .models.harper import (
    block_diagonalization_residual,
    butterfly,
    harper_momentum_blocks,
    harper_pseudospin_half,
)
from .models.ising import ising_hamiltonian, ising_symmetry, ising_symmetry_projectors, longitudinal_term
from .models.parastatistics import three_particle_ranks
from .oracles import murnaghan_nakayama, random_state
from .qct import build_qct, qft_matrix
from .qpe import sqpe
from .reps import (
    cyclic_shift_rep,
    magnetic_translation_reps,
    parity_flip_rep,
    permutation_rep,
)
from .resources import cyclic_increment_resources, cyclic_select_resources, unary_iteration_resources
from .simulator import H as HADAMARD
from .simulator import RegisterLayout, sample_register
from .tgsa import all_projectors, prepare_projection_abelian, tgsa_apply, tgsa_circuit_state

SEED = 20240531
RNG_NAME = "numpy.random.default_rng (PCG64)"
N_RANDOM_STATES = 50
N_SHOTS = 100_000


def tolerance_multiplier() -> float:
    raw = os.environ.get("SYMMETRA_TOL", "").strip()
    if not raw:
        return 1.0
    value = float(raw)
    if value <= 0:
        raise ValueError("SYMMETRA_TOL must be positive")
    return value


def tol(base: float) -> float:
    return base * tolerance_multiplier()


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    checks: dict[str, bool] = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _result(number: int, title: str, checks: dict[str, bool], detail: str) -> CriterionResult:
    return CriterionResult(number, title, all(checks.values()), detail, checks)


# ---------------------------------------------------------------------------
# shared fixtures


S2_TABLE = ((1, 1), (1, -1))
S3_TABLE = ((1, 1, 1), (1, -1, 1), (2, 0, -1))
S3_QCT = np.array(
    [[1, np.sqrt(3), np.sqrt(2)], [1, -np.sqrt(3), np.sqrt(2)], [2, 0, -np.sqrt(2)]]
) / np.sqrt(6)


def product_groups():
    return [
        grp.product_group(grp.cyclic_group(2), grp.cyclic_group(2)),
        grp.product_group(grp.cyclic_group(3), grp.symmetric_group(3)),
        grp.product_group(grp.symmetric_group(3), grp.symmetric_group(2)),
    ]


def projector_cases():
    """(name, group, rep) pairs for the projector and circuit criteria."""
    cases = [("Z8 shifts", grp.cyclic_group(8), cyclic_shift_rep(3))]
    for n in range(1, 9):
        rep = parity_flip_rep(n)
        cases.append((f"Z2 parity N={n}", rep.group, rep))
    for m in (1, 2):
        rep = permutation_rep(2, m)
        cases.append((f"S2 blocks m={m}", rep.group, rep))
    for m in (1, 2):
        rep = permutation_rep(3, m)
        cases.append((f"S3 blocks m={m}", rep.group, rep))
    for n in (3, 4, 6):
        G, rep = ising_symmetry(n)
        cases.append((f"Z{n}xZ2 chain", G, rep))
    return cases


# ---------------------------------------------------------------------------
# criteria


def criterion_1(corrupt: bool = False) -> CriterionResult:
    S2, S3 = grp.symmetric_group(2), grp.symmetric_group(3)
    checks = {
        "S2 table": S2.table.chi_int == S2_TABLE,
        "S3 table": S3.table.chi_int == S3_TABLE,
    }
    mismatches = 0
    for n in range(1, 6):
        for lam, mu in itertools.product(grp.partitions(n), repeat=2):
            mismatches += grp.frobenius_character(lam, mu) != murnaghan_nakayama(lam, mu)
    checks["Frobenius = Murnaghan-Nakayama (N<=5)"] = mismatches == 0

    tables = [grp.cyclic_group(m).table for m in range(1, 65)]
    tables += [grp.symmetric_group(n).table for n in range(1, 6)]
    tables += [g.table for g in product_groups()]
    if corrupt:
        bad = tables[64 + 2]  # S3
        chi = bad.chi.copy()
        chi[2, 1] += 1
        tables[64 + 2] = grp.CharacterTable(bad.group, bad.irreps, bad.class_labels, bad.class_sizes, chi)
    worst = max(max(grp.verify_orthogonality(t)) for t in tables)
    checks["orthogonality"] = worst <= tol(1e-10)
    return _result(1, "character tables", checks, f"Frobenius/MN mismatches {mismatches}, worst orthogonality residual {worst:.1e}")


def criterion_2() -> CriterionResult:
    groups = [grp.cyclic_group(m) for m in range(1, 65)]
    groups += [grp.symmetric_group(n) for n in range(1, grp.SYMMETRIC_GROUP_CAP + 1)]
    groups += product_groups()
    unit = 0.0
    for G in groups:
        Q = build_qct(G).unitary
        unit = max(unit, float(np.max(np.abs(Q.conj().T @ Q - np.eye(Q.shape[0])))))
    qft = max(
        float(np.max(np.abs(build_qct(grp.cyclic_group(2**m)).unitary - qft_matrix(m)))) for m in range(1, 6)
    )
    s2 = float(np.max(np.abs(build_qct(grp.symmetric_group(2)).unitary - HADAMARD)))
    Q3 = build_qct(grp.symmetric_group(3)).unitary
    expected = np.eye(4, dtype=complex)
    expected[:3, :3] = S3_QCT
    s3 = float(np.max(np.abs(Q3 - expected)))
    checks = {
        "unitarity": unit <= tol(1e-10),
        "QCT(Z_2^m) = QFT": qft <= tol(1e-12),
        "QCT(S2) = Hadamard": s2 <= tol(1e-12),
        "QCT(S3) matrix": s3 <= tol(1e-12),
    }
    return _result(2, "character transform", checks, f"unitarity {unit:.1e}, QFT {qft:.1e}, S2 {s2:.1e}, S3 {s3:.1e}")


def projector_algebra(G, rep) -> dict[str, float]:
    Ps = all_projectors(G, rep)
    I = np.eye(rep.dim)
    idem = max(float(np.max(np.abs(P @ P - P))) for P in Ps)
    herm = max(float(np.max(np.abs(P - P.conj().T))) for P in Ps)
    orth = max(
        (float(np.max(np.abs(Ps[i] @ Ps[j]))) for i in range(len(Ps)) for j in range(len(Ps)) if i != j),
        default=0.0,
    )
    comp = float(np.max(np.abs(sum(Ps) - I)))
    traces = [np.trace(P).real / irrep.dim for P, irrep in zip(Ps, G.irreps)]
    frac = max(abs(t - round(t)) for t in traces)
    neg = min(traces)
    return {"idempotence": idem, "hermiticity": herm, "orthogonality": orth, "completeness": comp, "trace": frac, "min_trace": neg}


def criterion_3() -> CriterionResult:
    worst = {"idempotence": 0.0, "hermiticity": 0.0, "orthogonality": 0.0, "completeness": 0.0, "trace": 0.0}
    negative = False
    for _, G, rep in projector_cases():
        res = projector_algebra(G, rep)
        negative |= res.pop("min_trace") < -tol(1e-8)
        for k, v in res.items():
            worst[k] = max(worst[k], v)
    checks = {k: v <= tol(1e-10) for k, v in worst.items() if k != "trace"}
    checks["trace/d integer"] = worst["trace"] <= tol(1e-8) and not negative
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return _result(3, "projector algebra", checks, detail)


def circuit_oracle_residuals(G, rep, rng) -> tuple[float, float, float]:
    """(branch state residual, probability residual, abelian-variant residual) over seeded states."""
    Ps = all_projectors(G, rep)
    dims = [irrep.dim for irrep in G.irreps]
    st = pr = ab = 0.0
    for _ in range(N_RANDOM_STATES):
        psi = random_state(rep.dim, rng)
        out = tgsa_apply(G, rep, psi)
        for b, P, d in zip(out.branches, Ps, dims):
            target = P @ psi / d
            st = max(st, float(np.max(np.abs(b.vector - target))))
            pr = max(pr, abs(b.probability - float(np.linalg.norm(target) ** 2)))
        if G.is_abelian:
            var = prepare_projection_abelian(G, rep, psi)
            ab = max(ab, max(float(np.max(np.abs(b.vector - P @ psi))) for b, P in zip(var.branches, Ps)))
    return st, pr, ab


def criterion_4() -> CriterionResult:
    rng = np.random.default_rng(SEED)
    st = pr = ab = 0.0
    for _, G, rep in projector_cases():
        s, p, a = circuit_oracle_residuals(G, rep, rng)
        st, pr, ab = max(st, s), max(pr, p), max(ab, a)
    checks = {
        "branch states": st <= tol(1e-10),
        "branch probabilities": pr <= tol(1e-10),
        "abelian PREPARE variant": ab <= tol(1e-10),
    }
    return _result(4, "circuit vs oracle", checks, f"state {st:.1e}, probability {pr:.1e}, abelian variant {ab:.1e}")


def fermionic_superposition() -> np.ndarray:
    """Antisymmetrized two-electron state expected from the mixed-spin product input."""

    def ket(a, s, b, t):
        return spin_orbital_state(a, s, b, t)

    triplet = (ket(0, 0, 1, 0) - ket(1, 0, 0, 0)) - (ket(0, 1, 1, 1) - ket(1, 1, 0, 1))
    singlet = (ket(0, 0, 1, 1) + ket(1, 0, 0, 1)) - (ket(0, 1, 1, 0) + ket(1, 1, 0, 0))
    return (triplet + singlet) / 4


def criterion_5() -> CriterionResult:
    ghz = 0.0
    for n in (3, 4, 8):
        G, rep = ising_symmetry(n)
        vac = np.zeros(2**n, dtype=complex)
        vac[0] = 1
        out = tgsa_apply(G, rep, vac)
        for sigma in (0, 1):
            expected = np.zeros(2**n, dtype=complex)
            expected[0], expected[-1] = 0.5, 0.5 * (-1) ** sigma
            P = all_projectors(G, rep)[sigma]
            ghz = max(ghz, float(np.max(np.abs(P @ vac - expected))))
            ghz = max(ghz, float(np.max(np.abs(out.branch(sigma).vector - expected))))
    S2 = grp.symmetric_group(2)
    full, _, _ = h2_symmetry()
    ferm = tgsa_apply(S2, full, mixed_spin_product_state()).branch("(1,1)").vector
    eq = float(np.max(np.abs(ferm - fermionic_superposition())))
    pauli = tgsa_apply(S2, full, spin_orbital_state(0, 0, 0, 0)).branch("(1,1)").probability
    labeled = h2_sector_label(spin_orbital_state(0, 0, 0, 0))
    pauli = max(pauli, labeled.branch("fermion/triplet").probability + labeled.branch("fermion/singlet").probability)
    checks = {
        "GHZ amplitudes 1/2": ghz <= tol(1e-12),
        "fermionic superposition": eq <= tol(1e-12),
        "Pauli exclusion": pauli <= tol(1e-12),
    }
    return _result(5, "state reproductions", checks, f"GHZ {ghz:.1e}, fermionic {eq:.1e}, same-spin fermionic probability {pauli:.1e}")


def criterion_6() -> CriterionResult:
    n = 8
    rng = np.random.default_rng(SEED + 6)
    projs = ising_symmetry_projectors(n)
    L = longitudinal_term(rng.normal(size=n))
    elim = max(float(np.linalg.norm(P @ L @ P, 2)) for P in projs.values())
    model = ising_hamiltonian(n, rng.uniform(0.2, 1.5), 0.0, 1.0)
    union = block_spectra_union(model.H, projs.values())
    full = model.spectrum()
    union_dev = float(np.max(np.abs(union - full))) if union.shape == full.shape else np.inf
    checks = {"longitudinal term eliminated": elim <= tol(1e-10), "block spectra partition": union_dev <= tol(1e-9)}
    return _result(6, "Ising projections", checks, f"||P W P|| {elim:.1e}, spectrum union {union_dev:.1e}")


HARPER_FLUXES = (0, (1, 2), (1, 3), 0.123)


def _flux_text(b) -> str:
    return f"{b[0]}/{b[1]}" if isinstance(b, tuple) else str(b)


def commutation_phase_residual(m: int, b) -> float:
    U, V = magnetic_translation_reps(m, b)
    bf = b[0] / b[1] if isinstance(b, tuple) else float(b)
    lhs = U @ V @ U.conj().T @ V.conj().T
    return float(np.max(np.abs(lhs - np.exp(2j * np.pi * bf) * np.eye(U.shape[0]))))


def criterion_7(m: int = 3, q_max: int = 16) -> CriterionResult:
    comm = {b: commutation_phase_residual(m, b) for b in HARPER_FLUXES}
    blocks = max(block_diagonalization_residual(m, b, 1.0, 0.7) for b in HARPER_FLUXES)
    pseudo = max(
        float(np.max(np.abs(
            np.linalg.eigvalsh(harper_pseudospin_half(m, k, 1.0, 0.7))
            - np.linalg.eigvalsh(harper_momentum_blocks(m, (1, 2), 1.0, 0.7)[k])
        )))
        for k in range(2**m)
    )
    t0 = time.perf_counter()
    rows = butterfly(m, q_max)
    elapsed = time.perf_counter() - t0
    sweep = max(float(np.max(np.abs(a - f))) for _, a, f in rows)
    checks = {f"commutation phase b={_flux_text(b)}": r <= tol(1e-10) for b, r in comm.items()}
    checks["QFT_y block diagonalization"] = blocks <= tol(1e-10)
    checks["pseudo-spin spectra"] = pseudo <= tol(1e-10)
    checks["butterfly under 60 s"] = elapsed < 60
    checks["butterfly block unions"] = sweep <= tol(1e-9)
    comm_txt = ", ".join(f"b={_flux_text(b)}: {r:.1e}" for b, r in comm.items())
    detail = f"commutation [{comm_txt}], blocks {blocks:.1e}, pseudo-spin {pseudo:.1e}, butterfly {len(rows)} fluxes in {elapsed:.2f}s max dev {sweep:.1e}"
    return _result(7, "Harper-Hofstadter", checks, detail)


def dominant_block_energy(H, P, psi, tol_degenerate: float = 1e-8) -> float:
    """Block eigenvalue carrying the most weight of ``P psi``; degenerate levels are pooled."""
    B = range_basis(P)
    evals, vecs = np.linalg.eigh(B.conj().T @ H @ B)
    weights = np.abs(vecs.conj().T @ (B.conj().T @ psi)) ** 2
    pooled: list[list[float]] = []
    for e, w in zip(evals, weights):
        if pooled and abs(e - pooled[-1][0]) < tol_degenerate:
            pooled[-1][1] += w
        else:
            pooled.append([e, w])
    return max(pooled, key=lambda item: item[1])[0]


def criterion_8(config: str | None = None) -> CriterionResult:
    ints = H2Integrals.from_json(config) if config else H2Integrals.sample()
    model = h2_hamiltonian(ints)
    psi = mixed_spin_product_state()
    Ps = all_projectors(model.group, model.rep)
    exact = [dominant_block_energy(model.H, P, psi) for P in Ps]
    checks, errors = {}, {}
    for n in range(4, 9):
        dist = sqpe(model.group, model.rep, model.H, psi, n)
        width = dist.calibration.bin_width(n)
        errs = []
        for i, irrep in enumerate(model.group.irreps):
            if dist.branch_probabilities[i] < 1e-12:
                continue
            err = abs(dist.peak_energy(i) - exact[i])
            errs.append(err)
            checks[f"n={n} {product_label_to_sector(irrep.label)}"] = err <= width
        errors[n] = max(errs)
    detail = "max peak error per n: " + ", ".join(f"{n}: {e:.4f}" for n, e in errors.items())
    return _result(8, "symmetry-adapted phase estimation", checks, detail)


def criterion_9() -> CriterionResult:
    r2, r4 = three_particle_ranks(2), three_particle_ranks(4)
    checks = {
        "d=2 ranks (4,0,4)": (r2["(3)"], r2["(1,1,1)"], r2["(2,1)"]) == (4, 0, 4),
        "d=4 ranks sum to 64": sum(r4.values()) == 64,
        "d=4 antisymmetric rank": r4["(1,1,1)"] == comb(4, 3),
    }
    return _result(9, "parastatistics ranks", checks, f"d=2 {r2}, d=4 {r4}")


def criterion_10() -> CriterionResult:
    bad = []
    for m in range(1, 11):
        inc = cyclic_increment_resources(m, "incrementer")
        add = cyclic_increment_resources(m, "adder")
        sel = cyclic_select_resources(m, "adder")
        expected = [
            (inc.t_count, 12 * (m + 1)), (inc.toffoli_count, 3 * (m + 1)),
            (add.t_count, 8 * m), (add.toffoli_count, 4 * m),
            (sel.t_count, 8 * m * m), (sel.toffoli_count, 4 * m * m),
        ]
        bad += [m for got, want in expected if got != want]
    unary = unary_iteration_resources(3, 3)
    checks = {"gate-count table m=1..10": not bad, "unary iteration (3,3)": (unary.t_count, unary.toffoli_count) == (32, 8)}
    return _result(10, "resource estimates", checks, f"table mismatches {len(bad)}, unary(3,3) T={unary.t_count} Toffoli={unary.toffoli_count}")


def criterion_11() -> CriterionResult:
    rng = np.random.default_rng(SEED + 11)
    worst_z = 0.0
    checks = {}
    for name, G, rep in projector_cases():
        if name not in ("S3 blocks m=1", "Z8 shifts", "S2 blocks m=2"):
            continue
        psi = random_state(rep.dim, rng)
        out = tgsa_apply(G, rep, psi)
        state, layout = tgsa_circuit_state(G, rep, psi)
        readout = RegisterLayout.of(readout=layout.width("anc") + layout.width("prep"), sys=layout.width("sys"))
        counts = sample_register(state, readout, "readout", N_SHOTS, rng)
        prep_w = layout.width("prep")
        ok = True
        for i, b in enumerate(out.branches):
            freq = counts[i << prep_w] / N_SHOTS
            se = np.sqrt(b.probability * (1 - b.probability) / N_SHOTS)
            z = abs(freq - b.probability) / se if se > 0 else (0.0 if freq == b.probability else np.inf)
            worst_z = max(worst_z, z)
            ok &= z <= 4
        checks[name] = bool(ok)
    return _result(11, "sampled post-selection", checks, f"{N_SHOTS} shots per case, worst deviation {worst_z:.2f} standard errors")


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}


def run_criterion(number: int, **kwargs) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number](**kwargs)
    res.seconds = time.perf_counter() - t0
    return res


def header() -> str:
    return f"acceptance suite: seed {SEED}, rng {RNG_NAME}, tolerance multiplier {tolerance_multiplier():g} (SYMMETRA_TOL)"


def run_all(corrupt_characters: bool = False, h2_config: str | None = None) -> list[CriterionResult]:
    out = []
    for number in CRITERIA:
        kwargs = {}
        if number == 1:
            kwargs["corrupt"] = corrupt_characters
        if number == 8:
            kwargs["config"] = h2_config
        out.append(run_criterion(number, **kwargs))
    return out
