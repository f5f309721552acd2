import numpy as np
import pytest

from symmetra.groups import Permutation, cyclic_group, symmetric_group
from symmetra.models.ising import ising_symmetry
from symmetra.oracles import random_state
from symmetra.reps import cyclic_shift_rep, parity_flip_rep, permutation_rep
from symmetra.simulator import SWAP, ZeroProbabilityError, basis_state, is_unitary
from symmetra.tgsa import (
    NonAbelianError,
    all_projectors,
    class_mixer,
    class_mixer_apply,
    class_mixer_apply_via_oracle,
    prepare_projection_abelian,
    prepare_uniform,
    project_and_postselect,
    projector_matrix,
    select_matrix,
    select_over_classes,
    tgsa_apply,
    tgsa_oracle,
    trace_multiplicities,
)

S3 = symmetric_group(3)


@pytest.mark.parametrize("dim", range(1, 17))
def test_prepare_uniform(dim):
    P = prepare_uniform(dim)
    assert is_unitary(P)
    col = P[:, 0]
    np.testing.assert_allclose(col[:dim], 1 / np.sqrt(dim))
    np.testing.assert_allclose(col[dim:], 0, atol=1e-15)


def test_prepare_uniform_two_is_hadamard():
    np.testing.assert_allclose(prepare_uniform(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)


def test_identity_class_mixer():
    rep = permutation_rep(3, 1)
    psi = random_state(8, np.random.default_rng(0))
    post = class_mixer_apply(rep, S3.classes[0], psi)
    assert abs(post.probability - 1) < 1e-12
    np.testing.assert_allclose(post.state, psi, atol=1e-12)


def test_transposition_class_on_symmetric_state():
    rep = permutation_rep(3, 1)
    w = (basis_state(1, 3) + basis_state(2, 3) + basis_state(4, 3)) / np.sqrt(3)
    assert abs(class_mixer_apply(rep, S3.classes[1], w).probability - 1) < 1e-12


def test_transposition_class_matches_swap_sum():
    rep = permutation_rep(3, 1)
    s12 = np.kron(SWAP, np.eye(2))
    s23 = np.kron(np.eye(2), SWAP)
    s13 = s12 @ s23 @ s12
    dense = (s12 + s13 + s23) / 3
    psi = basis_state(0b001, 3)
    post = class_mixer_apply(rep, S3.classes[1], psi)
    target = dense @ psi
    assert abs(post.probability - np.linalg.norm(target) ** 2) < 1e-12
    np.testing.assert_allclose(post.state, target / np.linalg.norm(target), atol=1e-12)
    np.testing.assert_allclose(class_mixer_apply_via_oracle(rep, S3.classes[1], psi).state, post.state, atol=1e-12)


def test_class_mixers_are_central():
    rep = permutation_rep(3, 2)
    for cls in S3.classes:
        M = class_mixer(rep, cls)
        for g in S3.elements:
            R = rep.matrix(g)
            assert np.max(np.abs(M @ R - R @ M)) <= 1e-10


def test_zero_probability_mixer():
    # the transposition average acts as chi/dim = 0 on a (2,1) component
    rep = permutation_rep(3, 1)
    w = np.exp(2j * np.pi / 3)
    psi = (basis_state(4, 3) + w * basis_state(2, 3) + w**2 * basis_state(1, 3)) / np.sqrt(3)
    with pytest.raises(ZeroProbabilityError):
        class_mixer_apply(rep, S3.classes[1], psi)


def test_select_identity_class_leaves_system():
    rep = permutation_rep(3, 1)
    psi = random_state(8, np.random.default_rng(1))
    joint = np.kron(basis_state(0, 2), psi)
    out = select_over_classes(S3, rep, joint)
    np.testing.assert_allclose(out.state, joint, atol=1e-12)


def test_select_z8_applies_shift():
    G = cyclic_group(8)
    rep = cyclic_shift_rep(3)
    psi = random_state(8, np.random.default_rng(2))
    for v in range(8):
        out = select_over_classes(G, rep, np.kron(basis_state(v, 3), psi))
        np.testing.assert_allclose(out.state, np.kron(basis_state(v, 3), np.roll(psi, v)), atol=1e-12)


def test_select_uniform_matches_dense(rng):
    rep = permutation_rep(3, 1)
    anc = np.array([1, 1, 1, 0]) / np.sqrt(3)
    joint = np.kron(anc, random_state(8, rng))
    out = select_over_classes(S3, rep, joint)
    dense = select_matrix(S3, rep) @ joint
    assert abs(out.probability - np.linalg.norm(dense) ** 2) < 1e-12
    np.testing.assert_allclose(out.state * np.sqrt(out.probability), dense, atol=1e-12)


def test_select_padding_acts_as_identity(rng):
    rep = permutation_rep(3, 1)
    psi = random_state(8, rng)
    out = select_over_classes(S3, rep, np.kron(basis_state(3, 2), psi))
    np.testing.assert_allclose(out.state, np.kron(basis_state(3, 2), psi), atol=1e-12)


def test_s2_transform_is_swap_test(rng):
    """Trivial ancilla: branches (I +/- SWAP)|psi>/2, probabilities (1 +/- <SWAP>)/2."""
    m = 2
    rep = permutation_rep(2, m)
    S2 = symmetric_group(2)
    a, b = random_state(4, rng), random_state(4, rng)
    psi = np.kron(a, b)
    out = tgsa_apply(S2, rep, psi)
    overlap = abs(np.vdot(a, b)) ** 2
    assert abs(out.branch(0).probability - (1 + overlap) / 2) < 1e-12
    assert abs(out.branch(1).probability - (1 - overlap) / 2) < 1e-12
    swap = rep.matrix(Permutation.from_cycles(2, (1, 2)))
    np.testing.assert_allclose(out.branch(1).vector, (psi - swap @ psi) / 2, atol=1e-12)


def test_ghz_branches():
    G, rep = ising_symmetry(4)
    out = tgsa_apply(G, rep, basis_state(0, 4))
    for sigma in (0, 1):
        v = out.branch(sigma).vector
        assert abs(v[0] - 0.5) < 1e-12 and abs(v[-1] - 0.5 * (-1) ** sigma) < 1e-12
    assert abs(out.total_probability - 1) < 1e-12


@pytest.mark.parametrize("m", [1, 2])
def test_s3_branches_equal_scaled_projections(m, rng):
    rep = permutation_rep(3, m)
    Ps = all_projectors(S3, rep)
    for _ in range(10):
        psi = random_state(rep.dim, rng)
        out = tgsa_apply(S3, rep, psi)
        for b, P, irrep in zip(out.branches, Ps, S3.irreps):
            target = P @ psi / irrep.dim
            assert np.max(np.abs(b.vector - target)) <= 1e-10
            assert abs(b.probability - np.linalg.norm(target) ** 2) <= 1e-10


def test_general_ancilla_input_matches_oracle(rng):
    rep = permutation_rep(3, 1)
    anc = random_state(4, rng)
    psi = random_state(8, rng)
    a = tgsa_apply(S3, rep, psi, anc)
    b = tgsa_oracle(S3, rep, psi, anc)
    np.testing.assert_allclose(a.joint_state, b.joint_state, atol=1e-12)


def test_nontrivial_ancilla_character_formula(rng):
    """Input irrep Gamma: branch Gamma' = sum_C |C|/|G| conj(chi_Gamma) chi_Gamma' rho~(C) psi."""
    rep = permutation_rep(3, 1)
    psi = random_state(8, rng)
    chi = S3.table.chi
    sizes = np.array(S3.table.class_sizes)
    mixers = [class_mixer(rep, c) @ psi for c in S3.classes]
    for gamma in range(3):
        out = tgsa_apply(S3, rep, psi, gamma)
        for gp in range(3):
            target = sum(sizes[c] / 6 * np.conj(chi[gamma, c]) * chi[gp, c] * mixers[c] for c in range(3))
            np.testing.assert_allclose(out.branch(gp).vector, target, atol=1e-12)


def test_projector_properties():
    for G, rep in [(S3, permutation_rep(3, 2)), (cyclic_group(4), cyclic_shift_rep(2))]:
        Ps = all_projectors(G, rep)
        np.testing.assert_allclose(sum(Ps), np.eye(rep.dim), atol=1e-12)
        for P in Ps:
            np.testing.assert_allclose(P @ P, P, atol=1e-12)
            np.testing.assert_allclose(P, P.conj().T, atol=1e-12)
        mult = trace_multiplicities(G, rep)
        np.testing.assert_allclose(mult, np.round(mult), atol=1e-8)


def test_s2_trivial_projector_on_h2_blocks():
    rep = permutation_rep(2, 2)
    S2 = symmetric_group(2)
    swap = rep.matrix(Permutation.from_cycles(2, (1, 2)))
    np.testing.assert_allclose(projector_matrix(S2, rep, "(2)"), (np.eye(16) + swap) / 2)


def test_project_and_postselect(rng):
    rep = permutation_rep(3, 1)
    sym = np.ones(8) / np.sqrt(8)
    assert abs(project_and_postselect(S3, rep, "(3)", sym).probability - 1) < 1e-12
    psi = random_state(8, rng)
    for irrep in (S3.irreps[0], S3.irreps[2]):
        P = projector_matrix(S3, rep, irrep.label)
        post = project_and_postselect(S3, rep, irrep.label, psi)
        assert abs(post.probability - np.linalg.norm(P @ psi) ** 2 / irrep.dim**2) <= 1e-10
    with pytest.raises(ZeroProbabilityError):
        project_and_postselect(S3, rep, "(1,1,1)", psi)  # no antisymmetric states of 3 qubits


def test_abelian_prepare_variant(rng):
    G, rep = cyclic_group(8), cyclic_shift_rep(3)
    uniform = np.ones(8) / np.sqrt(8)
    out = prepare_projection_abelian(G, rep, uniform)
    assert abs(out.branch(0).probability - 1) < 1e-12
    psi = random_state(8, rng)
    out = prepare_projection_abelian(G, rep, psi)
    for b, P in zip(out.branches, all_projectors(G, rep)):
        np.testing.assert_allclose(b.vector, P @ psi, atol=1e-12)
    assert abs(out.total_probability - 1) < 1e-12


def test_abelian_prepare_parity_equal_weights():
    rep = parity_flip_rep(3)
    out = prepare_projection_abelian(rep.group, rep, basis_state(0, 3))
    assert abs(out.branch(0).probability - 0.5) < 1e-12
    assert abs(out.branch(1).probability - 0.5) < 1e-12


def test_abelian_prepare_rejects_s3():
    with pytest.raises(NonAbelianError):
        prepare_projection_abelian(S3, permutation_rep(3, 1), basis_state(0, 3))


def test_outcome_json(rng):
    out = tgsa_apply(S3, permutation_rep(3, 1), basis_state(0, 3))
    data = out.to_json()
    assert [b["label"] for b in data["branches"]] == ["(3)", "(1,1,1)", "(2,1)"]
    assert data["branches"][1]["state"] is None
    assert data["branches"][0]["probability"] == pytest.approx(1.0)
