import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symmetra.oracles import random_state
from symmetra.simulator import (
    SWAP,
    DimensionError,
    H,
    RegisterLayout,
    X,
    Z,
    ZeroProbabilityError,
    apply_operator,
    basis_state,
    controlled_apply,
    exact_eigensystem,
    expand_operator,
    expectation,
    kron_all,
    measure_register,
    operator_from_json,
    operator_to_json,
    register_probabilities,
    sample_register,
    state_from_json,
    state_to_json,
)


def random_unitary(dim, rng):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_basis_indexing_msb_first():
    lay = RegisterLayout.of(a=1, b=1)
    out = apply_operator(X, basis_state(0, 2), lay, "a")
    assert out[2] == 1  # |10> has index 2


def test_simple_gates():
    lay = RegisterLayout.of(q=1)
    np.testing.assert_allclose(apply_operator(H, basis_state(0, 1), lay, "q"), [2**-0.5, 2**-0.5])
    two = RegisterLayout.of(q=2)
    np.testing.assert_allclose(apply_operator(SWAP, basis_state(1, 2), two, "q"), basis_state(2, 2))
    psi = random_state(4, np.random.default_rng(0))
    np.testing.assert_allclose(apply_operator(np.eye(4), psi, two, "q"), psi)


def test_dimension_mismatch():
    lay = RegisterLayout.of(a=1, b=2)
    with pytest.raises(DimensionError):
        apply_operator(np.eye(2), basis_state(0, 3), lay, "b")


@pytest.mark.parametrize("target", ["a", "b", "c"])
def test_two_path_application(target, rng):
    lay = RegisterLayout.of(a=3, b=2, c=3)
    op = random_unitary(2 ** lay.width(target), rng)
    psi = random_state(lay.dim, rng)
    local = apply_operator(op, psi, lay, target)
    dense = expand_operator(op, lay, target) @ psi
    assert np.max(np.abs(local - dense)) <= 1e-10
    assert abs(np.linalg.norm(local) - 1) <= 1e-10


def test_controlled_apply_examples():
    lay = RegisterLayout.of(c=1, t=1)
    assert np.allclose(controlled_apply(X, basis_state(0, 2), lay, "c", 1, "t"), basis_state(0, 2))
    assert np.allclose(controlled_apply(X, basis_state(2, 2), lay, "c", 1, "t"), basis_state(3, 2))
    plus = apply_operator(H, basis_state(0, 2), lay, "c")
    bell = controlled_apply(X, plus, lay, "c", 1, "t")
    np.testing.assert_allclose(bell, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15)


def test_controlled_apply_target_before_control(rng):
    lay = RegisterLayout.of(t=2, c=2)
    op = random_unitary(4, rng)
    psi = random_state(16, rng)
    out = controlled_apply(op, psi, lay, "c", 3, "t")
    proj = np.diag([0, 0, 0, 1.0])
    dense = np.kron(op, proj) + np.kron(np.eye(4), np.eye(4) - proj)
    np.testing.assert_allclose(out, dense @ psi, atol=1e-12)


def test_controlled_index_range():
    lay = RegisterLayout.of(c=1, t=1)
    with pytest.raises(DimensionError):
        controlled_apply(X, basis_state(0, 2), lay, "c", 2, "t")


def test_measurement():
    lay = RegisterLayout.of(a=1, b=1)
    assert measure_register(basis_state(0, 2), lay, "a", 0).probability == 1
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    post = measure_register(bell, lay, "a", 1)
    assert abs(post.probability - 0.5) < 1e-15
    np.testing.assert_allclose(post.state, basis_state(3, 2))
    with pytest.raises(ZeroProbabilityError):
        measure_register(basis_state(0, 2), lay, "a", 1)


def test_post_selection_composes_multiplicatively(rng):
    lay = RegisterLayout.of(a=1, b=1, c=2)
    psi = random_state(lay.dim, rng)
    first = measure_register(psi, lay, "a", 0)
    second = first.then(measure_register(first.state, lay, "b", 1))
    direct = np.linalg.norm(psi.reshape(2, 2, 4)[0, 1]) ** 2
    assert abs(second.probability - direct) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_outcome_probabilities_sum_to_one(seed):
    rng = np.random.default_rng(seed)
    lay = RegisterLayout.of(a=2, b=3)
    psi = random_state(lay.dim, rng)
    assert abs(register_probabilities(psi, lay, "b").sum() - 1) <= 1e-10


def test_sampling_is_seeded():
    lay = RegisterLayout.of(a=1)
    psi = np.array([0.6, 0.8])
    c1 = sample_register(psi, lay, "a", 1000, np.random.default_rng(5))
    c2 = sample_register(psi, lay, "a", 1000, np.random.default_rng(5))
    assert (c1 == c2).all() and c1.sum() == 1000


def test_eigensystem():
    evals, _ = exact_eigensystem(Z)
    np.testing.assert_allclose(evals, [-1, 1])
    zz = -kron_all([Z, Z])
    np.testing.assert_allclose(exact_eigensystem(zz)[0], [-1, -1, 1, 1])
    with pytest.raises(ValueError):
        exact_eigensystem(np.array([[0, 1], [0, 0]]))


def test_eigensystem_residual(rng):
    A = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    A = A + A.conj().T
    evals, vecs = exact_eigensystem(A)
    assert np.all(np.diff(evals) >= 0)
    assert np.max(np.linalg.norm(A @ vecs - vecs * evals, axis=0)) <= 1e-9


def test_expectation(rng):
    assert expectation(basis_state(0, 1), Z) == 1
    assert abs(expectation(np.array([1, 1]) / np.sqrt(2), X) - 1) < 1e-15
    A = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    A = A + A.conj().T
    val = expectation(random_state(8, rng), A)
    assert abs(val.imag) <= 1e-10


def test_json_roundtrip(rng):
    psi = random_state(8, rng)
    np.testing.assert_array_equal(state_from_json(state_to_json(psi)), psi)
    U = random_unitary(4, rng)
    np.testing.assert_array_equal(operator_from_json(operator_to_json(U)), U)
