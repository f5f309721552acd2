import numpy as np
import pytest

from symmetra.groups import cyclic_group, product_group, symmetric_group
from symmetra.qct import QctError, build_qct, qft_matrix, register_width, verify_qct_equals_abelian_fourier
from symmetra.simulator import H

S3_EXPECTED = np.array(
    [[1, np.sqrt(3), np.sqrt(2)], [1, -np.sqrt(3), np.sqrt(2)], [2, 0, -np.sqrt(2)]]
) / np.sqrt(6)


def test_register_width():
    assert [register_width(n) for n in (1, 2, 3, 4, 5, 8, 11)] == [0, 1, 2, 2, 3, 3, 4]


def test_s2_and_z2_are_hadamard():
    np.testing.assert_allclose(build_qct(symmetric_group(2)).unitary, H, atol=1e-15)
    np.testing.assert_allclose(build_qct(cyclic_group(2)).unitary, H, atol=1e-15)


def test_s3_matrix_with_padding():
    Q = build_qct(symmetric_group(3))
    assert Q.n_anc == 2
    assert np.max(np.abs(Q.block - S3_EXPECTED)) <= 1e-12
    assert Q.unitary[3, 3] == 1 and np.all(Q.unitary[3, :3] == 0) and np.all(Q.unitary[:3, 3] == 0)


@pytest.mark.parametrize("m", range(1, 6))
def test_qct_of_power_of_two_cyclic_is_qft(m):
    assert np.max(np.abs(build_qct(cyclic_group(2**m)).unitary - qft_matrix(m))) <= 1e-12


def test_qft_formula_small():
    F = qft_matrix(2)
    expected = np.array([[1, 1, 1, 1], [1, 1j, -1, -1j], [1, -1, 1, -1], [1, -1j, -1, 1j]]) / 2
    np.testing.assert_allclose(F, expected, atol=1e-15)


@pytest.mark.parametrize(
    "G",
    [cyclic_group(m) for m in (1, 3, 5, 6, 12)]
    + [symmetric_group(n) for n in range(1, 7)]
    + [product_group(symmetric_group(3), cyclic_group(2)), product_group(symmetric_group(2), symmetric_group(3))],
    ids=str,
)
def test_unitarity_and_trivial_row(G):
    Q = build_qct(G)
    U = Q.unitary
    assert np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))) <= 1e-10
    sizes = np.array(G.table.class_sizes)
    np.testing.assert_allclose(U[0, : G.n_classes], np.sqrt(sizes / G.order), atol=1e-14)


def test_product_qct_factorizes():
    A, B = symmetric_group(3), cyclic_group(2)
    P = build_qct(product_group(A, B)).block
    np.testing.assert_allclose(P, np.kron(build_qct(A).block, build_qct(B).block), atol=1e-14)


@pytest.mark.parametrize(
    "G", [cyclic_group(4), symmetric_group(2), product_group(cyclic_group(2), cyclic_group(2)), cyclic_group(7)], ids=str
)
def test_abelian_fourier_identification(G):
    assert verify_qct_equals_abelian_fourier(G) <= 1e-12


def test_abelian_fourier_rejects_nonabelian():
    with pytest.raises(QctError):
        verify_qct_equals_abelian_fourier(symmetric_group(3))


def test_json_export():
    data = build_qct(symmetric_group(3)).to_json()
    assert data["n_anc"] == 2
    assert data["irrep_to_basis"] == {"(3)": 0, "(1,1,1)": 1, "(2,1)": 2}
    assert len(data["matrix"]) == 4
