import math

import pytest

from symmetra.resources import (
    ResourceEstimate,
    cyclic_increment_resources,
    cyclic_select_resources,
    resource_table,
    select_applications,
    unary_iteration_resources,
)


@pytest.mark.parametrize("m", range(1, 11))
def test_increment_linear(m):
    inc = cyclic_increment_resources(m, "incrementer")
    assert (inc.t_count, inc.toffoli_count) == (12 * (m + 1), 3 * (m + 1))
    assert inc.ancilla_qubits == (math.ceil(math.log2(m)) if m > 1 else 0)
    add = cyclic_increment_resources(m, "adder")
    assert (add.t_count, add.toffoli_count, add.ancilla_qubits) == (8 * m, 4 * m, m)


@pytest.mark.parametrize("m", range(1, 11))
def test_select_scaling(m):
    adder = cyclic_select_resources(m, "adder")
    assert adder.t_count == 8 * m * m and adder.depth_class == "quadratic"
    inc = cyclic_select_resources(m, "incrementer")
    assert inc.t_count == (2**m - 1) * 12 * (m + 1)
    assert inc.depth_class == "exponential"
    assert select_applications(m) == 2**m - 1


def test_incrementer_select_overtakes_adder():
    ratios = [
        cyclic_select_resources(m, "incrementer").t_count / cyclic_select_resources(m, "adder").t_count
        for m in range(1, 11)
    ]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] > 100


@pytest.mark.parametrize(
    "n_classes, size, t, tof, anc",
    [(3, 3, 32, 8, 3), (2, 1, 4, 1, 0), (1, 1, 0, 0, 0), (5, 10, 196, 49, 6)],
)
def test_unary_iteration(n_classes, size, t, tof, anc):
    est = unary_iteration_resources(n_classes, size)
    assert (est.t_count, est.toffoli_count, est.ancilla_qubits) == (t, tof, anc)


def test_estimates_are_integers_and_flagged():
    for est in (cyclic_increment_resources(4), cyclic_select_resources(4), unary_iteration_resources(3, 3)):
        d = est.to_dict()
        assert all(isinstance(d[k], int) for k in ("t_count", "toffoli_count", "ancilla_qubits"))
        assert d["notes"]


def test_invalid_inputs():
    with pytest.raises(ValueError):
        cyclic_increment_resources(0)
    with pytest.raises(ValueError):
        cyclic_select_resources(2, "ripple")
    with pytest.raises(ValueError):
        ResourceEstimate(-1, 0, 0, "linear")


def test_table_rows():
    rows = resource_table(range(1, 4), "adder")
    assert [r["m"] for r in rows] == [1, 2, 3]
    assert rows[2]["select_t"] == 72
