"""Closed-form fault-tolerant cost estimates.

Counts are leading terms only (the additive constants are unspecified), and
every estimate says so in ``notes``. All arithmetic is integer.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

SCHEMES = ("incrementer", "adder")


@dataclass(frozen=True)
class ResourceEstimate:
    t_count: int
    toffoli_count: int
    ancilla_qubits: int
    depth_class: str
    notes: str = "leading term; additive constants dropped"

    def __post_init__(self):
        if min(self.t_count, self.toffoli_count, self.ancilla_qubits) < 0:
            raise ValueError("resource counts must be non-negative")

    def to_dict(self) -> dict:
        return asdict(self)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def _check_scheme(scheme: str):
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")


def cyclic_increment_resources(m: int, scheme: str = "incrementer") -> ResourceEstimate:
    """One application of the shift ``|j> -> |j+1 mod 2^m>``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_scheme(scheme)
    if scheme == "incrementer":
        return ResourceEstimate(12 * (m + 1), 3 * (m + 1), _ceil_log2(m), "linear")
    return ResourceEstimate(8 * m, 4 * m, m, "linear")


def cyclic_select_resources(m: int, scheme: str = "adder") -> ResourceEstimate:
    """Ancilla-controlled ``T^v`` for ``v`` in ``[0, 2^m)``.

    The adder adds the ancilla value directly (quadratic in ``m``); the
    incrementer route applies ``2^m - 1`` controlled increments in total
    (``2^j`` for ancilla bit ``j``), which is exponential.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_scheme(scheme)
    if scheme == "adder":
        return ResourceEstimate(8 * m * m, 4 * m * m, m, "quadratic")
    reps = 2**m - 1
    one = cyclic_increment_resources(m, "incrementer")
    return ResourceEstimate(
        reps * one.t_count,
        reps * one.toffoli_count,
        one.ancilla_qubits,
        "exponential",
        notes=f"{reps} sequential controlled increments; per-increment leading term",
    )


def select_applications(m: int) -> int:
    return sum(2**j for j in range(m))


def unary_iteration_resources(n_classes: int, max_class_size: int) -> ResourceEstimate:
    """Unary iteration over ``D = N_conj * max|C|`` indexed operations."""
    if n_classes < 1 or max_class_size < 1:
        raise ValueError("class count and size must be >= 1")
    D = n_classes * max_class_size
    anc = max(0, _ceil_log2(n_classes) + _ceil_log2(max_class_size) - 1)
    return ResourceEstimate(4 * D - 4, D - 1, anc, "linear in D")


def resource_table(m_values, scheme: str) -> list[dict]:
    rows = []
    for m in m_values:
        inc, sel = cyclic_increment_resources(m, scheme), cyclic_select_resources(m, scheme)
        rows.append(
            {
                "m": m,
                "scheme": scheme,
                "increment_t": inc.t_count,
                "increment_toffoli": inc.toffoli_count,
                "increment_ancilla": inc.ancilla_qubits,
                "select_t": sel.t_count,
                "select_toffoli": sel.toffoli_count,
                "select_depth_class": sel.depth_class,
            }
        )
    return rows

