"""Exact symmetric-function primitives over integer vectors.

Everything here is plain Python integer arithmetic, so results are exact for
arbitrarily large inputs.  These are the building blocks for the closed-form
moment formulas: falling factorials, elementary symmetric polynomials, power
sums, and the Newton-identity route to e1..e3.
"""

from __future__ import annotations

from collections.abc import Sequence


def falling_factorial(a: int, b: int) -> int:
    """Product a*(a-1)*...*(a-b+1); 1 when b == 0, 0 when b > a >= 0.

    Both arguments must be non-negative integers.
    """
    if a < 0 or b < 0:
        raise ValueError(f"falling_factorial requires a, b >= 0, got a={a}, b={b}")
    if b > a:
        return 0
    out = 1
    for j in range(b):
        out *= a - j
    return out


def elementary_symmetric(values: Sequence[int], k: int) -> int:
    """k-th elementary symmetric polynomial of `values` (sum over k-subsets).

    Returns 1 for k == 0 and 0 for k < 0 or k > len(values).  One-row DP,
    O(len(values) * k) integer multiplications.
    """
    s = len(values)
    if k < 0 or k > s:
        return 0
    if k == 0:
        return 1
    # row[j] holds e_j of the prefix processed so far; update descending so
    # each value is used at most once per subset
    row = [0] * (k + 1)
    row[0] = 1
    for i, x in enumerate(values):
        for j in range(min(i + 1, k), 0, -1):
            row[j] += x * row[j - 1]
    return row[k]


def power_sum(values: Sequence[int], k: int) -> int:
    """Sum of k-th powers; len(values) when k == 0."""
    if k < 0:
        raise ValueError(f"power_sum requires k >= 0, got k={k}")
    if k == 0:
        return len(values)
    return sum(x**k for x in values)


def e_from_newton(values: Sequence[int]) -> tuple[int, int, int]:
    """(e1, e2, e3) computed from power sums via Newton's identities.

    Requires len(values) >= 3.  Used as an independent route to cross-check
    the DP in `elementary_symmetric`; the divisions below are exact for
    integer inputs.
    """
    if len(values) < 3:
        raise ValueError(
            f"e_from_newton requires at least 3 values, got {len(values)}"
        )
    p1 = power_sum(values, 1)
    p2 = power_sum(values, 2)
    p3 = power_sum(values, 3)
    e1 = p1
    e2 = (p1 * p1 - p2) // 2
    e3 = (p1**3 - 3 * p1 * p2 + 2 * p3) // 6
    return e1, e2, e3
