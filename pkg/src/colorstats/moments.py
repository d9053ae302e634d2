"""Closed-form moments of monochromatic edge counts under random colorings.

For a graph G with m edges and a composition (c_1, ..., c_s) of its vertex
count, M_i is the number of edges whose endpoints both receive color i,
M is their total, and L = m - M is the bichromatic count.  The formulas
below give exact means and variances in terms of m, the degree second
moment, and falling factorials / elementary symmetric polynomials of the
class sizes.  Rational arithmetic is authoritative; each formula also has a
float mirror (suffix _float) for long sweeps, tested to agree to relative
1e-9.

Variance formulas divide by the falling factorial of n over 4 entries and
therefore require n >= 4; for n in {2, 3} use the exhaustive distribution
in the oracle module instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coloring import Composition, imbalance
from .graph import Graph, GraphStats, stats, zeta_squared
from .symfun import falling_factorial as ff


def _require_n4(n: int, what: str) -> None:
    if n < 4:
        raise ValueError(
            f"{what} requires n >= 4 (degree-4 falling factorial vanishes); "
            "use oracle.enumerate_colorings for tiny graphs"
        )


def mean_Mi(m: int, n: int, c_i: int) -> Fraction:
    """E[M_i] = m * (c_i)_2 / (n)_2."""
    if n < 2:
        raise ValueError(f"mean_Mi needs n >= 2, got n={n}")
    return Fraction(m * ff(c_i, 2), ff(n, 2))


def var_Mi(st: GraphStats, c: Composition, color: int) -> Fraction:
    """Var[M_i] for color i (1-based), from the graph's (m, sigma2) summary."""
    n, m = st.n, st.m
    _require_n4(n, "var_Mi")
    if c.n != n:
        raise ValueError(f"composition covers {c.n} vertices but graph has {n}")
    if not (1 <= color <= c.s):
        raise ValueError(f"color must lie in 1..{c.s}, got {color}")
    ci = c.classes[color - 1]
    q2 = Fraction(ff(ci, 2), ff(n, 2))
    q3 = Fraction(ff(ci, 3), ff(n, 3))
    q4 = Fraction(ff(ci, 4), ff(n, 4))
    sigma2_coeff = Fraction(ff(ci, 3) * (n - ci), ff(n, 4))
    return sigma2_coeff * st.sigma2 - (q2 * q2 - q4) * m * m + (q2 - 2 * q3 + q4) * m


def coefficients_ab(c: Composition) -> tuple[Fraction, Fraction]:
    """The pair (a, b) entering Var[L] = (a-b)*sigma2 + ... for composition c.

    a is the probability that one fixed edge plus one fixed extra vertex
    are bichromatic in every pair; b plays the same role for two disjoint
    fixed edges.  Both are rational functions of the elementary symmetric
    polynomials e_2, e_3 of the class sizes.
    """
    n = c.n
    _require_n4(n, "coefficients_ab")
    e2, e3 = c.elementary(2), c.elementary(3)
    a = Fraction(e2, ff(n, 2)) + Fraction(3 * e3, ff(n, 3))
    b = Fraction(4, ff(n, 4)) * (e2 * e2 - (n - 1) * e2 - 3 * e3)
    return a, b


def mean_M_L(m: int, c: Composition) -> tuple[Fraction, Fraction]:
    """(E[M], E[L]); they sum to m exactly."""
    n = c.n
    if n < 2:
        raise ValueError(f"mean_M_L needs n >= 2, got n={n}")
    mean_l = Fraction(2 * m * c.elementary(2), ff(n, 2))
    return m - mean_l, mean_l


def var_common(st: GraphStats, c: Composition) -> Fraction:
    """Common variance of M and of L (they differ by the constant m)."""
    n, m = st.n, st.m
    _require_n4(n, "var_common")
    if c.n != n:
        raise ValueError(f"composition covers {c.n} vertices but graph has {n}")
    a, b = coefficients_ab(c)
    q = Fraction(c.elementary(2), ff(n, 2))
    return (a - b) * st.sigma2 + (b - 4 * q * q) * m * m + (2 * q - 2 * a + b) * m


def rho(c: Composition) -> Fraction:
    """Imbalance functional p3(gamma) - p2(gamma)^2 of the class proportions.

    Non-negative, and zero exactly when the composition is perfectly
    balanced; the product rho * zeta_sq is the leading term of the
    normalized variance.
    """
    g = c.gamma()
    p2 = sum((x * x for x in g), start=Fraction(0))
    p3 = sum((x**3 for x in g), start=Fraction(0))
    return p3 - p2 * p2


def pz_lower_bound(theta: Fraction | float, var: Fraction, m: int) -> Fraction:
    """Anti-concentration bound: P(|L - E L| > theta * E|L - E L|) >= this.

    Valid for any statistic bounded by m, hence for L.  Requires
    0 <= theta < 1.
    """
    th = Fraction(theta)
    if not (0 <= th < 1):
        raise ValueError(f"theta must lie in [0, 1), got {theta}")
    if m < 1:
        raise ValueError(f"pz_lower_bound needs m >= 1, got m={m}")
    return (1 - th) ** 2 * var / (m * m)


@dataclass(frozen=True)
class MomentReport:
    """Exact moment summary of one (graph, composition) cell."""

    n: int
    m: int
    classes: tuple[int, ...]
    per_color_mean: tuple[Fraction, ...]
    per_color_var: tuple[Fraction, ...]
    mean_M: Fraction
    mean_L: Fraction
    var_common: Fraction
    a_c: Fraction
    b_c: Fraction
    rho: Fraction
    zeta_sq: Fraction
    imbalance_sq: Fraction
    normalized_var: Fraction

    def to_json_dict(self) -> dict:
        """Flat JSON object; rationals as {"num", "den"} plus float mirrors."""
        out: dict = {"n": self.n, "m": self.m, "classes": list(self.classes)}
        for name in ("per_color_mean", "per_color_var"):
            vals = getattr(self, name)
            out[name] = [rat_json(x) for x in vals]
            out[name + "_float"] = [float(x) for x in vals]
        for name in (
            "mean_M",
            "mean_L",
            "var_common",
            "a_c",
            "b_c",
            "rho",
            "zeta_sq",
            "imbalance_sq",
            "normalized_var",
        ):
            val = getattr(self, name)
            out[name] = rat_json(val)
            out[name + "_float"] = float(val)
        return out


def rat_json(x: Fraction) -> dict:
    """Exact JSON encoding of a rational."""
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def full_report(g: Graph, c: Composition) -> MomentReport:
    """All exact moments and regime diagnostics for one cell.

    Requires n >= 4 (variance formulas) and m >= 1 (normalization by m^2).
    """
    if g.n != c.n:
        raise ValueError(f"composition covers {c.n} vertices but graph has {g.n}")
    _require_n4(g.n, "full_report")
    if g.m == 0:
        raise ValueError("full_report needs at least one edge")
    st = stats(g)
    a, b = coefficients_ab(c)
    mean_m, mean_l = mean_M_L(g.m, c)
    var = var_common(st, c)
    return MomentReport(
        n=g.n,
        m=g.m,
        classes=c.classes,
        per_color_mean=tuple(mean_Mi(g.m, g.n, ci) for ci in c.classes),
        per_color_var=tuple(var_Mi(st, c, i) for i in range(1, c.s + 1)),
        mean_M=mean_m,
        mean_L=mean_l,
        var_common=var,
        a_c=a,
        b_c=b,
        rho=rho(c),
        zeta_sq=zeta_squared(g),
        imbalance_sq=imbalance(c),
        normalized_var=var / (g.m * g.m),
    )


# ── float mirror ──────────────────────────────────────────────────────────
# Same formulas in 64-bit floats, for sweeps where building Fractions is
# wasteful.  Tested against the exact path to relative 1e-9.


def _ff_f(a: float, b: int) -> float:
    out = 1.0
    for j in range(b):
        out *= a - j
    return out


def mean_Mi_float(m: int, n: int, c_i: int) -> float:
    return m * _ff_f(c_i, 2) / _ff_f(n, 2)


def var_Mi_float(sigma2: int, m: int, n: int, c_i: int) -> float:
    q2 = _ff_f(c_i, 2) / _ff_f(n, 2)
    q3 = _ff_f(c_i, 3) / _ff_f(n, 3)
    q4 = _ff_f(c_i, 4) / _ff_f(n, 4)
    coeff = _ff_f(c_i, 3) * (n - c_i) / _ff_f(n, 4)
    return coeff * sigma2 - (q2 * q2 - q4) * m * m + (q2 - 2 * q3 + q4) * m


def coefficients_ab_float(c: Composition) -> tuple[float, float]:
    n = c.n
    e2, e3 = c.elementary(2), c.elementary(3)
    a = e2 / _ff_f(n, 2) + 3 * e3 / _ff_f(n, 3)
    b = 4 / _ff_f(n, 4) * (e2 * e2 - (n - 1) * e2 - 3 * e3)
    return a, b


def mean_M_L_float(m: int, c: Composition) -> tuple[float, float]:
    mean_l = 2 * m * c.elementary(2) / _ff_f(c.n, 2)
    return m - mean_l, mean_l


def var_common_float(sigma2: int, m: int, c: Composition) -> float:
    a, b = coefficients_ab_float(c)
    q = c.elementary(2) / _ff_f(c.n, 2)
    return (a - b) * sigma2 + (b - 4 * q * q) * m * m + (2 * q - 2 * a + b) * m


def rho_float(c: Composition) -> float:
    n = c.n
    p2 = sum((ci / n) ** 2 for ci in c.classes)
    p3 = sum((ci / n) ** 3 for ci in c.classes)
    return p3 - p2 * p2
