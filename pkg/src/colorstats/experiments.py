"""Sweep harness: regime classification along n-grids and MC cross-checks.

A family couples a graph family (deterministic generator or random model
template) with a coloring rule (balanced classes or fixed ratios) over an
n-grid.  run_regime evaluates the exact dispersion/imbalance diagnostics
per grid point, optionally adds empirical moments from sampled colorings,
and classifies the predicted regime; run_comparison checks one cell's
empirical moments against the exact formulas at 4 standard errors.

All emission is deterministic: rationals are written as {"num", "den"}
objects with float mirrors alongside, in a fixed field order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Callable, Sequence

import numpy as np

from .coloring import Composition, count_batch, sample_batch
from .graph import Graph, complete, cycle, path, regular_circulant, star
from .moments import full_report, pz_lower_bound, rat_json
from .randgraph import ModelSpec, generate, parse_model_template
from .seeds import stream

# Regime thresholds: the dispersion ratio is treated as order-one when it
# exceeds ZETA_THRESHOLD at the largest n without a decreasing power-law
# trend, and an imbalance is persistent when it exceeds IMBALANCE_THRESHOLD
# at every grid point.  Both are finite-grid proxies for asymptotic
# statements; the CLI exposes flags to override them.
ZETA_THRESHOLD = 0.2
IMBALANCE_THRESHOLD = 1e-3

_MODEL_KINDS = ("gnp", "config", "geo", "cl", "starlike")

_DETERMINISTIC = {
    "star": star,
    "cycle": cycle,
    "path": path,
    "complete": complete,
}


def parse_coloring_rule(text: str) -> Callable[[int], Composition]:
    """Coloring rule from "balanced:s" or a comma list of ratios ("3/4,1/4")."""
    text = text.strip()
    if text.lower().startswith("balanced"):
        _, sep, s = text.partition(":")
        if not sep:
            raise ValueError("balanced rule needs a class count, e.g. balanced:2")
        s_int = int(s)
        return lambda n: Composition.balanced(n, s_int)
    ratios = tuple(Fraction(tok) for tok in text.split(","))
    return lambda n: Composition.from_ratios(n, ratios)


@dataclass(frozen=True)
class FamilySpec:
    """A graph family, a coloring rule, and the n-grid to sweep.

    graph is either a deterministic family ("star", "cycle", "path",
    "complete", "circulant:d=4") or a random model template understood by
    randgraph.parse_model_template.
    """

    graph: str
    coloring: str
    grid: tuple[int, ...]

    def __post_init__(self):
        if len(self.grid) < 1:
            raise ValueError("family grid must be nonempty")
        if any(n < 4 for n in self.grid):
            raise ValueError(f"grid entries must be >= 4, got {self.grid}")

    @property
    def is_random(self) -> bool:
        kind = self.graph.partition(":")[0].strip().lower()
        return kind in _MODEL_KINDS

    def graph_for(self, n: int) -> Graph:
        name, _, rest = self.graph.partition(":")
        name = name.strip().lower()
        if name in _DETERMINISTIC:
            return _DETERMINISTIC[name](n)
        if name == "circulant":
            params = dict(kv.split("=") for kv in rest.split(","))
            return regular_circulant(n, int(params["d"]))
        raise ValueError(f"unknown deterministic family {self.graph!r}")

    def model_for(self, n: int) -> ModelSpec:
        return parse_model_template(self.graph)(n)

    def composition_for(self, n: int) -> Composition:
        return parse_coloring_rule(self.coloring)(n)


@dataclass(frozen=True)
class RegimeRow:
    """Exact diagnostics (plus optional empirical moments) at one grid point."""

    n: int
    zeta_sq: Fraction
    rho: Fraction
    imbalance_sq: Fraction
    normalized_var: Fraction
    rho_zeta_product: Fraction
    pz_bound: Fraction
    empirical_mean: float | None
    empirical_var: float | None
    predicted_regime: str


def _empirical_fixed(g: Graph, c: Composition, trials: int, rng) -> tuple[float, float]:
    ms = count_batch(g, sample_batch(c, trials, rng))
    return float(ms.mean()), float(ms.var(ddof=1))


def _empirical_random(
    model: ModelSpec, c: Composition, trials: int, seed: int, n: int
) -> tuple[float, float]:
    base = np.repeat(np.arange(1, c.s + 1, dtype=np.int64), c.classes)
    ms = np.empty(trials)
    for t in range(trials):
        rng = stream(seed, n, 2, t)
        g = generate(model, rng)
        colors = base.copy()
        rng.shuffle(colors)
        if g.m == 0:
            ms[t] = 0.0
            continue
        e = np.asarray(g.edges, dtype=np.intp)
        ms[t] = (colors[e[:, 0]] == colors[e[:, 1]]).sum()
    return float(ms.mean()), float(ms.var(ddof=1))


def _regime_point(family: FamilySpec, n: int, trials: int, seed: int):
    c = family.composition_for(n)
    if family.is_random:
        # exact columns come from one representative draw; the empirical
        # columns average over fresh graphs per trial
        model = family.model_for(n)
        for attempt in range(100):
            g = generate(model, stream(seed, n, 0, attempt))
            if g.m > 0:
                break
        else:
            raise ValueError(f"model {family.graph!r} at n={n} keeps coming up edgeless")
        report = full_report(g, c)
        emp = (
            _empirical_random(model, c, trials, seed, n) if trials > 0 else (None, None)
        )
    else:
        g = family.graph_for(n)
        report = full_report(g, c)
        emp = (
            _empirical_fixed(g, c, trials, stream(seed, n, 1))
            if trials > 0
            else (None, None)
        )
    return report, emp


def _classify(
    grid: Sequence[int],
    zetas: Sequence[Fraction],
    imbalances: Sequence[Fraction],
    zeta_threshold: float,
    imbalance_threshold: float,
) -> str:
    vals = [float(z) for z in zetas]
    flat = float(zetas[-1]) > zeta_threshold
    if flat and len(grid) >= 2 and all(v > 0 for v in vals):
        slope = float(
            np.polyfit(np.log(np.asarray(grid, dtype=float)), np.log(vals), 1)[0]
        )
        flat = slope > -0.1
    persistent = all(float(b) > imbalance_threshold for b in imbalances)
    return "anti_concentration" if (flat and persistent) else "concentration"


def run_regime(
    family: FamilySpec,
    trials: int = 0,
    seed: int = 0,
    theta: Fraction = Fraction(1, 2),
    zeta_threshold: float = ZETA_THRESHOLD,
    imbalance_threshold: float = IMBALANCE_THRESHOLD,
    threads: int = 1,
) -> list[RegimeRow]:
    """Sweep the family grid; returns one RegimeRow per n.

    With trials > 0 each point also gets empirical mean/variance of the
    monochromatic count (for random families: over fresh graphs per trial).
    Work is keyed by (seed, n), so the output is independent of `threads`.
    """
    grid = family.grid
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda n: _regime_point(family, n, trials, seed), grid)
            )
    else:
        results = [_regime_point(family, n, trials, seed) for n in grid]
    regime = _classify(
        grid,
        [rep.zeta_sq for rep, _ in results],
        [rep.imbalance_sq for rep, _ in results],
        zeta_threshold,
        imbalance_threshold,
    )
    rows = []
    for n, (rep, (emp_mean, emp_var)) in zip(grid, results):
        rows.append(
            RegimeRow(
                n=n,
                zeta_sq=rep.zeta_sq,
                rho=rep.rho,
                imbalance_sq=rep.imbalance_sq,
                normalized_var=rep.normalized_var,
                rho_zeta_product=rep.rho * rep.zeta_sq,
                pz_bound=pz_lower_bound(theta, rep.var_common, rep.m),
                empirical_mean=emp_mean,
                empirical_var=emp_var,
                predicted_regime=regime,
            )
        )
    return rows


@dataclass(frozen=True)
class ComparisonRecord:
    """Empirical vs exact moments of M for one cell, with 4-SE checks.

    The variance check uses the fourth-moment standard error of the sample
    variance; a degenerate cell (zero exact variance) requires exact
    agreement.
    """

    n: int
    m: int
    classes: tuple[int, ...]
    trials: int
    exact_mean: Fraction
    exact_var: Fraction
    empirical_mean: float
    empirical_var: float
    se_mean: float
    se_var: float
    mean_ok: bool
    var_ok: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "classes": list(self.classes),
            "trials": self.trials,
            "exact_mean": rat_json(self.exact_mean),
            "exact_mean_float": float(self.exact_mean),
            "exact_var": rat_json(self.exact_var),
            "exact_var_float": float(self.exact_var),
            "empirical_mean": self.empirical_mean,
            "empirical_var": self.empirical_var,
            "se_mean": self.se_mean,
            "se_var": self.se_var,
            "mean_ok": self.mean_ok,
            "var_ok": self.var_ok,
        }


def run_comparison(
    g: Graph, c: Composition, trials: int, seed: int, band: float = 4.0
) -> ComparisonRecord:
    """Sample `trials` colorings of g and compare M's moments to the formulas."""
    if trials < 2:
        raise ValueError(f"need at least 2 trials, got {trials}")
    report = full_report(g, c)
    ms = count_batch(g, sample_batch(c, trials, stream(seed))).astype(np.float64)
    emp_mean = float(ms.mean())
    emp_var = float(ms.var(ddof=1))
    se_mean = math.sqrt(emp_var / trials)
    centered = ms - emp_mean
    m4 = float((centered**4).mean())
    var_of_var = (m4 - (trials - 3) / (trials - 1) * emp_var**2) / trials
    se_var = math.sqrt(max(var_of_var, 0.0))
    exact_mean = report.mean_M
    exact_var = report.var_common
    if se_mean == 0.0:
        mean_ok = emp_mean == float(exact_mean)
    else:
        mean_ok = abs(emp_mean - float(exact_mean)) <= band * se_mean
    if se_var == 0.0:
        var_ok = emp_var == float(exact_var)
    else:
        var_ok = abs(emp_var - float(exact_var)) <= band * se_var
    return ComparisonRecord(
        n=g.n,
        m=g.m,
        classes=c.classes,
        trials=trials,
        exact_mean=exact_mean,
        exact_var=exact_var,
        empirical_mean=emp_mean,
        empirical_var=emp_var,
        se_mean=se_mean,
        se_var=se_var,
        mean_ok=mean_ok,
        var_ok=var_ok,
    )


# ── emission ──────────────────────────────────────────────────────────────

_RATIONAL_FIELDS = (
    "zeta_sq",
    "rho",
    "imbalance_sq",
    "normalized_var",
    "rho_zeta_product",
    "pz_bound",
)

# fixed CSV header: n, then num/den/float triples per rational field, then
# the empirical columns (blank when absent) and the regime label
REGIME_CSV_COLUMNS = (
    ("n",)
    + tuple(
        f"{name}_{part}" for name in _RATIONAL_FIELDS for part in ("num", "den", "float")
    )
    + ("empirical_mean", "empirical_var", "predicted_regime")
)


def regime_row_to_json(row: RegimeRow) -> dict:
    out: dict = {"n": row.n}
    for name in _RATIONAL_FIELDS:
        val = getattr(row, name)
        out[name] = rat_json(val)
        out[name + "_float"] = float(val)
    out["empirical_mean"] = row.empirical_mean
    out["empirical_var"] = row.empirical_var
    out["predicted_regime"] = row.predicted_regime
    return out


def regime_row_from_json(obj: dict) -> RegimeRow:
    kwargs = {"n": obj["n"]}
    for name in _RATIONAL_FIELDS:
        kwargs[name] = Fraction(obj[name]["num"], obj[name]["den"])
    kwargs["empirical_mean"] = obj["empirical_mean"]
    kwargs["empirical_var"] = obj["empirical_var"]
    kwargs["predicted_regime"] = obj["predicted_regime"]
    return RegimeRow(**kwargs)


def emit(rows: Sequence[RegimeRow], fmt: str, path_or_file) -> None:
    """Write rows as a JSON array or CSV table; output is deterministic."""
    if fmt == "json":
        text = json.dumps([regime_row_to_json(r) for r in rows], indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REGIME_CSV_COLUMNS)
        for row in rows:
            record = [row.n]
            for name in _RATIONAL_FIELDS:
                val = getattr(row, name)
                record.extend([val.numerator, val.denominator, float(val)])
            record.append("" if row.empirical_mean is None else row.empirical_mean)
            record.append("" if row.empirical_var is None else row.empirical_var)
            record.append(row.predicted_regime)
            writer.writerow(record)
        text = buf.getvalue()
    else:
        raise ValueError(f"format must be json or csv, got {fmt!r}")
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        with open(path_or_file, "w", encoding="utf-8") as fh:
            fh.write(text)


def parse_rows_json(text: str) -> list[RegimeRow]:
    return [regime_row_from_json(obj) for obj in json.loads(text)]
