"""Random graph models, the ratio criterion, and spec-string parsing."""

import math
from fractions import Fraction

import numpy as np
import pytest

from colorstats.randgraph import (
    ChungLu,
    ConfigModel,
    DegreeLaw,
    GeometricTorus,
    Gnp,
    _decode_pairs,
    assumption_star_check,
    classify_ratio_trend,
    config_sample,
    fit_power_law,
    generate,
    parse_model,
    parse_model_template,
    ratio_closed_form,
    ratio_monte_carlo,
    ratio_over_grid,
    star_like,
)
from colorstats.seeds import stream

MIXED_LAW = DegreeLaw((1, 3), (Fraction(1, 2), Fraction(1, 2)))
DELTA3 = DegreeLaw((3,), (Fraction(1),))


class TestModelValidation:
    def test_gnp(self):
        with pytest.raises(ValueError):
            Gnp(0, Fraction(1, 2))
        with pytest.raises(ValueError):
            Gnp(5, Fraction(3, 2))

    def test_degree_law(self):
        with pytest.raises(ValueError):
            DegreeLaw((1, 2), (Fraction(1),))
        with pytest.raises(ValueError):
            DegreeLaw((-1,), (Fraction(1),))
        with pytest.raises(ValueError):
            DegreeLaw((1, 2), (Fraction(1, 2), Fraction(1, 3)))
        with pytest.raises(ValueError, match="zero mean"):
            DegreeLaw((0,), (Fraction(1),))

    def test_geo(self):
        with pytest.raises(ValueError):
            GeometricTorus(10, 0.0)
        with pytest.raises(ValueError):
            GeometricTorus(10, 0.6)

    def test_chung_lu(self):
        with pytest.raises(ValueError):
            ChungLu(3, (1, 1))
        with pytest.raises(ValueError):
            ChungLu(2, (1, 0))
        with pytest.raises(ValueError):
            star_like(1)

    def test_law_moments(self):
        assert MIXED_LAW.mean == 2
        assert MIXED_LAW.second_moment == 5
        assert DELTA3.mean == 3 and DELTA3.second_moment == 9


class TestGeneration:
    def test_pair_decoding(self):
        want = [(u, v) for u in range(6) for v in range(u + 1, 6)]
        assert _decode_pairs(np.arange(15), 6) == want

    def test_gnp_extremes(self):
        rng = stream(1)
        assert generate(Gnp(12, Fraction(0)), rng).m == 0
        assert generate(Gnp(6, Fraction(1)), rng).m == 15

    def test_deterministic(self):
        spec = Gnp(50, Fraction(7, 100))
        a = generate(spec, stream(3))
        b = generate(spec, stream(3))
        assert a.edges == b.edges

    def test_config_sample_conservation(self):
        spec = ConfigModel(40, MIXED_LAW)
        for t in range(10):
            samp = config_sample(spec, stream(9, t))
            assert sum(samp.pre_degrees) % 2 == 0
            assert samp.pre_m == sum(samp.pre_degrees) // 2
            assert samp.pre_sigma2 == sum(d * d for d in samp.pre_degrees)
            assert samp.graph.m <= samp.pre_m
            assert all(
                got <= pre
                for got, pre in zip(samp.graph.degrees, samp.pre_degrees)
            )

    def test_torus_degrees_bounded(self):
        g = generate(GeometricTorus(30, 0.1), stream(4))
        assert g.n == 30
        assert all(d < 30 for d in g.degrees)


class TestClosedForm:
    def test_gnp_is_exact_fraction(self):
        crit = ratio_closed_form(Gnp(10, Fraction(1, 2)))
        # mean degree 9/2, second moment 9/4 + 81/4 = 90/4; numerator 225,
        # denominator (45/2)^2
        assert crit.numerator == Fraction(225)
        assert crit.ratio == Fraction(225 * 4, 45 * 45)
        assert crit.mode == "closed_form"
        assert crit.verdict == "inconclusive"

    def test_config_delta3(self):
        crit = ratio_closed_form(ConfigModel(500, DELTA3))
        assert crit.ratio == Fraction(4, 500)

    def test_uniform_weights_reduce_to_bernoulli(self):
        for n, w in [(30, 3), (50, 2)]:
            cl = ratio_closed_form(ChungLu(n, (w,) * n))
            bp = ratio_closed_form(Gnp(n, Fraction(w, n)))
            assert cl.ratio == bp.ratio

    def test_geo_matches_density(self):
        r = 0.2
        geo = ratio_closed_form(GeometricTorus(40, r))
        bp = ratio_closed_form(Gnp(40, math.pi * r * r))
        assert geo.ratio == pytest.approx(float(bp.ratio), rel=1e-12)
        assert geo.model.startswith("geo(")

    def test_star_like_stays_flat(self):
        ratios = [float(ratio_closed_form(star_like(n)).ratio) for n in (200, 400, 800)]
        assert all(r > 0.05 for r in ratios)


class TestMonteCarlo:
    def test_needs_trials(self):
        with pytest.raises(ValueError):
            ratio_monte_carlo(Gnp(10, Fraction(1, 2)), trials=1, seed=0)

    def test_deterministic_given_seed(self):
        spec = Gnp(60, Fraction(1, 10))
        a = ratio_monte_carlo(spec, trials=20, seed=7)
        b = ratio_monte_carlo(spec, trials=20, seed=7)
        assert a == b
        c = ratio_monte_carlo(spec, trials=20, seed=8)
        assert a.ratio != c.ratio

    @pytest.mark.parametrize("p", [Fraction(1, 20), Fraction(3, 10)], ids=["sparse", "dense"])
    def test_gnp_within_four_se(self, p):
        spec = Gnp(200, p)
        closed = float(ratio_closed_form(spec).ratio)
        mc = ratio_monte_carlo(spec, trials=300, seed=1234)
        assert mc.ratio_se is not None and mc.ratio_se > 0
        assert abs(mc.ratio - closed) <= 4 * mc.ratio_se

    def test_torus_within_four_se(self):
        spec = GeometricTorus(60, 0.2)
        closed = ratio_closed_form(spec).ratio
        mc = ratio_monte_carlo(spec, trials=300, seed=88)
        assert abs(mc.ratio - closed) <= 4 * mc.ratio_se

    def test_config_deterministic_law_is_exact(self):
        spec = ConfigModel(200, DELTA3)
        mc = ratio_monte_carlo(spec, trials=5, seed=0)
        assert mc.ratio == float(Fraction(4, 200))
        assert mc.ratio_se == 0.0
        assert mc.post_erasure_ratio is not None
        assert mc.post_erasure_ratio >= mc.ratio

    def test_config_mixed_law_close(self):
        spec = ConfigModel(200, MIXED_LAW)
        closed = float(ratio_closed_form(spec).ratio)
        mc = ratio_monte_carlo(spec, trials=300, seed=55)
        assert abs(mc.ratio - closed) / closed < 0.05


class TestTrendClassifier:
    def test_power_law_fit_recovers_slope(self):
        ns = [50, 100, 200, 400]
        vals = [3.0 * n**-0.7 for n in ns]
        assert fit_power_law(ns, vals) == pytest.approx(-0.7, abs=1e-12)
        with pytest.raises(ValueError):
            fit_power_law([10], [1.0])
        with pytest.raises(ValueError):
            fit_power_law([10, 20], [1.0, 0.0])

    def test_verdicts(self):
        assert classify_ratio_trend([100, 1000], [0.04, 0.004]) == "concentrates"
        assert classify_ratio_trend([100, 1000], [0.3, 0.301]) == "anti_concentrates"
        assert classify_ratio_trend([100, 1000], [0.0, 0.0]) == "concentrates"
        assert classify_ratio_trend([100, 1000], [0.0, 0.1]) == "inconclusive"
        assert classify_ratio_trend([100, 1000], [10.0, 1.0]) == "inconclusive"
        assert classify_ratio_trend([100], [0.3]) == "inconclusive"
        assert classify_ratio_trend([100, 1000], [0.3, None]) == "inconclusive"

    def test_grid_closed_form(self):
        # dense Bernoulli pairs: the ratio is exactly 4 / (n - 1)
        res = ratio_over_grid(lambda n: Gnp(n, Fraction(1, 2)), [20, 40, 80, 160])
        assert [p.ratio for p in res.points] == [
            Fraction(4, n - 1) for n in (20, 40, 80, 160)
        ]
        assert res.verdict == "concentrates"
        assert all(p.verdict == "concentrates" for p in res.points)
        res = ratio_over_grid(star_like, [200, 400, 800])
        assert res.verdict == "anti_concentrates"

    def test_grid_monte_carlo(self):
        res = ratio_over_grid(
            lambda n: Gnp(n, 4.0 / n), [100, 200, 400], mode="monte_carlo",
            trials=100, seed=9,
        )
        assert res.verdict == "concentrates"
        assert all(p.mode == "monte_carlo" for p in res.points)

    def test_grid_mode_validated(self):
        with pytest.raises(ValueError, match="mode"):
            ratio_over_grid(star_like, [10, 20], mode="guess")


class TestEdgeCountCheck:
    def test_bernoulli_pairs_hold(self):
        chk = assumption_star_check(
            lambda n: Gnp(n, Fraction(1, 2)), [40, 80, 160], trials=300, seed=2
        )
        assert chk.holds
        assert chk.exponent == pytest.approx(-2.0, abs=0.5)

    def test_deterministic_total_holds_trivially(self):
        chk = assumption_star_check(
            lambda n: ConfigModel(n, DELTA3), [50, 100], trials=50, seed=3
        )
        assert chk.values == (0.0, 0.0)
        assert chk.exponent is None
        assert chk.holds

    def test_edgeless_model_refused(self):
        with pytest.raises(ValueError, match="no edges"):
            assumption_star_check(lambda n: Gnp(n, Fraction(0)), [10, 20], trials=10, seed=0)


class TestSpecStrings:
    def test_gnp(self):
        spec = parse_model("gnp:n=40,p=1/5")
        assert spec == Gnp(40, Fraction(1, 5))

    def test_parameter_expressions(self):
        spec = parse_model_template("gnp:p=4/n")(100)
        assert isinstance(spec, Gnp) and spec.p == pytest.approx(0.04)
        geo = parse_model_template("geo:r=1/(2*sqrt(n))")(25)
        assert geo == GeometricTorus(25, 0.1)

    def test_config_law_with_commas(self):
        spec = parse_model("config:n=20,law=1:1/2,3:1/2")
        assert spec == ConfigModel(20, MIXED_LAW)

    def test_starlike(self):
        spec = parse_model_template("starlike")(8)
        assert spec == ChungLu(8, (8, 1, 1, 1, 1, 1, 1, 1))
        spec = parse_model("starlike:n=6")
        assert spec.n == 6

    def test_weights_file(self, tmp_path):
        f = tmp_path / "w.txt"
        f.write_text("2 2 1/2\n")
        spec = parse_model_template(f"cl:w={f}")(3)
        assert spec == ChungLu(3, (2, 2, Fraction(1, 2)))

    def test_grid_overrides_embedded_n(self):
        template = parse_model_template("gnp:n=10,p=0.25")
        assert template(None).n == 10
        assert template(77).n == 77

    @pytest.mark.parametrize(
        "text",
        ["foo:p=1", "gnp:n=10", "gnp:0.5", "gnp"],
    )
    def test_rejected_at_build(self, text):
        with pytest.raises(ValueError):
            parse_model_template(text)

    @pytest.mark.parametrize(
        "text",
        ["config:n=5,law=3", "gnp:n=10,p=q+1"],
    )
    def test_rejected_at_evaluation(self, text):
        with pytest.raises(ValueError):
            parse_model(text)

    def test_missing_n_rejected_at_build(self):
        with pytest.raises(ValueError, match="fix n"):
            parse_model("gnp:p=0.1")
