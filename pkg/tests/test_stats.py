"""Rank and variance tests against hand-derived and reference oracles."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest
from scipy import stats as scipy_stats

from roomroam.stats import InvalidGroupsError, analyze_groups, kruskal_wallis, levene


class TestKruskalWallis:
    def test_hand_derived_three_groups(self):
        # Ranks 1..9 split contiguously: H = 12/90 * (36+225+576)/3 - 30 = 7.2,
        # df=2 survival is exp(-H/2).
        h, p, eta2 = kruskal_wallis([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        assert h == pytest.approx(7.2, abs=1e-12)
        assert p == pytest.approx(math.exp(-3.6), rel=1e-12)
        assert p == pytest.approx(0.02732, abs=5e-6)
        assert eta2 == pytest.approx((7.2 - 2) / 6)

    def test_identical_groups_all_ties(self):
        h, p, _ = kruskal_wallis([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
        assert h == 0.0
        assert p == 1.0

    def test_monotone_transform_invariance(self):
        rng = random.Random(5)
        groups = [[rng.uniform(0, 10) for _ in range(7)] for _ in range(3)]
        h1, p1, e1 = kruskal_wallis(groups)
        transformed = [[math.exp(x) + 3 for x in g] for g in groups]
        h2, p2, e2 = kruskal_wallis(transformed)
        assert h1 == pytest.approx(h2, rel=1e-12)
        assert p1 == pytest.approx(p2, rel=1e-12)

    def test_matches_scipy_with_ties(self):
        rng = random.Random(8)
        for _ in range(20):
            groups = [
                [rng.randint(0, 6) for _ in range(rng.randint(3, 12))] for _ in range(3)
            ]
            if all(len(set(g)) == 1 for g in groups) and len({g[0] for g in groups}) == 1:
                continue
            h, p, _ = kruskal_wallis(groups)
            ref = scipy_stats.kruskal(*groups)
            assert h == pytest.approx(ref.statistic, rel=1e-10)
            assert p == pytest.approx(ref.pvalue, rel=1e-8)

    def test_errors(self):
        with pytest.raises(InvalidGroupsError):
            kruskal_wallis([[1, 2, 3]])
        with pytest.raises(InvalidGroupsError):
            kruskal_wallis([[1, 2], []])


class TestLevene:
    def test_degenerate_all_constant(self):
        stat, p = levene([[2, 2, 2], [5, 5], [1, 1, 1]])
        assert (stat, p) == (0.0, 1.0)

    def test_within_degenerate_diverges(self):
        # z-values (2,2) and (1,1): between-group spread with zero
        # within-group spread puts the F statistic at infinity.
        stat, p = levene([[0, 4], [1, 3]])
        assert stat == math.inf
        assert p == 0.0

    def test_hand_arithmetic_oracle(self):
        # groups [1,2,3,4], [10,20,30,40]: z deviations give between = 162,
        # within = 101, W = 6 * 162 / 101.
        stat, p = levene([[1, 2, 3, 4], [10, 20, 30, 40]])
        assert stat == pytest.approx(6 * 162 / 101, rel=1e-12)
        assert stat > 0
        assert p < 0.5

    def test_matches_scipy(self):
        rng = random.Random(2)
        for _ in range(20):
            groups = [
                [rng.gauss(0, s) for _ in range(rng.randint(4, 10))]
                for s in (1.0, 2.5, 0.7)
            ]
            stat, p = levene(groups)
            ref = scipy_stats.levene(*groups, center="mean")
            assert stat == pytest.approx(ref.statistic, rel=1e-10)
            assert p == pytest.approx(ref.pvalue, rel=1e-8)

    def test_errors(self):
        with pytest.raises(InvalidGroupsError):
            levene([[1, 2]])
        with pytest.raises(InvalidGroupsError):
            levene([[1, 2], [3]])


class TestAnalyzeGroups:
    def test_report_shape(self):
        report = analyze_groups([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0, 7.0]])
        assert report.group_sizes == [3, 4]
        assert report.group_means == [pytest.approx(2.0), pytest.approx(5.5)]
        assert report.group_sds[0] == pytest.approx(1.0)
        assert 0 <= report.kw_p <= 1
        assert 0 <= report.levene_p <= 1
        json_obj = report.to_json()
        assert set(json_obj) == {
            "group_sizes", "group_means", "group_sds",
            "kw_h", "kw_p", "kw_eta2", "levene_stat", "levene_p",
        }
