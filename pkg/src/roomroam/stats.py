"""Rank and variance tests for the reset-count analysis.

Implements the Kruskal-Wallis H test (midrank tie correction, chi-square
p-value) and the classic mean-centered Levene test (F-distribution p-value)
directly from their defining formulas; scipy supplies only the regularized
incomplete gamma/beta survival functions.  Note Levene is reported here as
an F statistic, the test's standard form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special


class InvalidGroupsError(ValueError):
    """Group structure unusable for the requested test."""


def _midranks(values: np.ndarray) -> tuple[np.ndarray, float]:
    """Ranks 1..N with ties sharing their average rank.

    Returns (ranks, tie_term) where tie_term = sum(t^3 - t) over tie groups.
    """
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values), dtype=np.float64)
    tie_term = 0.0
    i = 0
    n = len(values)
    sorted_vals = values[order]
    while i < n:
        j = i
        while j + 1 < n and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        # positions i..j (0-based) share midrank of ranks i+1..j+1
        midrank = (i + j) / 2.0 + 1.0
        ranks[order[i : j + 1]] = midrank
        t = j - i + 1
        if t > 1:
            tie_term += t**3 - t
        i = j + 1
    return ranks, tie_term


def kruskal_wallis(groups) -> tuple[float, float, float]:
    """Kruskal-Wallis H across k groups.

    Returns (H, p, eta2) with H tie-corrected by midranks, p from the
    chi-square survival function with k - 1 degrees of freedom, and the
    effect size eta2 = (H - k + 1) / (N - k).  All values identical across
    groups degenerates to H = 0, p = 1.
    """
    groups = [np.asarray(g, dtype=np.float64) for g in groups]
    if len(groups) < 2:
        raise InvalidGroupsError("need at least two groups")
    if any(len(g) == 0 for g in groups):
        raise InvalidGroupsError("every group must be non-empty")
    sizes = [len(g) for g in groups]
    n_total = sum(sizes)
    pooled = np.concatenate(groups)
    ranks, tie_term = _midranks(pooled)

    h = 0.0
    offset = 0
    for size in sizes:
        r_sum = float(ranks[offset : offset + size].sum())
        h += r_sum * r_sum / size
        offset += size
    h = 12.0 / (n_total * (n_total + 1.0)) * h - 3.0 * (n_total + 1.0)
    correction = 1.0 - tie_term / (n_total**3 - n_total)
    if correction <= 0.0:
        h = 0.0  # every value tied
    else:
        h /= correction
    h = max(h, 0.0)

    df = len(groups) - 1
    p = float(special.gammaincc(df / 2.0, h / 2.0))
    eta2 = (h - len(groups) + 1.0) / (n_total - len(groups))
    return h, p, eta2


def levene(groups) -> tuple[float, float]:
    """Mean-centered Levene test of variance homogeneity.

    W follows an F distribution with (k - 1, N - k) degrees of freedom; p
    comes from the regularized incomplete beta.  If every absolute
    deviation is zero the test is vacuous and returns (0, 1); if only the
    within-group spread vanishes W diverges and (inf, 0) is returned.
    """
    groups = [np.asarray(g, dtype=np.float64) for g in groups]
    if len(groups) < 2:
        raise InvalidGroupsError("need at least two groups")
    if any(len(g) < 2 for g in groups):
        raise InvalidGroupsError("every group needs at least two values")
    k = len(groups)
    n_total = sum(len(g) for g in groups)

    z_groups = [np.abs(g - g.mean()) for g in groups]
    z_means = [float(z.mean()) for z in z_groups]
    z_grand = float(np.concatenate(z_groups).mean())

    between = sum(len(z) * (zm - z_grand) ** 2 for z, zm in zip(z_groups, z_means))
    within = sum(float(((z - zm) ** 2).sum()) for z, zm in zip(z_groups, z_means))

    if between == 0.0 and within == 0.0:
        return 0.0, 1.0
    if within == 0.0:
        return math.inf, 0.0

    w = (n_total - k) / (k - 1.0) * between / within
    df1 = k - 1
    df2 = n_total - k
    # F survival: I_{df2/(df2 + df1 w)}(df2/2, df1/2)
    x = df2 / (df2 + df1 * w)
    p = float(special.betainc(df2 / 2.0, df1 / 2.0, x))
    return w, p


@dataclass(frozen=True)
class StatsReport:
    """Per-group summaries plus the two omnibus tests."""

    group_sizes: list[int]
    group_means: list[float]
    group_sds: list[float]
    kw_h: float
    kw_p: float
    kw_eta2: float
    levene_stat: float
    levene_p: float

    def to_json(self) -> dict:
        return {
            "group_sizes": self.group_sizes,
            "group_means": self.group_means,
            "group_sds": self.group_sds,
            "kw_h": self.kw_h,
            "kw_p": self.kw_p,
            "kw_eta2": self.kw_eta2,
            "levene_stat": self.levene_stat,
            "levene_p": self.levene_p,
        }


def analyze_groups(groups: list[list[float]]) -> StatsReport:
    """StatsReport over explicit value groups (sample SDs, ddof=1)."""
    arrays = [np.asarray(g, dtype=np.float64) for g in groups]
    kw_h, kw_p, kw_eta2 = kruskal_wallis(arrays)
    lev_stat, lev_p = levene(arrays)
    return StatsReport(
        group_sizes=[len(g) for g in arrays],
        group_means=[float(g.mean()) for g in arrays],
        group_sds=[float(g.std(ddof=1)) for g in arrays],
        kw_h=kw_h,
        kw_p=kw_p,
        kw_eta2=kw_eta2,
        levene_stat=lev_stat,
        levene_p=lev_p,
    )
