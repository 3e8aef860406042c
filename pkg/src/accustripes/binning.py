"""The three binning methods: uniform (Sturges), Bayesian Blocks, natural breaks.

All three return a :class:`~accustripes.core.BinPartition` whose edges span
exactly ``[min(values), max(values)]`` and whose counts sum to ``n``. The two
adaptive methods are deterministic dynamic programs:

* Bayesian Blocks maximizes the events fitness ``N_k (ln N_k - ln T_k)``
  summed over blocks, minus a per-block prior penalty, over Voronoi cells of
  the distinct values (O(N^2) DP with backtracking).
* Natural breaks minimizes the within-class sum of squared deviations for
  an increasing class count k until the goodness of variance fit reaches a
  threshold. The row recurrence is solved with a divide-and-conquer argmin
  scan, valid because the segment cost satisfies the concave quadrangle
  inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import BinPartition, DegenerateRange, Distribution, bin_counts

# Above this many distinct values, Bayesian Blocks pre-quantizes onto a
# uniform micro-grid (weighted cell centroids) to keep the O(N^2) DP fast;
# edges move by at most range/BB_MAX_CELLS.
BB_MAX_CELLS = 20_000

DEFAULT_P0 = 0.05
DEFAULT_GVF_THRESHOLD = 0.9
DEFAULT_K_MAX = 50


def sturges_bin_count(n: int) -> int:
    """Bin count by Sturges' rule: ceil(log2(n)) + 1."""
    if n < 2:
        raise ValueError("need n >= 2")
    # (n-1).bit_length() is ceil(log2(n)) computed exactly in integers
    return (n - 1).bit_length() + 1


def uniform_binning(d: Distribution) -> BinPartition:
    """Equal-width bins spanning [min, max]; count per Sturges' rule."""
    values = d.values
    lo, hi = float(values[0]), float(values[-1])
    if lo == hi:
        raise DegenerateRange("all values identical")
    b = sturges_bin_count(len(values))
    edges = np.linspace(lo, hi, b + 1)
    if not np.all(np.diff(edges) > 0):
        raise DegenerateRange("range too small to subdivide")
    return BinPartition(
        method="uniform",
        edges=edges,
        counts=bin_counts(values, edges),
        params={"binCount": b},
    )


# ---------------------------------------------------------------------------
# Bayesian Blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BBParams:
    """False-alarm probability p0 and the derived per-block prior penalty."""

    p0: float = DEFAULT_P0
    ncp_prior: Optional[float] = None


def ncp_prior(p0: float, n_cells: int) -> float:
    """Calibrated prior penalty per block: 4 - ln(73.53 * p0 * n^-0.478)."""
    return 4.0 - math.log(73.53 * p0 * n_cells ** -0.478)


def _voronoi_cells(values: np.ndarray, max_cells: int = BB_MAX_CELLS):
    """Collapse sorted values into weighted cells with Voronoi edges.

    Duplicates collapse into a single cell with multiplicity. When more than
    `max_cells` distinct values remain, values are grouped onto a uniform
    micro-grid and each non-empty micro-cell is represented by its weighted
    centroid, so no cell is ever empty and no block can have zero width.

    Returns ``(reps, weights, cell_edges)`` where `cell_edges` has length
    ``len(reps) + 1``, starts at min(values) and ends at max(values), with
    interior edges at midpoints between consecutive representatives.
    """
    lo, hi = float(values[0]), float(values[-1])
    if lo == hi:
        raise DegenerateRange("all values identical")
    reps, weights = np.unique(values, return_counts=True)
    if len(reps) > max_cells:
        pos = (values - lo) / (hi - lo)
        idx = np.minimum((pos * max_cells).astype(int), max_cells - 1)
        sums = np.bincount(idx, weights=values, minlength=max_cells)
        weights = np.bincount(idx, minlength=max_cells)
        keep = weights > 0
        reps = sums[keep] / weights[keep]
        weights = weights[keep]
    cell_edges = np.concatenate([[lo], 0.5 * (reps[1:] + reps[:-1]), [hi]])
    if not np.all(np.diff(cell_edges) > 0):
        raise DegenerateRange("values too close to separate into cells")
    return reps, weights.astype(float), cell_edges


def _bb_block_fitness(n_k: np.ndarray, t_k: np.ndarray) -> np.ndarray:
    """Events fitness of blocks holding n_k points over width t_k."""
    return n_k * (np.log(n_k) - np.log(t_k))


def _bb_partition_fitness(weights: np.ndarray, cell_edges: np.ndarray,
                          change_points: np.ndarray, ncp: float) -> float:
    """Total penalized fitness of the block partition given by change_points."""
    total = 0.0
    for a, b in zip(change_points[:-1], change_points[1:]):
        n_k = weights[a:b].sum()
        t_k = cell_edges[b] - cell_edges[a]
        total += n_k * (math.log(n_k) - math.log(t_k)) - ncp
    return total


def _bb_optimal_partition(weights: np.ndarray, cell_edges: np.ndarray, ncp: float):
    """O(N^2) change-point DP; returns (change_points, best_fitness).

    `change_points` are cell-boundary indices into `cell_edges`, always
    starting at 0 and ending at len(weights).
    """
    m = len(weights)
    cw = np.concatenate([[0.0], np.cumsum(weights)])
    best = np.empty(m)
    last = np.empty(m, dtype=int)
    for r in range(m):
        n_k = cw[r + 1] - cw[: r + 1]
        t_k = cell_edges[r + 1] - cell_edges[: r + 1]
        fit = _bb_block_fitness(n_k, t_k) - ncp
        fit[1:] += best[:r]
        i_max = int(np.argmax(fit))
        last[r] = i_max
        best[r] = fit[i_max]
    # peel blocks off the end
    points = [m]
    ind = m
    while ind > 0:
        ind = last[ind - 1]
        points.append(ind)
    change_points = np.array(points[::-1], dtype=int)
    return change_points, float(best[m - 1])


def bayesian_blocks(d: Distribution, p0: float = DEFAULT_P0,
                    max_cells: int = BB_MAX_CELLS) -> BinPartition:
    """Globally optimal adaptive partition by change-point detection.

    Parameters
    ----------
    d : Distribution
        Input data (sorted, >= 2 points).
    p0 : float
        False-alarm probability in (0, 1) controlling the block-count
        prior; larger p0 means a weaker penalty and at least as many bins.
    max_cells : int
        Pre-quantization cap on the number of DP cells.
    """
    if not 0.0 < p0 < 1.0:
        raise ValueError("p0 must be in (0, 1)")
    reps, weights, cell_edges = _voronoi_cells(d.values, max_cells)
    ncp = ncp_prior(p0, len(reps))
    change_points, _ = _bb_optimal_partition(weights, cell_edges, ncp)
    edges = cell_edges[change_points]
    return BinPartition(
        method="bb",
        edges=edges,
        counts=bin_counts(d.values, edges),
        params={"p0": p0, "ncpPrior": ncp},
    )


# ---------------------------------------------------------------------------
# Natural breaks (Fisher-Jenks)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NBParams:
    """GVF stopping threshold, class-count cap, and the achieved values."""

    gvf_threshold: float = DEFAULT_GVF_THRESHOLD
    k_max: int = DEFAULT_K_MAX
    k_chosen: int = 1
    gvf_achieved: float = 0.0


def _cumsum0(a: np.ndarray) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(a)])


class _SegmentCost:
    """Within-segment sum of squared deviations from prefix sums.

    For weighted points, ssd(i..j) = S2 - S1^2 / W over the segment, the
    standard one-pass identity; cross-checked against the two-pass form in
    the test suite.
    """

    def __init__(self, values: np.ndarray, weights: np.ndarray):
        self.w0 = _cumsum0(weights)
        self.s1 = _cumsum0(weights * values)
        self.s2 = _cumsum0(weights * values * values)

    def __call__(self, i, j):
        """ssd over the inclusive index segment i..j (arrays broadcast)."""
        w = self.w0[j + 1] - self.w0[i]
        s1 = self.s1[j + 1] - self.s1[i]
        s2 = self.s2[j + 1] - self.s2[i]
        return s2 - s1 * s1 / w


def _jenks_next_row(prev: np.ndarray, cost: _SegmentCost, k: int, m: int):
    """Fill DP row k from row k-1 via level-synchronous divide and conquer.

    Row k holds, for each j, the minimal SSD of partitioning cells 0..j
    into k classes. The argmin positions are monotone in j, so each level
    of the recursion scans disjoint candidate ranges; all nodes of one
    level are evaluated in a single vectorized pass with segmented argmin.

    Returns ``(row, opt)`` where ``opt[j]`` is the start index of the last
    class in the optimal k-partition of 0..j.
    """
    row = np.full(m, np.inf)
    opt = np.zeros(m, dtype=int)
    lo = np.array([k - 1], dtype=int)
    hi = np.array([m - 1], dtype=int)
    olo = np.array([k - 1], dtype=int)
    ohi = np.array([m - 1], dtype=int)
    while lo.size:
        mid = (lo + hi) // 2
        imin = olo
        imax = np.minimum(mid, ohi)
        lens = imax - imin + 1
        starts = np.concatenate([[0], np.cumsum(lens[:-1])])
        total = int(lens.sum())
        i_flat = np.repeat(imin, lens) + (np.arange(total) - np.repeat(starts, lens))
        j_flat = np.repeat(mid, lens)
        costs = prev[i_flat - 1] + cost(i_flat, j_flat)
        seg_min = np.minimum.reduceat(costs, starts)
        at_min = costs == np.repeat(seg_min, lens)
        best_i = np.minimum.reduceat(np.where(at_min, i_flat, m), starts)
        row[mid] = seg_min
        opt[mid] = best_i
        # spawn children: left keeps [olo, best_i], right keeps [best_i, ohi]
        left = lo <= mid - 1
        right = mid + 1 <= hi
        lo = np.concatenate([lo[left], mid[right] + 1])
        hi = np.concatenate([mid[left] - 1, hi[right]])
        olo = np.concatenate([olo[left], best_i[right]])
        ohi = np.concatenate([best_i[left], ohi[right]])
    return row, opt


def _jenks_rows(values: np.ndarray, weights: np.ndarray, k_max: int):
    """Yield (k, min_ssd, split_indices) for k = 1, 2, ... up to k_max.

    `split_indices` are the start indices of classes 2..k in the weighted
    cell array, suitable for np.split.
    """
    m = len(values)
    cost = _SegmentCost(values, weights)
    row = cost(np.zeros(m, dtype=int), np.arange(m))
    yield 1, float(row[m - 1]), np.array([], dtype=int)
    opt_rows = []
    for k in range(2, k_max + 1):
        row, opt = _jenks_next_row(row, cost, k, m)
        opt_rows.append(opt)
        splits = np.empty(k - 1, dtype=int)
        j = m - 1
        for kk in range(k, 1, -1):
            start = opt_rows[kk - 2][j]
            splits[kk - 2] = start
            j = start - 1
        yield k, float(row[m - 1]), splits


def gvf(values: np.ndarray, split_indices: np.ndarray) -> float:
    """Goodness of variance fit of a contiguous class partition.

    ``(SDAM - SDCM) / SDAM`` where SDAM is the sum of squared deviations
    from the global mean and SDCM the sum within classes; 0 is a single
    class, 1 a perfect fit. Both sums use the same two-pass formula so the
    extremes are exact.
    """
    values = np.asarray(values, dtype=float)
    sdam = float(np.sum((values - values.mean()) ** 2))
    if sdam == 0.0:
        raise DegenerateRange("zero variance")
    sdcm = 0.0
    for cls in np.split(values, split_indices):
        if len(cls):
            sdcm += float(np.sum((cls - cls.mean()) ** 2))
    return (sdam - sdcm) / sdam


def _weighted_gvf(values: np.ndarray, weights: np.ndarray,
                  split_indices: np.ndarray) -> float:
    """GVF over weighted cells (two-pass, exact at the extremes)."""
    total_mean = float(np.average(values, weights=weights))
    sdam = float(np.sum(weights * (values - total_mean) ** 2))
    if sdam == 0.0:
        raise DegenerateRange("zero variance")
    sdcm = 0.0
    bounds = np.concatenate([[0], split_indices, [len(values)]])
    for a, b in zip(bounds[:-1], bounds[1:]):
        mean = float(np.average(values[a:b], weights=weights[a:b]))
        sdcm += float(np.sum(weights[a:b] * (values[a:b] - mean) ** 2))
    return (sdam - sdcm) / sdam


def jenks_natural_breaks(d: Distribution,
                         gvf_threshold: float = DEFAULT_GVF_THRESHOLD,
                         k_max: int = DEFAULT_K_MAX) -> BinPartition:
    """Natural-breaks partition with GVF-driven class-count selection.

    The class count k is increased from 2 until the goodness of variance
    fit reaches `gvf_threshold` (or k hits `k_max`). Interior bin edges sit
    at midpoints between the last value of one class and the first value of
    the next; outer edges at the data min/max.
    """
    if not 0.0 < gvf_threshold <= 1.0:
        raise ValueError("gvf_threshold must be in (0, 1]")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    values = d.values
    reps, weights = np.unique(values, return_counts=True)
    if len(reps) < 2:
        raise DegenerateRange("all values identical")
    weights = weights.astype(float)
    k_cap = min(k_max, len(reps))
    k_chosen, achieved, chosen_splits = 1, 0.0, np.array([], dtype=int)
    for k, _ssd, splits in _jenks_rows(reps, weights, k_cap):
        k_chosen, chosen_splits = k, splits
        achieved = _weighted_gvf(reps, weights, splits) if k > 1 else 0.0
        if achieved >= gvf_threshold:
            break
    interior = 0.5 * (reps[chosen_splits - 1] + reps[chosen_splits])
    edges = np.concatenate([[reps[0]], interior, [reps[-1]]])
    if not np.all(np.diff(edges) > 0):
        raise DegenerateRange("values too close to separate into classes")
    return BinPartition(
        method="nb",
        edges=edges,
        counts=bin_counts(values, edges),
        params={
            "gvfThreshold": gvf_threshold,
            "kMax": k_max,
            "kChosen": k_chosen,
            "gvfAchieved": achieved,
        },
    )


def bin_with(d: Distribution, method: str, *, p0: float = DEFAULT_P0,
             gvf_threshold: float = DEFAULT_GVF_THRESHOLD,
             k_max: int = DEFAULT_K_MAX) -> BinPartition:
    """Dispatch to one of the three methods by wire name."""
    if method == "uniform":
        return uniform_binning(d)
    if method == "bb":
        return bayesian_blocks(d, p0=p0)
    if method == "nb":
        return jenks_natural_breaks(d, gvf_threshold=gvf_threshold, k_max=k_max)
    raise ValueError(f"unknown method {method!r}")


__all__ = [
    "BB_MAX_CELLS", "DEFAULT_P0", "DEFAULT_GVF_THRESHOLD", "DEFAULT_K_MAX",
    "sturges_bin_count", "uniform_binning",
    "BBParams", "ncp_prior", "bayesian_blocks",
    "NBParams", "gvf", "jenks_natural_breaks",
    "bin_with",
]
