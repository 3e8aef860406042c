"""Shared domain types, validation, and dataset I/O.

Every other module builds on the types defined here: an ingested
:class:`Distribution`, the :class:`BinPartition` produced by a binning
method, the :class:`NormalizedRange` used to bring a compared set into the
unit workspace, and the sampled :class:`DensityEstimate` curve.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_POINTS = 100_000
# Flaw injection may append up to 25% extra points to a maximum-size base,
# so generated datasets (and files written by the generator) get headroom.
MAX_POINTS_FLAWED = 125_000


class AccuStripesError(Exception):
    """Base class for data errors; the CLI maps these to exit code 2."""


class EmptyInput(AccuStripesError):
    pass


class NonFiniteValue(AccuStripesError):
    def __init__(self, index: int):
        super().__init__(f"non-finite value at index {index}")
        self.index = index


class TooLarge(AccuStripesError):
    pass


class InvalidSize(AccuStripesError):
    pass


class OutOfRange(AccuStripesError):
    pass


class DegenerateRange(AccuStripesError):
    pass


class SingleBin(AccuStripesError):
    pass


class InsufficientData(AccuStripesError):
    pass


class GapTooLarge(AccuStripesError):
    pass


class MismatchedInputs(AccuStripesError):
    pass


class MissingDensity(AccuStripesError):
    pass


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Distribution:
    """A named, sorted vector of finite real values.

    Instances are immutable (the value array is marked read-only) and safe
    to share across threads. Use :func:`ingest` to construct one from raw
    data; the constructor itself does not validate.
    """

    name: str
    values: np.ndarray
    source_seed: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def lo(self) -> float:
        return float(self.values[0])

    @property
    def hi(self) -> float:
        return float(self.values[-1])


def ingest(raw: Sequence[float] | np.ndarray, name: str,
           source_seed: Optional[int] = None,
           max_points: int = MAX_POINTS) -> Distribution:
    """Validate and sort raw values into a :class:`Distribution`.

    Parameters
    ----------
    raw : sequence of float
        The data values, in any order.
    name : str
        Label carried through to rendering.
    source_seed : int, optional
        Recorded for generated data.
    max_points : int
        Size cap; user data is held to MAX_POINTS, while the synthetic
        generator passes MAX_POINTS_FLAWED for additive-flaw headroom.

    Raises
    ------
    EmptyInput
        If `raw` has no elements.
    NonFiniteValue
        If any entry is NaN or infinite (index of the first offender).
    InvalidSize
        If fewer than 2 values remain.
    TooLarge
        If more than `max_points` values are supplied.
    """
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size == 0:
        raise EmptyInput("no values supplied")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise NonFiniteValue(int(bad[0]))
    if arr.size < 2:
        raise InvalidSize(f"need at least 2 values, got {arr.size}")
    if arr.size > max_points:
        raise TooLarge(f"{arr.size} values exceeds the supported maximum of {max_points}")
    return Distribution(name=name, values=_readonly(np.sort(arr)), source_seed=source_seed)


@dataclass(frozen=True, eq=False)
class BinPartition:
    """Strictly increasing bin edges plus per-bin counts.

    `method` is one of ``"uniform"``, ``"bb"``, ``"nb"``; `params` carries
    the method-specific record (`binCount` for uniform, `p0`/`ncpPrior`
    for Bayesian Blocks, `gvfThreshold`/`kMax`/`kChosen`/`gvfAchieved`
    for natural breaks).
    """

    method: str
    edges: np.ndarray
    counts: np.ndarray
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        edges = _readonly(np.asarray(self.edges, dtype=float))
        counts = _readonly(np.asarray(self.counts, dtype=int))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "counts", counts)
        if len(edges) != len(counts) + 1 or len(counts) < 1:
            raise ValueError("edges must be one longer than counts")
        if not np.all(np.diff(edges) > 0):
            raise ValueError("edges must be strictly increasing")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")

    @property
    def b(self) -> int:
        return len(self.counts)

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "edges": self.edges.tolist(),
            "counts": self.counts.tolist(),
            "params": dict(self.params),
        }


def assign_bin(partition: BinPartition, x: float) -> int:
    """Return the index of the bin containing `x`.

    Bins are half-open ``[e_i, e_{i+1})``; the final bin is right-closed,
    so ``x == edges[-1]`` maps to the last bin.
    """
    edges = partition.edges
    if x < edges[0] or x > edges[-1]:
        raise OutOfRange(f"{x} outside [{edges[0]}, {edges[-1]}]")
    if x == edges[-1]:
        return len(edges) - 2
    return int(np.searchsorted(edges, x, side="right")) - 1


def bin_counts(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Histogram counts of `values` under the assign_bin membership rule."""
    counts, _ = np.histogram(values, bins=edges)
    return counts


@dataclass(frozen=True)
class NormalizedRange:
    """Common value range mapped onto the unit workspace [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DegenerateRange(f"range [{self.lo}, {self.hi}] is empty")


def common_range(distributions: Iterable[Distribution]) -> NormalizedRange:
    """The range spanning every distribution in a compared set."""
    dists = list(distributions)
    if not dists:
        raise EmptyInput("no distributions")
    return NormalizedRange(lo=min(d.lo for d in dists), hi=max(d.hi for d in dists))


def to_unit(r: NormalizedRange, x: float) -> float:
    """Map `x` from `r` into [0, 1]; raises OutOfRange outside the range."""
    if x < r.lo or x > r.hi:
        raise OutOfRange(f"{x} outside [{r.lo}, {r.hi}]")
    return (x - r.lo) / (r.hi - r.lo)


def from_unit(r: NormalizedRange, u: float) -> float:
    """Inverse of :func:`to_unit`."""
    return r.lo + u * (r.hi - r.lo)


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    """A KDE curve sampled on an ascending grid spanning the padded support."""

    xs: np.ndarray
    ys: np.ndarray
    bandwidth: float

    def __post_init__(self):
        object.__setattr__(self, "xs", _readonly(np.asarray(self.xs, dtype=float)))
        object.__setattr__(self, "ys", _readonly(np.asarray(self.ys, dtype=float)))

    def to_json_dict(self) -> dict:
        return {"xs": self.xs.tolist(), "ys": self.ys.tolist(), "bandwidth": self.bandwidth}


# ---------------------------------------------------------------------------
# Dataset file I/O
#
# Two on-disk formats are accepted:
#   (a) plain text, one numeric value per line, optional non-numeric header;
#   (b) a JSON object {"name": ..., "values": [...], "meta": {...}}.
# A manifest {"datasets": [paths]} names a compared set; relative paths are
# resolved against the manifest's directory.
# ---------------------------------------------------------------------------

def load_dataset(path: str | Path) -> Distribution:
    """Load one dataset file (JSON object or one-value-per-line text).

    Generated JSON datasets may carry additive-flaw headroom above the
    plain ingest cap, so the loader allows up to MAX_POINTS_FLAWED values.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        if "values" not in obj:
            raise EmptyInput(f"{path}: JSON dataset has no 'values' key")
        name = obj.get("name") or path.stem
        seed = obj.get("meta", {}).get("seed") if isinstance(obj.get("meta"), dict) else None
        return ingest(obj["values"], name=name, source_seed=seed,
                      max_points=MAX_POINTS_FLAWED)
    values = []
    for lineno, line in enumerate(text.splitlines()):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            if lineno == 0 and not values:
                continue  # header line
            raise NonFiniteValue(lineno)
    return ingest(values, name=path.stem, max_points=MAX_POINTS_FLAWED)


def save_dataset(dist: Distribution, path: str | Path, meta: Optional[dict] = None) -> None:
    """Write a Distribution as a JSON dataset with embedded metadata."""
    payload: dict = {"name": dist.name, "values": dist.values.tolist()}
    full_meta = {"n": dist.n}
    if dist.source_seed is not None:
        full_meta["seed"] = dist.source_seed
    if meta:
        full_meta.update(meta)
    payload["meta"] = full_meta
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_manifest(path: str | Path) -> list[Distribution]:
    """Load the compared set named by a manifest {"datasets": [paths]}."""
    path = Path(path)
    obj = json.loads(path.read_text(encoding="utf-8"))
    paths = obj.get("datasets")
    if not isinstance(paths, list) or not paths:
        raise EmptyInput(f"{path}: manifest has no datasets")
    return [load_dataset(path.parent / p) for p in paths]


def is_manifest(path: str | Path) -> bool:
    """True if `path` is a JSON manifest rather than a single dataset."""
    try:
        text = Path(path).read_text(encoding="utf-8").lstrip()
    except OSError:
        return False
    if not text.startswith("{"):
        return False
    try:
        return "datasets" in json.loads(text)
    except json.JSONDecodeError:
        return False


def sample_std(values: np.ndarray) -> float:
    """Sample standard deviation (ddof=1)."""
    return float(np.std(values, ddof=1))


__all__ = [
    "MAX_POINTS", "MAX_POINTS_FLAWED",
    "AccuStripesError", "EmptyInput", "NonFiniteValue", "TooLarge", "InvalidSize",
    "OutOfRange", "DegenerateRange", "SingleBin", "InsufficientData",
    "GapTooLarge", "MismatchedInputs", "MissingDensity",
    "Distribution", "ingest",
    "BinPartition", "assign_bin", "bin_counts",
    "NormalizedRange", "common_range", "to_unit", "from_unit",
    "DensityEstimate",
    "load_dataset", "save_dataset", "load_manifest", "is_manifest",
    "sample_std",
]
