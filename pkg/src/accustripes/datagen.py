"""Synthetic Gaussian distributions with injected data flaws.

The generator draws Gaussian samples inside the unit interval and then
injects one of four flaw types at a severity of up to 25% of the original
point count:

* gap      - remove the points nearest a location (an empty value interval)
* outlier  - append extreme values in [0.95, 1.0] at the right end
* spike    - append many near-identical values at a location
* noise    - append uniform values over [0, 1]

All randomness comes from ``numpy.random.default_rng`` (the PCG64 generator
with numpy's published constants), seeded explicitly, so every output is
byte-reproducible from (n, seed, flaw). Flaw locations are absolute
coordinates in the [0, 1] interval the Gaussians are generated in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import MAX_POINTS_FLAWED, Distribution, GapTooLarge, InvalidSize, ingest

FLAW_KINDS = ("none", "gap", "outlier", "spike", "noise")
MAX_SEVERITY = 0.25

# Gaussian parameter ranges: mu in [0.35, 0.65] and sigma in [0.08, 0.15]
# keep +-3 sigma inside [0, 1] (rejection sampling rarely triggers) and
# leave headroom at the right end for outliers.
MU_RANGE = (0.35, 0.65)
SIGMA_RANGE = (0.08, 0.15)

SPIKE_JITTER = 1e-6
OUTLIER_BAND = (0.95, 1.0)

SWEEP_SEVERITIES = (0.05, 0.15, 0.25)


@dataclass(frozen=True)
class FlawSpec:
    """One injected defect: kind, severity (fraction of n), location, seed."""

    kind: str
    severity: float = 0.0
    location: Optional[float] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in FLAW_KINDS:
            raise ValueError(f"unknown flaw kind {self.kind!r}")
        if not 0.0 <= self.severity <= MAX_SEVERITY:
            raise ValueError(f"severity {self.severity} outside [0, {MAX_SEVERITY}]")
        if self.kind in ("gap", "spike") and self.location is None:
            raise ValueError(f"{self.kind} flaw requires a location")
        if self.location is not None and not 0.0 < self.location < 1.0:
            raise ValueError("location must lie in (0, 1)")

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "severity": self.severity,
                "location": self.location, "seed": self.seed}


def gen_gaussian(n: int, seed: int) -> Distribution:
    """Draw n Gaussian points in [0, 1], rejection-sampled, under `seed`."""
    if n < 2:
        raise InvalidSize(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    mu = rng.uniform(*MU_RANGE)
    sigma = rng.uniform(*SIGMA_RANGE)
    out = np.empty(0)
    while out.size < n:
        draw = rng.normal(mu, sigma, n - out.size)
        out = np.concatenate([out, draw[(draw >= 0.0) & (draw <= 1.0)]])
    return ingest(out, name=f"gauss_n{n}_s{seed}", source_seed=seed)


def _flaw_rng(base_seed: int, flaw: FlawSpec) -> np.random.Generator:
    # independent stream per (seed, kind, severity) so sweep stages differ
    kind_code = FLAW_KINDS.index(flaw.kind)
    return np.random.default_rng([flaw.seed, base_seed & 0x7FFFFFFF,
                                  kind_code, int(round(flaw.severity * 1000))])


def apply_flaw(d: Distribution, flaw: FlawSpec) -> Distribution:
    """Return a flawed copy of `d`; severity 0 or kind "none" is identity."""
    m = int(round(flaw.severity * d.n))
    if flaw.kind == "none" or m == 0:
        return d
    values = d.values
    rng = _flaw_rng(d.source_seed or 0, flaw)
    name = f"{d.name}+{flaw.kind}{round(flaw.severity * 100)}"
    if flaw.kind == "gap":
        if d.n - m < 2:
            raise GapTooLarge(f"removing {m} of {d.n} points leaves too few")
        nearest = np.argsort(np.abs(values - flaw.location), kind="stable")[:m]
        keep = np.delete(values, nearest)
        return ingest(keep, name=name, source_seed=d.source_seed)
    if flaw.kind == "outlier":
        extra = rng.uniform(*OUTLIER_BAND, m)
    elif flaw.kind == "spike":
        extra = flaw.location + rng.uniform(-SPIKE_JITTER, SPIKE_JITTER, m)
    else:  # noise
        extra = rng.uniform(0.0, 1.0, m)
    return ingest(np.concatenate([values, extra]), name=name,
                  source_seed=d.source_seed, max_points=MAX_POINTS_FLAWED)


def gen_clustered(n: int, seed) -> tuple[Distribution, np.ndarray]:
    """Draw n points from well-separated flat clusters in [0, 1].

    The study protocol scores binning methods on heterogeneous multi-modal
    data: k components (3-4 below 100k points, 7 at 100k) are placed on a
    jittered grid over [0.1, 0.9], each a uniform interval of half-width
    0.008-0.028 with its own share of the mass. Flat segments are the
    structure every binning method under test is supposed to isolate.

    `seed` may be an int or a sequence of ints (a seed key). Returns the
    distribution together with the component centers so flaw locations can
    be placed relative to the cluster layout.
    """
    if n < 2:
        raise InvalidSize(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    k = 7 if n >= 100_000 else 3 + int(rng.uniform() < 0.5)
    slot = 0.8 / k
    centers = 0.1 + (np.arange(k) + 0.5) * slot + rng.uniform(-0.1, 0.1, k) * slot
    widths = np.minimum(rng.uniform(0.008, 0.028, k), 0.42 * slot)
    raw = rng.uniform(0.5, 1.5, k)
    counts = np.maximum(1, np.round(n * raw / raw.sum()).astype(int))
    counts[-1] += n - counts.sum()
    parts = [rng.uniform(c - w, c + w, m)
             for c, w, m in zip(centers, widths, counts)]
    values = np.clip(np.concatenate(parts), 0.0, 1.0)
    name = f"clusters_n{n}_s{seed if isinstance(seed, int) else tuple(seed)}"
    dist = ingest(values, name=name,
                  source_seed=seed if isinstance(seed, int) else None)
    return dist, centers


def flaw_sweep(n: int, kind: str, seed: int,
               location: Optional[float] = 0.5) -> list[Distribution]:
    """The base Gaussian plus 5/15/25% flawed variants, same base points."""
    if kind == "none" or kind not in FLAW_KINDS:
        raise ValueError("sweep needs a flaw kind other than 'none'")
    base = gen_gaussian(n, seed)
    out = [base]
    for severity in SWEEP_SEVERITIES:
        spec = FlawSpec(kind=kind, severity=severity,
                        location=location if kind in ("gap", "spike") else None,
                        seed=seed)
        out.append(apply_flaw(base, spec))
    return out


__all__ = [
    "FLAW_KINDS", "MAX_SEVERITY", "MU_RANGE", "SIGMA_RANGE",
    "SWEEP_SEVERITIES", "FlawSpec", "gen_gaussian", "gen_clustered",
    "apply_flaw", "flaw_sweep",
]
