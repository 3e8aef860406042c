"""Reproduce the flaw-sweep figure: how each binning handles bad data.

For each flaw type (gap, outlier, spike) a base 10k Gaussian is modified
by 5%, 15%, and 25% erroneous points; each method then renders the four
stages stacked (ordering 0/5/15/25%). Gaps should read as background
stripes; outliers compress the bulk toward the left; spikes concentrate
color at one position.
"""

from pathlib import Path

from accustripes import (bin_with, density_for, flaw_sweep,
                         build_render_spec, render_svg)

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

for flaw in ("gap", "outlier", "spike"):
    stages = flaw_sweep(10_000, flaw, seed=7, location=0.5)
    densities = [density_for(d) for d in stages]
    for method in ("uniform", "bb", "nb"):
        parts = [bin_with(d, method) for d in stages]
        spec = build_render_spec(stages, parts, densities, layout="BinCurve")
        path = out_dir / f"flaw_{flaw}_{method}.svg"
        path.write_text(render_svg(spec))
        print("wrote", path)
