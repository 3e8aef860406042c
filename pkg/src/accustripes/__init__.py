"""Adaptive binning and stacked stripe charts for comparing distributions.

The pipeline: ingest univariate data, bin it uniformly (Sturges) or
adaptively (Bayesian Blocks, natural breaks), estimate its density, score
binning quality with the silhouette coefficient, and render compared sets
as stacked color-coded stripe rows in three layouts.
"""

from .core import (AccuStripesError, BinPartition, DegenerateRange,
                   DensityEstimate, Distribution, EmptyInput, GapTooLarge,
                   InsufficientData, InvalidSize, MismatchedInputs,
                   MissingDensity, NonFiniteValue, NormalizedRange,
                   OutOfRange, SingleBin, TooLarge, assign_bin, bin_counts,
                   common_range, from_unit, ingest, load_dataset,
                   load_manifest, save_dataset, to_unit)
from .binning import (bayesian_blocks, bin_with, gvf, jenks_natural_breaks,
                      ncp_prior, sturges_bin_count, uniform_binning)
from .density import density_for, kde, silverman_bandwidth
from .datagen import (FlawSpec, apply_flaw, flaw_sweep, gen_clustered,
                      gen_gaussian)
from .evaluation import (EvalReport, one_way_anova, run_evaluation,
                         silhouette)
from .render import (RenderSpec, VIRIDIS_12, build_render_spec, color_index,
                     render_svg)

__version__ = "0.1.0"

__all__ = [
    "AccuStripesError", "BinPartition", "DegenerateRange", "DensityEstimate",
    "Distribution", "EmptyInput", "GapTooLarge", "InsufficientData",
    "InvalidSize", "MismatchedInputs", "MissingDensity", "NonFiniteValue",
    "NormalizedRange", "OutOfRange", "SingleBin", "TooLarge",
    "assign_bin", "bin_counts", "common_range", "from_unit", "ingest",
    "load_dataset", "load_manifest", "save_dataset", "to_unit",
    "bayesian_blocks", "bin_with", "gvf", "jenks_natural_breaks",
    "ncp_prior", "sturges_bin_count", "uniform_binning",
    "density_for", "kde", "silverman_bandwidth",
    "FlawSpec", "apply_flaw", "flaw_sweep", "gen_clustered", "gen_gaussian",
    "EvalReport", "one_way_anova", "run_evaluation", "silhouette",
    "RenderSpec", "VIRIDIS_12", "build_render_spec", "color_index",
    "render_svg",
]
