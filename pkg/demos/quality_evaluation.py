"""Score binning quality with the silhouette coefficient.

Runs a reduced version of the evaluation protocol (two size categories,
8 distributions each, so it finishes in seconds) and prints the per-method
means, variances, and the ANOVA across methods. The full protocol is
`accustripes eval --seed 1` (72 distributions, sizes 1k/10k/100k).
"""

from accustripes import run_evaluation

report = run_evaluation(seed=1, sizes=(1000, 10_000), per_size=8)
print(report.to_text_table())
print()
print("protocol:", report.protocol)
