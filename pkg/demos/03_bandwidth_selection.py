"""
Choosing the bandwidth constant by bootstrap MISE
=================================================

For each ``c`` in a grid, ``h = c n^(-1/5)``; the score is a Monte Carlo
estimate of the integrated squared distance between bootstrap SLSEs and the
pilot fit. The pilot bandwidth shrinks like ``n^(-1/9)`` so that its
curvature, and hence the bias the bootstrap reproduces, is consistent.
"""

import numpy as np

from monoboot import ScenarioSpec, gen_sample, select_c, substream

sample = gen_sample(ScenarioSpec("quadratic", 0.1, 100), substream(3, 0))
c_grid = np.round(np.arange(1, 21) * 0.05, 2)

sel = select_c(sample, c_grid, c0=0.7, B=200, seed=5, workers=4)
print(f"chosen c = {sel.chosen_c}, h = {sel.h:.4f}")
for c, s in zip(sel.c_grid, sel.scores):
    bar = "#" * int(40 * sel.scores.min() / s)
    print(f"c={c:4.2f}  MISE*={s:.6f}  {bar}")

# The asymptotic MSE-optimal constant for this scenario is about 0.5.
