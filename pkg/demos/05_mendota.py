"""
Lake Mendota: days frozen per year
==================================

The data are not shipped with the package. Put a CSV with header ``x,y`` at
``data/mendota.csv`` (or pass a path), where x is the year (1854-2010) and y
the number of days the lake was frozen; see ``data/README.md``.

Years map to ``(year - 1853)/158`` and the responses are reversed so the
downward trend becomes an upward one.
"""

import sys
from pathlib import Path

import numpy as np

from monoboot import BootstrapConfig, confidence_band, load_csv, select_c

path = Path(sys.argv[1] if len(sys.argv) > 1 else "data/mendota.csv")
if not path.is_file():
    sys.exit(f"{path} not found; see data/README.md")

sample = load_csv(path, mendota=True)
sel = select_c(sample, c0=0.7, B=1000, seed=1, workers=4)
print(f"n = {sample.n}, chosen c = {sel.chosen_c}, h = {sel.h:.5f}")

ts = np.round(np.arange(1, 100) * 0.01, 2)
band = confidence_band(sample, BootstrapConfig(B=1000, seed=1, c=sel.chosen_c), ts)
for t in (0.1, 0.3, 0.5, 0.7, 0.9):
    i = int(np.argmin(np.abs(ts - t)))
    year = 1853 + 158 * (1 - t)
    print(f"t={t:.1f} (~{year:.0f}): [{band.lower[i]:.1f}, {band.upper[i]:.1f}]")
