"""Cut-cell grid geometry kernels.

The compiled Cython kernel is preferred; the pure-numpy twin is selected at
import time when the extension is unavailable. Both compute identical
quantities, see ``benchmarks/bench_kernels.py`` for a timing comparison.
"""

from .pure import grid_cut_distances as grid_cut_distances_py

try:
    from ._cutcells import grid_cut_distances as grid_cut_distances_cy

    grid_cut_distances = grid_cut_distances_cy
    BACKEND = "cython"
except ImportError:  # extension not built
    grid_cut_distances_cy = None
    grid_cut_distances = grid_cut_distances_py
    BACKEND = "python"

__all__ = [
    "grid_cut_distances",
    "grid_cut_distances_py",
    "grid_cut_distances_cy",
    "BACKEND",
]
