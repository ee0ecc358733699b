# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scanline kernel for cut-cell grid geometry.

Mirrors torsionlab._kernels.pure.grid_cut_distances exactly.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef void _insertion_sort(double* a, Py_ssize_t n) nogil:
    cdef Py_ssize_t i, j
    cdef double key
    for i in range(1, n):
        key = a[i]
        j = i - 1
        while j >= 0 and a[j] > key:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = key


def grid_cut_distances(vertices, double x0, double y0, double h,
                       Py_ssize_t nx, Py_ssize_t ny):
    """Classify grid nodes against a simple polygon and measure boundary cuts.

    Returns (inside, aE, aW, aS, aN); see the pure-numpy twin for details.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef Py_ssize_t m = v.shape[0]

    inside_r_arr = np.zeros((ny, nx), dtype=np.uint8)
    inside_c_arr = np.zeros((ny, nx), dtype=np.uint8)
    aE_arr = np.ones((ny, nx), dtype=np.float64)
    aW_arr = np.ones((ny, nx), dtype=np.float64)
    aN_arr = np.ones((ny, nx), dtype=np.float64)
    aS_arr = np.ones((ny, nx), dtype=np.float64)

    cdef cnp.uint8_t[:, :] inside_r = inside_r_arr
    cdef cnp.uint8_t[:, :] inside_c = inside_c_arr
    cdef double[:, :] aE = aE_arr
    cdef double[:, :] aW = aW_arr
    cdef double[:, :] aN = aN_arr
    cdef double[:, :] aS = aS_arr

    crossings_arr = np.empty(m, dtype=np.float64)
    cdef double[:] xc = crossings_arr
    cdef double[:, :] vv = v

    cdef Py_ssize_t i, j, k, e, nc
    cdef double x, y, p0, p1, q0, q1, t, c, dl, dr

    with nogil:
        for j in range(ny):
            y = y0 + (j + 0.5) * h
            nc = 0
            for e in range(m):
                p0 = vv[e, 0]; p1 = vv[e, 1]
                q0 = vv[(e + 1) % m, 0]; q1 = vv[(e + 1) % m, 1]
                if (p1 > y) != (q1 > y):
                    t = (y - p1) / (q1 - p1)
                    xc[nc] = p0 + t * (q0 - p0)
                    nc += 1
            if nc == 0:
                continue
            _insertion_sort(&xc[0], nc)
            k = 0
            for i in range(nx):
                x = x0 + (i + 0.5) * h
                while k < nc and xc[k] < x:
                    k += 1
                if k % 2 == 1 and k < nc:
                    inside_r[j, i] = 1
                    dl = (x - xc[k - 1]) / h
                    dr = (xc[k] - x) / h
                    aW[j, i] = dl if dl < 1.0 else 1.0
                    aE[j, i] = dr if dr < 1.0 else 1.0

        for i in range(nx):
            x = x0 + (i + 0.5) * h
            nc = 0
            for e in range(m):
                p0 = vv[e, 0]; p1 = vv[e, 1]
                q0 = vv[(e + 1) % m, 0]; q1 = vv[(e + 1) % m, 1]
                if (p0 > x) != (q0 > x):
                    t = (x - p0) / (q0 - p0)
                    xc[nc] = p1 + t * (q1 - p1)
                    nc += 1
            if nc == 0:
                continue
            _insertion_sort(&xc[0], nc)
            k = 0
            for j in range(ny):
                y = y0 + (j + 0.5) * h
                while k < nc and xc[k] < y:
                    k += 1
                if k % 2 == 1 and k < nc:
                    inside_c[j, i] = 1
                    dl = (y - xc[k - 1]) / h
                    dr = (xc[k] - y) / h
                    aS[j, i] = dl if dl < 1.0 else 1.0
                    aN[j, i] = dr if dr < 1.0 else 1.0

    inside = inside_r_arr.astype(bool) & inside_c_arr.astype(bool)
    return inside, aE_arr, aW_arr, aS_arr, aN_arr
