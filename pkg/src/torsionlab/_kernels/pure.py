"""Pure-numpy scanline kernel for cut-cell grid geometry."""

import numpy as np

__all__ = ["grid_cut_distances"]


def grid_cut_distances(vertices, x0, y0, h, nx, ny):
    """Classify grid nodes against a simple polygon and measure boundary cuts.

    Nodes sit at (x0 + (i+1/2)h, y0 + (j+1/2)h). For every interior node the
    returned arrays aE, aW, aN, aS hold the distance to the polygon boundary
    along the four axis directions, in units of h and capped at 1.

    Returns (inside, aE, aW, aS, aN) with shape (ny, nx); the distance arrays
    are only meaningful where inside is True.
    """
    v = np.asarray(vertices, dtype=float)
    px, py = v[:, 0], v[:, 1]
    qx, qy = np.roll(px, -1), np.roll(py, -1)
    xs = x0 + (np.arange(nx) + 0.5) * h
    ys = y0 + (np.arange(ny) + 0.5) * h

    inside_r = np.zeros((ny, nx), dtype=bool)
    aE = np.ones((ny, nx))
    aW = np.ones((ny, nx))
    aN = np.ones((ny, nx))
    aS = np.ones((ny, nx))

    for j in range(ny):
        y = ys[j]
        m = (py > y) != (qy > y)
        if not m.any():
            continue
        t = (y - py[m]) / (qy[m] - py[m])
        xc = np.sort(px[m] + t * (qx[m] - px[m]))
        k = np.searchsorted(xc, xs)
        odd = (k % 2 == 1) & (k < len(xc))
        idx = np.nonzero(odd)[0]
        if idx.size == 0:
            continue
        inside_r[j, idx] = True
        aW[j, idx] = np.minimum((xs[idx] - xc[k[idx] - 1]) / h, 1.0)
        aE[j, idx] = np.minimum((xc[k[idx]] - xs[idx]) / h, 1.0)

    inside_c = np.zeros((ny, nx), dtype=bool)
    for i in range(nx):
        x = xs[i]
        m = (px > x) != (qx > x)
        if not m.any():
            continue
        t = (x - px[m]) / (qx[m] - px[m])
        yc = np.sort(py[m] + t * (qy[m] - py[m]))
        k = np.searchsorted(yc, ys)
        odd = (k % 2 == 1) & (k < len(yc))
        idx = np.nonzero(odd)[0]
        if idx.size == 0:
            continue
        inside_c[idx, i] = True
        aS[idx, i] = np.minimum((ys[idx] - yc[k[idx] - 1]) / h, 1.0)
        aN[idx, i] = np.minimum((yc[k[idx]] - ys[idx]) / h, 1.0)

    return inside_r & inside_c, aE, aW, aS, aN
