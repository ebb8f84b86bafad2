"""Pure numpy implementation of the path kernels.

Vectorised across the paths of a block: every active path advances one step
per iteration, path ``i`` drawing normal pair ``j`` of its own keyed stream
at step ``j``. Used when the compiled extension is unavailable.

Each kernel fills ``out`` (and ``out_maxdth``) and returns ``(status, index)``
with status 0 = ok, 1 = step cap reached, 2 = origin too close; ``index`` is
the smallest offending path index, or -1.
"""

import math

import numpy as np

from .rng import STREAM_PLANAR, STREAM_SKEW, derive_keys, normal_pairs_at

OK, CAP, ORIGIN = 0, 1, 2
ORIGIN_R2 = 1e-12


def skew_block(seed, first, out, c, h, max_steps):
    n = out.shape[0]
    pos = np.arange(n)
    keys = derive_keys(seed, STREAM_SKEW, np.arange(first, first + n, dtype=np.uint64))
    beta = np.zeros(n)
    gamma = np.zeros(n)
    area = np.zeros(n)
    e_prev = np.ones(n)
    sh = math.sqrt(h)
    for j in range(max_steps):
        if pos.size == 0:
            return OK, -1
        n1, n2 = normal_pairs_at(keys, j)
        beta_new = beta + sh * n1
        gamma_new = gamma + sh * n2
        g_abs = np.abs(gamma_new)
        hit = g_abs >= c
        if hit.any():
            g_old = np.abs(gamma[hit])
            b0 = beta[hit]
            frac = (c - g_old) / (g_abs[hit] - g_old)
            e_cross = np.exp(2.0 * (b0 + frac * (beta_new[hit] - b0)))
            out[pos[hit]] = area[hit] + 0.5 * frac * h * (e_prev[hit] + e_cross)
            keep = ~hit
            pos, keys = pos[keep], keys[keep]
            beta_new, gamma_new = beta_new[keep], gamma_new[keep]
            area, e_prev = area[keep], e_prev[keep]
        e_new = np.exp(2.0 * beta_new)
        area = area + 0.5 * h * (e_prev + e_new)
        beta, gamma, e_prev = beta_new, gamma_new, e_new
    if pos.size:
        return CAP, first + int(pos.min())
    return OK, -1


def planar_block(seed, first, out, out_maxdth, c, h, max_steps, min_radius):
    n = out.shape[0]
    pos = np.arange(n)
    keys = derive_keys(seed, STREAM_PLANAR, np.arange(first, first + n, dtype=np.uint64))
    x = np.ones(n)
    y = np.zeros(n)
    theta = np.zeros(n)
    t = np.zeros(n)
    maxd = np.zeros(n)
    rmin2 = min_radius * min_radius
    for j in range(max_steps):
        if pos.size == 0:
            return OK, -1
        r2 = x * x + y * y
        if (r2 < ORIGIN_R2).any():
            return ORIGIN, first + int(pos[r2 < ORIGIN_R2].min())
        near = r2 < rmin2
        dt = np.where(near, h * rmin2, h * r2)
        if near.any():
            rr = np.full(pos.size, rmin2)
            shrink = r2 < rr
            while shrink.any():
                dt[shrink] *= 0.25
                rr[shrink] *= 0.25
                shrink = r2 < rr
        sd = np.sqrt(dt)
        n1, n2 = normal_pairs_at(keys, j)
        xn = x + sd * n1
        yn = y + sd * n2
        dth = np.arctan2(x * yn - y * xn, x * xn + y * yn)
        thn = theta + dth
        maxd = np.maximum(maxd, np.abs(dth))
        th_abs = np.abs(thn)
        hit = th_abs >= c
        if hit.any():
            old = np.abs(theta[hit])
            frac = (c - old) / (th_abs[hit] - old)
            out[pos[hit]] = t[hit] + frac * dt[hit]
            out_maxdth[pos[hit]] = maxd[hit]
            keep = ~hit
            pos, keys = pos[keep], keys[keep]
            xn, yn, thn = xn[keep], yn[keep], thn[keep]
            t, dt, maxd = t[keep], dt[keep], maxd[keep]
        t = t + dt
        theta = thn
        x, y = xn, yn
    if pos.size:
        return CAP, first + int(pos.min())
    return OK, -1
