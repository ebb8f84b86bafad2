# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled path kernels; same contract as ``_kernels_py``.

Paths run one at a time with the GIL released. Arithmetic mirrors the scalar
reference in ``mc`` operation for operation, and both call libm, so results
agree bit for bit (built with ``-ffp-contract=off``).
"""

from libc.math cimport atan2, cos, exp, fabs, log, sin, sqrt
from libc.stdint cimport int64_t, uint64_t

cdef enum:
    OK = 0
    CAP = 1
    ORIGIN = 2

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef double TWO_POW_M53 = 1.1102230246251565e-16
cdef double TWO_PI = 6.283185307179586
cdef double ORIGIN_R2 = 1e-12
cdef uint64_t STREAM_SKEW = 1
cdef uint64_t STREAM_PLANAR = 2


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t derive_key(uint64_t seed, uint64_t stream, uint64_t index) noexcept nogil:
    cdef uint64_t k = mix64(seed + GAMMA)
    k = mix64(k ^ mix64(stream + GAMMA))
    return mix64(k ^ mix64(index + GAMMA))


cdef inline double uniform_at(uint64_t key, uint64_t counter) noexcept nogil:
    cdef uint64_t z = mix64(key + (counter + 1) * GAMMA)
    return (<double>(z >> 11) + 0.5) * TWO_POW_M53


cdef inline void normal_pair(uint64_t key, uint64_t pair, double* n1, double* n2) noexcept nogil:
    cdef double u1 = uniform_at(key, 2 * pair)
    cdef double u2 = uniform_at(key, 2 * pair + 1)
    cdef double r = sqrt(-2.0 * log(u1))
    cdef double t = TWO_PI * u2
    n1[0] = r * cos(t)
    n2[0] = r * sin(t)


cdef int skew_path(uint64_t key, double c, double h, int64_t max_steps,
                   double* result) noexcept nogil:
    cdef double beta = 0.0, gamma = 0.0, area = 0.0, e_prev = 1.0
    cdef double sh = sqrt(h)
    cdef double n1, n2, beta_new, gamma_new, g_abs, g_old, frac, e_cross, e_new
    cdef int64_t j
    for j in range(max_steps):
        normal_pair(key, <uint64_t>j, &n1, &n2)
        beta_new = beta + sh * n1
        gamma_new = gamma + sh * n2
        g_abs = fabs(gamma_new)
        if g_abs >= c:
            g_old = fabs(gamma)
            frac = (c - g_old) / (g_abs - g_old)
            e_cross = exp(2.0 * (beta + frac * (beta_new - beta)))
            result[0] = area + 0.5 * frac * h * (e_prev + e_cross)
            return OK
        e_new = exp(2.0 * beta_new)
        area = area + 0.5 * h * (e_prev + e_new)
        beta = beta_new
        gamma = gamma_new
        e_prev = e_new
    return CAP


cdef int planar_path(uint64_t key, double c, double h, int64_t max_steps, double min_radius,
                     double* result, double* maxdth) noexcept nogil:
    cdef double x = 1.0, y = 0.0, theta = 0.0, t = 0.0, maxd = 0.0
    cdef double rmin2 = min_radius * min_radius
    cdef double r2, dt, rr, sd, n1, n2, xn, yn, dth, thn, th_abs, old, frac
    cdef int64_t j
    for j in range(max_steps):
        r2 = x * x + y * y
        if r2 < ORIGIN_R2:
            return ORIGIN
        if r2 < rmin2:
            dt = h * rmin2
            rr = rmin2
            while r2 < rr:
                dt *= 0.25
                rr *= 0.25
        else:
            dt = h * r2
        sd = sqrt(dt)
        normal_pair(key, <uint64_t>j, &n1, &n2)
        xn = x + sd * n1
        yn = y + sd * n2
        dth = atan2(x * yn - y * xn, x * xn + y * yn)
        thn = theta + dth
        if fabs(dth) > maxd:
            maxd = fabs(dth)
        th_abs = fabs(thn)
        if th_abs >= c:
            old = fabs(theta)
            frac = (c - old) / (th_abs - old)
            result[0] = t + frac * dt
            maxdth[0] = maxd
            return OK
        t = t + dt
        theta = thn
        x = xn
        y = yn
    return CAP


def skew_block(seed, first, double[::1] out, double c, double h, max_steps):
    cdef uint64_t s = <uint64_t>seed
    cdef int64_t f = first, cap = max_steps
    cdef Py_ssize_t i, n = out.shape[0]
    cdef int status = OK
    with nogil:
        for i in range(n):
            status = skew_path(derive_key(s, STREAM_SKEW, <uint64_t>(f + i)), c, h, cap, &out[i])
            if status != OK:
                break
    if status != OK:
        return status, f + i
    return OK, -1


def planar_block(seed, first, double[::1] out, double[::1] out_maxdth, double c, double h,
                 max_steps, double min_radius):
    cdef uint64_t s = <uint64_t>seed
    cdef int64_t f = first, cap = max_steps
    cdef Py_ssize_t i, n = out.shape[0]
    cdef int status = OK
    with nogil:
        for i in range(n):
            status = planar_path(derive_key(s, STREAM_PLANAR, <uint64_t>(f + i)), c, h, cap,
                                 min_radius, &out[i], &out_maxdth[i])
            if status != OK:
                break
    if status != OK:
        return status, f + i
    return OK, -1
