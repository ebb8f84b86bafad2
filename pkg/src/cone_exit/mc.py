"""Monte Carlo checks of the cone exit-time transforms.

Three independent routes to samples of the exit time ``T`` from the cone
``{|arg z| < c}`` of planar Brownian motion started at ``(1, 0)``:

* exact laws for ``c = pi/2`` (``T = 1/N^2``) and ``c = pi/4``
  (``T = 1/(2 max(N^2, N'^2))``);
* the skew product: ``T = int_0^tau exp(2 beta_s) ds`` where ``tau`` is the
  exit time of an independent Brownian motion ``gamma`` from ``[-c, c]``;
* a direct Euler walk of the planar path tracking its continuous winding.

Each path or draw reads its own counter-based stream keyed by
``(seed, stream id, index)``, so a batch is a pure function of the seed and
does not depend on how many workers produced it.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, MaxStepsExceeded, OriginTooClose
from .laplace import FactorizedLaw, _check_x
from .rng import (STREAM_EXACT_M1, STREAM_EXACT_M2, STREAM_LAW, CounterStream,
                  derive_keys, normal_pairs_at, uniforms_at)

BLOCK = 4096
ORIGIN_R2 = 1e-12

Method = Literal["skew", "planar"]


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    n: int

    def z_score(self, target: float) -> float:
        diff = self.mean - target
        if self.stderr == 0.0:
            return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        return diff / self.stderr

    def covers(self, target: float, k: float = 4.0, allowance: float = 0.0) -> bool:
        return abs(self.mean - target) <= k * self.stderr + allowance


def mc_estimate(values) -> MCEstimate:
    v = np.asarray(values, dtype=float)
    n = v.size
    if n == 0:
        raise DomainError("no samples")
    mean = float(v.mean())
    stderr = float(v.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return MCEstimate(mean, stderr, n)


@dataclass(frozen=True)
class PathConfig:
    """Discretisation of the exit-time simulators.

    ``step`` is the Euler step of the skew-product walk. The planar walk uses
    ``step * |Z|^2`` (a constant step on the winding clock), quartered
    repeatedly once ``|Z|`` falls below ``min_radius``.
    """

    c: float
    step: float = 1e-4
    max_steps: int = 100_000_000
    min_radius: float = 0.1

    def __post_init__(self):
        if not 0 < self.c <= math.pi:
            raise DomainError(f"cone half-angle must lie in (0, pi], got {self.c!r}")
        if not self.step > 0:
            raise DomainError("step must be positive")
        if self.max_steps < 1:
            raise DomainError("max_steps must be >= 1")
        if not self.min_radius > 0:
            raise DomainError("min_radius must be positive")


# ---------------------------------------------------------------------------
# factorized laws


def sample_factorized(law: FactorizedLaw, stream: CounterStream) -> float:
    """One draw of ``[N^2/2] + sum c_k e_k``."""
    total = 0.0
    if law.has_half_gaussian:
        n = stream.normal()
        total += 0.5 * n * n
    for c in law.exp_scales:
        total += c * stream.exponential()
    return total


def sample_factorized_batch(law: FactorizedLaw, n: int, seed: int, start: int = 0) -> np.ndarray:
    """Draws ``start .. start+n-1``; draw ``i`` matches :func:`sample_factorized` on
    stream ``(seed, LAW, i)`` up to last-ulp differences in ``log``."""
    keys = derive_keys(seed, STREAM_LAW, np.arange(start, start + n, dtype=np.uint64))
    total = np.zeros(n)
    counter = 0
    if law.has_half_gaussian:
        g, _ = normal_pairs_at(keys, 0)
        total += 0.5 * g * g
        counter = 2
    for c in law.exp_scales:
        total += c * -np.log(uniforms_at(keys, counter))
        counter += 1
    return total


def estimate_law_laplace(law: FactorizedLaw, x: float, n: int, seed: int,
                         chunk: int = 1 << 18) -> MCEstimate:
    """Monte Carlo ``E[exp(-x K)]`` from ``n`` seeded draws of the law."""
    _check_x(x)
    if n < 1000:
        raise DomainError("n must be at least 1000")
    if x == 0.0:
        return MCEstimate(1.0, 0.0, n)
    vals = np.empty(n)
    for lo in range(0, n, chunk):
        k = min(chunk, n - lo)
        vals[lo:lo + k] = np.exp(-x * sample_factorized_batch(law, k, seed, start=lo))
    return mc_estimate(vals)


# ---------------------------------------------------------------------------
# exact exit-time laws


def sample_exit_m1(stream: CounterStream) -> float:
    """Exit time from the half-plane cone ``c = pi/2``: ``1/N^2``."""
    while True:
        n = stream.normal()
        if n != 0.0:
            return 1.0 / (n * n)


def sample_exit_m2(stream: CounterStream) -> float:
    """Exit time from the quarter-plane cone ``c = pi/4``: ``1/(2 max(N^2, N'^2))``."""
    while True:
        a, b = stream.normal_pair()
        m = max(a * a, b * b)
        if m != 0.0:
            return 1.0 / (2.0 * m)


def exact_exit_samples(m: int, n: int, seed: int) -> np.ndarray:
    """``n`` exact exit times for ``m = 1`` or ``m = 2`` (vectorised)."""
    if m == 1:
        keys = derive_keys(seed, STREAM_EXACT_M1, np.arange(n, dtype=np.uint64))
        a, _ = normal_pairs_at(keys, 0)
        sq = a * a
        stream_id = STREAM_EXACT_M1
    elif m == 2:
        keys = derive_keys(seed, STREAM_EXACT_M2, np.arange(n, dtype=np.uint64))
        a, b = normal_pairs_at(keys, 0)
        sq = 2.0 * np.maximum(a * a, b * b)
        stream_id = STREAM_EXACT_M2
    else:
        raise DomainError("exact samplers exist only for m = 1 and m = 2")
    out = 1.0 / np.where(sq == 0.0, np.inf, sq)
    for i in np.flatnonzero(sq == 0.0):  # probability zero; redraw on the scalar path
        s = CounterStream.for_path(seed, stream_id, int(i))
        out[i] = sample_exit_m1(s) if m == 1 else sample_exit_m2(s)
    return out


# ---------------------------------------------------------------------------
# path simulators: scalar reference


def simulate_exit_skew(cfg: PathConfig, stream: CounterStream) -> float:
    """One skew-product sample ``int_0^tau exp(2 beta_s) ds``.

    Trapezoidal weights in ``exp(2 beta)``; the last increment is cut at the
    linearly interpolated crossing of ``|gamma| = c``.
    """
    c, h = cfg.c, cfg.step
    sh = math.sqrt(h)
    beta = gamma = area = 0.0
    e_prev = 1.0
    for _ in range(cfg.max_steps):
        n1, n2 = stream.normal_pair()
        beta_new = beta + sh * n1
        gamma_new = gamma + sh * n2
        g_abs = abs(gamma_new)
        if g_abs >= c:
            g_old = abs(gamma)
            frac = (c - g_old) / (g_abs - g_old)
            e_cross = math.exp(2.0 * (beta + frac * (beta_new - beta)))
            return area + 0.5 * frac * h * (e_prev + e_cross)
        e_new = math.exp(2.0 * beta_new)
        area = area + 0.5 * h * (e_prev + e_new)
        beta, gamma, e_prev = beta_new, gamma_new, e_new
    raise MaxStepsExceeded(f"|gamma| stayed below c={c} for {cfg.max_steps} steps")


def planar_walk(cfg: PathConfig, stream: CounterStream) -> tuple[float, float]:
    """One planar exit time plus the largest single-step winding increment."""
    c, h = cfg.c, cfg.step
    x, y = 1.0, 0.0
    theta = t = maxd = 0.0
    rmin2 = cfg.min_radius * cfg.min_radius
    for _ in range(cfg.max_steps):
        r2 = x * x + y * y
        if r2 < ORIGIN_R2:
            raise OriginTooClose(f"|Z| = {math.sqrt(r2):.3g} below 1e-6")
        if r2 < rmin2:
            dt = h * rmin2
            rr = rmin2
            while r2 < rr:
                dt *= 0.25
                rr *= 0.25
        else:
            dt = h * r2
        sd = math.sqrt(dt)
        n1, n2 = stream.normal_pair()
        xn = x + sd * n1
        yn = y + sd * n2
        # signed angle between successive position vectors
        dth = math.atan2(x * yn - y * xn, x * xn + y * yn)
        thn = theta + dth
        if abs(dth) > maxd:
            maxd = abs(dth)
        th_abs = abs(thn)
        if th_abs >= c:
            old = abs(theta)
            frac = (c - old) / (th_abs - old)
            return t + frac * dt, maxd
        t = t + dt
        theta = thn
        x, y = xn, yn
    raise MaxStepsExceeded(f"|theta| stayed below c={c} for {cfg.max_steps} steps")


def simulate_exit_planar(cfg: PathConfig, stream: CounterStream) -> float:
    """One exit time from a direct walk of the planar path and its winding."""
    return planar_walk(cfg, stream)[0]


# ---------------------------------------------------------------------------
# path simulators: batched


def _raise_for(status: int, index: int, cfg: PathConfig) -> None:
    if status == 1:
        raise MaxStepsExceeded(f"path {index} did not exit within {cfg.max_steps} steps")
    if status == 2:
        raise OriginTooClose(f"path {index} came within 1e-6 of the origin")


def simulate_exits(method: Method, cfg: PathConfig, n: int, seed: int, workers: int = 1,
                   backend: str | None = None, return_max_dtheta: bool = False):
    """``n`` exit-time samples, path ``i`` driven by stream ``(seed, method, i)``.

    Paths are cut into fixed blocks of :data:`BLOCK` that are farmed out to
    ``workers`` threads; the compiled kernel releases the GIL. Output is
    independent of ``workers``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if method not in ("skew", "planar"):
        raise DomainError(f"unknown method {method!r}")
    impl = kernels.get(backend)
    seed &= (1 << 64) - 1
    out = np.empty(n)
    maxd = np.zeros(n)
    starts = list(range(0, n, BLOCK))

    def run(lo: int):
        hi = min(n, lo + BLOCK)
        if method == "skew":
            return impl.skew_block(seed, lo, out[lo:hi], cfg.c, cfg.step, cfg.max_steps)
        return impl.planar_block(seed, lo, out[lo:hi], maxd[lo:hi], cfg.c, cfg.step,
                                 cfg.max_steps, cfg.min_radius)

    if workers <= 1:
        results = [run(lo) for lo in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, starts))
    failures = [(idx, status) for status, idx in results if status != 0]
    if failures:
        idx, status = min(failures)
        _raise_for(status, idx, cfg)
    if return_max_dtheta:
        return out, maxd
    return out


# ---------------------------------------------------------------------------
# the Gauss-Laplace functional


def gauss_laplace_values(samples, c: float, x: float) -> np.ndarray:
    t = np.asarray(samples, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("exit-time samples must be positive")
    return np.sqrt(2.0 * c * c / (math.pi * t)) * np.exp(-x / (2.0 * t))


def estimate_gauss_laplace(samples: Sequence[float], c: float, x: float) -> MCEstimate:
    """Mean of ``sqrt(2 c^2 / (pi T)) exp(-x / (2T))``; estimates ``phi_tilde(pi/(2c), x)``."""
    _check_x(x)
    return mc_estimate(gauss_laplace_values(samples, c, x))


def discretization_allowance(step: float) -> float:
    """Bias allowance for the path simulators: 0.01 at ``step = 1e-4``.

    Scaled as ``sqrt(step)``, the order of the discrete-monitoring bias.
    """
    return 0.01 * math.sqrt(step / 1e-4)
