"""Derivative-free 1-d maximization and curve-crossing location.

Deterministic by construction: fixed probe grids, golden-section
refinement and plain bisection, no randomized restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonFinite, NoSignChange

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    tol_x: float = 1e-8
    max_iter: int = 200

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket requires lo < hi")
        if self.tol_x <= 0.0:
            raise ValueError("tol_x must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


def _golden_max(f, a: float, b: float, tol: float, max_iter: int):
    h = b - a
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if yc > yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INV_PHI * h
            yd = f(d)
    return (c, yc) if yc > yd else (d, yd)


def maximize_scalar(f, bracket: Bracket, n_starts: int = 8) -> tuple[float, float]:
    """Maximize f on the bracket: equispaced probes, then golden section.

    The refinement runs in the probe interval around the best probe, so
    multi-modal objectives are resolved down to the probe spacing.  A
    flat objective returns the first probe.  Raises NonFinite if any
    evaluation is not finite.
    """
    if n_starts < 2:
        n_starts = 2
    lo, hi = bracket.lo, bracket.hi
    step = (hi - lo) / (n_starts - 1)
    probes = [lo + i * step for i in range(n_starts)]
    values = []
    for x in probes:
        y = f(x)
        if not math.isfinite(y):
            raise NonFinite(f"objective returned {y!r} at x={x!r}")
        values.append(y)
    best = max(range(n_starts), key=lambda i: values[i])
    if all(v == values[0] for v in values):
        return probes[0], values[0]
    a = probes[max(best - 1, 0)]
    b = probes[min(best + 1, n_starts - 1)]
    x_opt, f_opt = _golden_max(f, a, b, bracket.tol_x, bracket.max_iter)
    if not math.isfinite(f_opt):
        raise NonFinite(f"objective returned {f_opt!r} at x={x_opt!r}")
    if values[best] > f_opt:
        return probes[best], values[best]
    return x_opt, f_opt


def parabolic_polish(f, x_opt: float, lo: float, hi: float, h: float) -> float:
    """Refine an argmax by one three-point parabola fit.

    Near-flat objectives limit golden-section resolution to the square
    root of the evaluation noise; fitting a parabola over a window wider
    than that noise floor recovers the vertex.  Returns x_opt unchanged
    whenever the fit is unusable (non-concave samples, step outside the
    bracket, non-finite values).
    """
    a, b = x_opt - h, x_opt + h
    if a < lo or b > hi or h <= 0.0:
        return x_opt
    fa, f0, fb = f(a), f(x_opt), f(b)
    if not all(math.isfinite(v) for v in (fa, f0, fb)):
        return x_opt
    curve = fa - 2.0 * f0 + fb
    if curve >= 0.0:
        return x_opt
    shift = 0.5 * h * (fa - fb) / curve
    if abs(shift) > h:
        return x_opt
    return x_opt + shift


@dataclass(frozen=True)
class Crossing:
    """Root of f - g; count records how many sign changes the scan saw."""

    x: float
    count: int

    def __float__(self) -> float:
        return self.x


def find_crossing(f, g, bracket: Bracket, scan: int = 64) -> Crossing:
    """Locate where f - g changes sign, by scan plus bisection.

    With several sign changes on the bracket the smallest root is
    returned and the count reports how many were seen.
    """
    lo, hi = bracket.lo, bracket.hi
    xs = [lo + (hi - lo) * i / scan for i in range(scan + 1)]
    hs = [f(x) - g(x) for x in xs]
    for x, h in zip(xs, hs):
        if not math.isfinite(h):
            raise NonFinite(f"curve difference returned {h!r} at x={x!r}")
    intervals = []
    for i in range(scan):
        if hs[i] == 0.0:
            intervals.append((xs[i], xs[i]))
        elif hs[i] * hs[i + 1] < 0.0:
            intervals.append((xs[i], xs[i + 1]))
    if hs[-1] == 0.0:
        intervals.append((xs[-1], xs[-1]))
    if not intervals:
        raise NoSignChange(
            f"no sign change of the curve difference on [{lo}, {hi}]"
        )
    a, b = intervals[0]
    if a == b:
        return Crossing(a, len(intervals))
    ha = f(a) - g(a)
    for _ in range(bracket.max_iter):
        if b - a <= bracket.tol_x:
            break
        m = 0.5 * (a + b)
        hm = f(m) - g(m)
        if hm == 0.0:
            return Crossing(m, len(intervals))
        if ha * hm < 0.0:
            b = m
        else:
            a, ha = m, hm
    return Crossing(0.5 * (a + b), len(intervals))
