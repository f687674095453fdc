"""Adaptive Dormand-Prince 5(4) integration of complex ODE systems along paths.

Each path segment is parameterized over t in [0, 1]; the right-hand side
is given in the w variable and pulled back through the parameterization.
States are complex numpy vectors; the embedded fourth-order solution
drives the step-size control.
"""

from __future__ import annotations

import numpy as np

# Dormand-Prince coefficients (same tableau as classic DOPRI5)
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B5 - _B4

MIN_STEP = 1e-13
MAX_REJECTS = 60


class ODEError(RuntimeError):
    pass


def integrate_fixed_interval(f, y0, rtol: float, atol: float, h0: float = 0.05):
    """Integrate dy/dt = f(t, y) over t in [0, 1]; returns the final state."""
    y = np.asarray(y0, dtype=complex).copy()
    t = 0.0
    h = min(h0, 1.0)
    k1 = np.asarray(f(t, y), dtype=complex)
    rejects = 0
    while t < 1.0:
        h = min(h, 1.0 - t)
        if h < MIN_STEP:
            raise ODEError(f"step size underflow at t = {t}")
        k = [k1]
        for i in range(1, 7):
            ti = t + _C[i] * h
            yi = y + h * sum(a * ki for a, ki in zip(_A[i], k))
            k.append(np.asarray(f(ti, yi), dtype=complex))
        y_new = y + h * sum(b * ki for b, ki in zip(_B5, k) if b != 0.0)
        err_vec = h * sum(e * ki for e, ki in zip(_E, k) if e != 0.0)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)))
        if not np.isfinite(err) or not np.all(np.isfinite(y_new)):
            raise ODEError(f"non-finite state at t = {t}")
        if err <= 1.0:
            t += h
            y = y_new
            k1 = k[6]  # first-same-as-last
            rejects = 0
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            h *= factor
        else:
            rejects += 1
            if rejects > MAX_REJECTS:
                raise ODEError(f"too many rejected steps at t = {t}")
            h *= max(0.1, 0.9 * err ** -0.2)
            k1 = k[0]
    return y


def integrate_segment(rhs, segment, y0, rtol: float, atol: float):
    """Integrate one parameterized segment.

    rhs(w, dw, y) receives the current point and velocity and returns dy/dt;
    it owns the pullback, so arclength accumulators can weight by |dw| while
    analytic states weight by dw.
    """

    def f(t, y):
        return rhs(segment.point(t), segment.velocity(t), y)

    # scale the trial step to the segment's speed so short hops stay cheap
    h0 = 0.1 / max(1.0, segment.max_speed())
    return integrate_fixed_interval(f, y0, rtol, atol, h0=h0)


def integrate_loop(rhs, loop, y0, rtol: float = 1e-10, atol: float = 1e-13, segment_callback=None):
    """Integrate along every segment of a loop, carrying the state through.

    segment_callback(index, w_end, y) fires after each segment, which the
    antiderivative-identity checks use to compare mid-path values.
    """
    y = np.asarray(y0, dtype=complex).copy()
    for idx, seg in enumerate(loop.segments):
        y = integrate_segment(rhs, seg, y, rtol, atol)
        if segment_callback is not None:
            segment_callback(idx, seg.point(1.0), y)
    return y
