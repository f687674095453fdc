import math

import numpy as np
import pytest

from holocert.numerics.loops import Arc, Line, Loop
from holocert.numerics.odepath import ODEError, integrate_fixed_interval, integrate_loop, integrate_segment


def test_exponential_growth_on_interval():
    y = integrate_fixed_interval(lambda t, y: y, np.array([1.0 + 0j]), rtol=1e-12, atol=1e-14)
    assert abs(y[0] - math.e) < 1e-10


def test_complex_rotation():
    y = integrate_fixed_interval(
        lambda t, y: 1j * math.pi * y, np.array([1.0 + 0j]), rtol=1e-12, atol=1e-14
    )
    assert abs(y[0] + 1.0) < 1e-10  # e^{i pi} = -1


def test_segment_pullback_line():
    # integral of dw along a segment recovers the displacement
    seg = Line(0j, 2 + 1j)
    y = integrate_segment(lambda w, dw, y: np.array([dw]), seg, np.array([0j]), 1e-12, 1e-14)
    assert abs(y[0] - (2 + 1j)) < 1e-10


def test_arclength_accumulator_does_not_cancel():
    # |dw| weighting measures length even over an out-and-back path
    out_back = Loop((Line(0j, 1 + 0j), Line(1 + 0j, 0j)), basepoint=0j, label="there-and-back")
    y = integrate_loop(
        lambda w, dw, y: np.array([dw, abs(dw)]), out_back, np.array([0j, 0j]), rtol=1e-12, atol=1e-14
    )
    assert abs(y[0]) < 1e-10  # analytic integral cancels
    assert abs(y[1] - 2.0) < 1e-10  # arclength does not


def test_residue_around_circle():
    # closed integral of 1/w around the unit circle gives 2 pi i
    circle = Arc(0j, 1.0, 0.0, 2 * math.pi)

    def rhs(w, dw, y):
        val = dw / w if w != 0 else 0j
        return np.array([val], dtype=complex)

    acc = np.array([0j])
    acc = integrate_segment(rhs, circle, acc, 1e-12, 1e-14)
    assert abs(acc[0] - 2j * math.pi) < 1e-9


def test_segment_callback_fires_in_order():
    seg1 = Line(0j, 1 + 0j)
    seg2 = Line(1 + 0j, 0j)
    loop = Loop((seg1, seg2), basepoint=0j, label="wedge")
    seen = []
    integrate_loop(
        lambda w, dw, y: np.array([dw]),
        loop,
        np.array([0j]),
        rtol=1e-10,
        atol=1e-13,
        segment_callback=lambda idx, w, y: seen.append((idx, w)),
    )
    assert [i for i, _ in seen] == [0, 1]
    assert seen[0][1] == pytest.approx(1 + 0j)
    assert seen[1][1] == pytest.approx(0j)


def test_nonfinite_state_raises():
    def rhs(t, y):
        return np.array([y[0] ** 2 * 1e4])  # finite-time blowup on [0, 1]

    with pytest.raises(ODEError):
        integrate_fixed_interval(rhs, np.array([1.0 + 0j]), rtol=1e-8, atol=1e-10)


def test_accuracy_scales_with_rtol():
    errs = []
    for rtol in (1e-6, 1e-10):
        y = integrate_fixed_interval(lambda t, y: y, np.array([1.0 + 0j]), rtol=rtol, atol=1e-16)
        errs.append(abs(y[0] - math.e))
    assert errs[1] < errs[0]
