"""Cross-validation of the closed-form coefficient formulas and integral identities.

Every check produces a row {name, loop, degree, residual, tolerance, pass}.
Residuals are measured relative to the accumulated L1 mass of the
integrands involved (plus the magnitudes of the compared values), which is
the honest scale for cancellation-heavy loop integrals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

from ..conditions import build_condition_set
from ..gaussian import GaussianRational
from ..normalform import FoliationParams
from .holonomy import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    FloatModel,
    _polyval,
    _sr,
    _to_coeff_array,
    float_model,
    integrate_quadratures,
    integrate_variations,
)
from .jets import commutator, compose, invert, jet_distance
from .loops import Loop, LoopSystem, build_loops, concat
from .odepath import integrate_loop

DEGREE_TOLERANCES = {2: 1e-6, 3: 1e-6, 4: 1e-5, 5: 1e-5, 6: 1e-4}
A1_TOLERANCE = 1e-8
STRUCTURE_TOLERANCE = 1e-7
LEMMA_TOLERANCE = 1e-6
A21_FLOOR = 1e-6


@dataclass
class CheckRow:
    name: str
    loop: str
    degree: int
    residual: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "loop": self.loop,
            "degree": self.degree,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _row(name, loop, degree, residual, tolerance, larger_is_better=False) -> CheckRow:
    ok = residual > tolerance if larger_is_better else residual <= tolerance
    return CheckRow(name, loop, degree, float(residual), float(tolerance), bool(ok))


def _sum_terms(terms) -> tuple[complex, float]:
    total = 0j
    mass = 0.0
    for t in terms:
        total += t
        mass += abs(t)
    return total, mass


# -- coefficient formulas -----------------------------------------------------------


def formula_coefficients(model: FloatModel, bundle) -> dict[int, tuple[complex, float]]:
    """a_2..a_6 assembled from the quadrature bundle and the constants c_d.

    Returns degree -> (value, absolute term mass) pairs; the mass feeds the
    residual scale.
    """
    c2, c3, c4, c5 = (model.c[d] for d in (2, 3, 4, 5))
    v = bundle.values
    a2, m2 = v["psi2"], abs(v["psi2"])
    a3, m3 = _sum_terms([a2**2, v["psi3"]])
    a4, m4 = _sum_terms(
        [2 * a3 * a2, -(a2**3), c3 / 2 * a2, -c2 * v["psi3"], v["delta1"], v["psi4"]]
    )
    a5, m5 = _sum_terms(
        [
            2 * a4 * a2,
            1.5 * a3**2,
            -4 * a3 * a2**2,
            1.5 * a2**4,
            c3 / 2 * a2**2,
            (2 * c4 - c3 * c2) / 3 * a2,
            c2**2 * v["psi3"],
            -2 * c2 * v["psi4"],
            -2 * c2 * v["delta1"],
            v["delta2"],
            2 * v["gamma1"],
            v["psi5"],
        ]
    )
    a6, m6 = _sum_terms(
        [
            2 * a5 * a2,
            3 * a4 * a3,
            -4 * a4 * a2**2,
            -5 * a3**2 * a2,
            7 * a3 * a2**3,
            -2 * a2**5,
            c3 / 2 * a2**3,
            (c4 - c3 * c2 / 2) * a2**2,
            (3 * c5 / 4 - c4 * c2 / 2 - c3**2 / 8 + c3 * c2**2 / 4 + c3 / 2 * v["psi3"]) * a2,
            -c2 / 2 * v["psi3"] ** 2,
            (c4 / 3 + c3 * c2 / 3 - c2**3) * v["psi3"],
            (-c3 / 2 + 3 * c2**2) * v["delta1"],
            -3 * c2 * v["delta2"],
            v["delta3"],
            v["delta11"],
            (-c3 / 2 + 3 * c2**2) * v["psi4"],
            -6 * c2 * v["gamma1"],
            3 * v["gamma2"],
            v["gamma01"],
            -3 * c2 * v["psi5"],
            3 * v["b1"],
            v["psi6"],
        ]
    )
    return {2: (a2, m2), 3: (a3, m3), 4: (a4, m4), 5: (a5, m5), 6: (a6, m6)}


def verify_variation_formulas(model: FloatModel, loop: Loop, rtol=None, atol=None) -> list[CheckRow]:
    """Compare the ODE jet against the bundle-assembled formulas, degree 2..6."""
    kwargs = {}
    if rtol is not None:
        kwargs["rtol"] = rtol
    if atol is not None:
        kwargs["atol"] = atol
    jet = integrate_variations(model, loop, **kwargs)
    bundle = integrate_quadratures(model, loop, **kwargs)
    assembled = formula_coefficients(model, bundle)
    rows = []
    for d in range(2, 7):
        value, mass = assembled[d]
        ode = jet.a(d)
        scale = max(1.0, abs(ode), mass, jet.norms[d - 1], bundle.scale(*_SCALE_NAMES[d]))
        residual = abs(ode - value) / scale
        rows.append(_row(f"variation-formula-deg{d}", loop.label, d, residual, DEGREE_TOLERANCES[d]))
    return rows


_SCALE_NAMES = {
    2: ("psi2",),
    3: ("psi2", "psi3"),
    4: ("psi2", "psi3", "psi4", "delta1"),
    5: ("psi2", "psi3", "psi4", "psi5", "delta1", "delta2", "gamma1"),
    6: (
        "psi2",
        "psi3",
        "psi4",
        "psi5",
        "psi6",
        "delta1",
        "delta2",
        "delta3",
        "delta11",
        "gamma1",
        "gamma2",
        "gamma01",
        "b1",
    ),
}


# -- integral lemma checks -----------------------------------------------------------


def _zeta_accumulator_rhs(u1: complex, u2: complex, P: np.ndarray):
    def rhs(w, dw, y):
        zeta = y[0]
        dzeta = (u1 / (1.0 + w) - u2 / (1.0 - w)) * zeta
        val = _polyval(P, w) * zeta
        return np.array([dzeta * dw, val * dw, abs(val) * abs(dw)], dtype=complex)

    return rhs


def _loop_integral_with_zeta(u1, u2, P, loop, rtol, atol):
    y = integrate_loop(
        _zeta_accumulator_rhs(u1, u2, P), loop, np.array([1.0, 0.0, 0.0], dtype=complex), rtol, atol
    )
    return complex(y[1]), float(abs(y[2].real))


def _phi_power_accumulator_rhs(model: FloatModel, numer: np.ndarray, d: int):
    def rhs(w, dw, y):
        r, s = _sr(model, w)
        p1 = y[0]
        val = _polyval(numer, w) / r**d * p1 ** (d - 1)
        return np.array([s / r * p1 * dw, val * dw, abs(val) * abs(dw)], dtype=complex)

    return rhs


def _apply_Ld_float(d: int, model: FloatModel, R: np.ndarray) -> np.ndarray:
    r = np.array([-1.0, 0.0, 1.0], dtype=complex)
    s_minus_rp = np.array(
        [model.lam2 - model.lam1, model.sigma - 2.0], dtype=complex
    )  # s - r' = (sigma - 2) w + (lam2 - lam1)
    return npp.polyadd(npp.polymul(npp.polyder(R), r), (d - 1) * npp.polymul(s_minus_rp, R))


def verify_integral_lemmas(
    model: FloatModel,
    loops: LoopSystem,
    seed: int = 0,
    n_samples: int = 20,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    conditions=None,
) -> list[CheckRow]:
    """Three families of checks:

    (a) the two-loop identity I(gamma2) = (1 + e^{2 pi i u1}) I(gamma1) for
        random polynomials against zeta = (1+w)^u1 (1-w)^u2;
    (b) forward vanishing: integrands L_d(R)/r^d phi1^(d-1) integrate to
        zero along gamma1 for random R of degree <= 2d-3;
    (c) the antiderivative identity for the exact pipeline's R_d at a
        numeric beta, checked at every segment endpoint of gamma1 with
        constant C = -(-1)^(d-1) R_d(0).
    """
    rng = np.random.default_rng(seed)
    rows = []

    def rand_coeffs(n):
        return rng.standard_normal(n) + 1j * rng.standard_normal(n)

    for k in range(n_samples):
        d = int(rng.integers(3, 7))
        u1 = (d - 1) * model.lam1 - d
        u2 = (d - 1) * model.lam2 - d
        P = rand_coeffs(7)
        i1, m1 = _loop_integral_with_zeta(u1, u2, P, loops.gamma1, rtol, atol)
        i2, m2 = _loop_integral_with_zeta(u1, u2, P, loops.gamma2, rtol, atol)
        factor = 1.0 + cmath.exp(2j * math.pi * u1)
        scale = max(1.0, m2 + abs(factor) * m1)
        rows.append(
            _row(f"integral-lemma-two-loops[{k}]", "gamma1/gamma2", d, abs(i2 - factor * i1) / scale, LEMMA_TOLERANCE)
        )

    for k in range(n_samples):
        d = int(rng.integers(3, 7))
        R = rand_coeffs(2 * d - 2)  # degree <= 2d-3
        P = _apply_Ld_float(d, model, R)
        y = integrate_loop(
            _phi_power_accumulator_rhs(model, P, d),
            loops.gamma1,
            np.array([1.0, 0.0, 0.0], dtype=complex),
            rtol,
            atol,
        )
        residual = abs(complex(y[1])) / max(1.0, abs(y[2].real))
        rows.append(_row(f"forward-vanishing[{k}]", "gamma1", d, residual, LEMMA_TOLERANCE))

    rows.extend(
        antiderivative_identity_rows(model, loops.gamma1, rtol=rtol, atol=atol, conditions=conditions, seed=seed)
    )
    return rows


def antiderivative_identity_rows(model, loop, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL, conditions=None, seed=0):
    """Check (c): integral of (P_d + F_d)/r^d phi1^(d-1) against its closed form."""
    p = model.params
    if conditions is None:
        rng = np.random.default_rng(seed + 1)
        beta = tuple(
            GaussianRational.from_complex(complex(z))
            for z in rng.standard_normal(3) + 1j * rng.standard_normal(3)
        )
        conditions = build_condition_set(p, beta=beta)
    rows = []
    for d in (3, 4, 5, 6):
        numer = _to_coeff_array(conditions.P[d]) if not conditions.P[d].is_zero() else np.zeros(1, complex)
        F = conditions.F[d].constant_term().to_complex()
        numer = npp.polyadd(numer, np.array([F], dtype=complex))
        R = _to_coeff_array(conditions.R[d])
        R0 = _polyval(R, 0j)
        C = -((-1.0) ** (d - 1)) * R0
        worst = 0.0

        def callback(idx, w, y, d=d, R=R, C=C):
            nonlocal worst
            p1 = y[0]
            closed = _polyval(R, w) / (w * w - 1.0) ** (d - 1) * p1 ** (d - 1) + C
            scale = max(1.0, abs(closed), abs(y[2].real))
            worst = max(worst, abs(complex(y[1]) - closed) / scale)

        integrate_loop(
            _phi_power_accumulator_rhs(model, numer, d),
            loop,
            np.array([1.0, 0.0, 0.0], dtype=complex),
            rtol,
            atol,
            segment_callback=callback,
        )
        rows.append(_row(f"antiderivative-identity-deg{d}", loop.label, d, worst, LEMMA_TOLERANCE))
    return rows


# -- structural checks ---------------------------------------------------------------


def structural_rows(
    model: FloatModel,
    loops: LoopSystem,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    seed: int = 0,
) -> tuple[list[CheckRow], str]:
    """Jet-level sanity of the loop construction; also pins down the
    group-word composition convention empirically and reports it."""
    rows = []
    jets = {}
    for lp in (loops.mu1, loops.mu2, loops.gamma1, loops.gamma2):
        jets[lp.label] = integrate_variations(model, lp, rtol=rtol, atol=atol)

    for label in ("gamma1", "gamma2"):
        rows.append(
            _row(f"commutator-tangency[{label}]", label, 1, abs(jets[label].a1 - 1.0), A1_TOLERANCE)
        )

    rev = integrate_variations(model, loops.gamma1.inverse(), rtol=rtol, atol=atol)
    rows.append(
        _row("reversed-loop-is-inverse-jet", "gamma1", 0, jet_distance(rev, invert(jets["gamma1"])), STRUCTURE_TOLERANCE)
    )

    both = concat(loops.mu2, loops.mu1, label="mu2*mu1")
    seq = integrate_variations(model, both, rtol=rtol, atol=atol)
    rows.append(
        _row(
            "concatenation-composes-jets",
            both.label,
            0,
            jet_distance(seq, compose(jets["mu1"], jets["mu2"])),
            STRUCTURE_TOLERANCE,
        )
    )

    m1, m2 = jets["mu1"], jets["mu2"]
    cand_after = commutator(invert(m1), invert(m2))
    cand_before = commutator(m2, m1)

    def raw_dist(f, g):
        scale = np.maximum(1.0, np.maximum(np.abs(f.coeffs), np.abs(g.coeffs)))
        return float(np.max(np.abs(f.coeffs - g.coeffs) / scale))

    # discriminate on the raw metric (the wrong reading differs at O(1)),
    # then grade the winner against the mass-aware tolerance
    if raw_dist(jets["gamma1"], cand_after) <= raw_dist(jets["gamma1"], cand_before):
        convention = "word read leftmost-first; Delta over a path a.b is Delta_b o Delta_a"
        winner = cand_after
    else:
        convention = "word read leftmost-first; Delta over a path a.b is Delta_a o Delta_b"
        winner = cand_before
    rows.append(
        _row("commutator-convention", "gamma1", 0, jet_distance(jets["gamma1"], winner), STRUCTURE_TOLERANCE)
    )

    alt_radius = loops.radius * 2.0 / 3.0
    alt = build_loops(alt_radius)
    jet_alt = integrate_variations(model, alt.gamma1, rtol=rtol, atol=atol)
    rows.append(
        _row("radius-independence", f"gamma1@{alt_radius:g}", 0, jet_distance(jets["gamma1"], jet_alt), STRUCTURE_TOLERANCE)
    )

    a21 = jets["gamma1"].a(2)
    rows.append(_row("a21-nonzero-proxy", "gamma1", 2, abs(a21), A21_FLOOR, larger_is_better=True))
    nonlinear = max(abs(jets["gamma1"].a(d)) for d in range(2, 7))
    rows.append(_row("nonlinear-jet-proxy", "gamma1", 0, nonlinear, A21_FLOOR, larger_is_better=True))

    a22 = jets["gamma2"].a(2)
    target = 1.0 + model.nu1()
    residual = abs(a22 / a21 - target) / abs(target) if a21 != 0 else math.inf
    rows.append(_row("a22-ratio-is-1-plus-nu1", "gamma2", 2, residual, LEMMA_TOLERANCE))

    # quadratic coefficient is beta-independent: perturb the alpha parameters
    rng = np.random.default_rng(seed + 2)
    beta = tuple(GaussianRational.from_complex(complex(z)) for z in rng.standard_normal(3) + 1j * rng.standard_normal(3))
    model_beta = float_model(model.params.with_alpha(*beta))
    for label, lp in (("gamma1", loops.gamma1), ("gamma2", loops.gamma2)):
        tilde = integrate_variations(model_beta, lp, order=2, rtol=rtol, atol=atol)
        base = jets[label]
        scale = max(1.0, abs(base.a(2)), base.norms[1])
        rows.append(
            _row(f"a2-independent-of-beta[{label}]", label, 2, abs(tilde.a(2) - base.a(2)) / scale, LEMMA_TOLERANCE)
        )
    return rows, convention


def run_numeric_verification(
    p: FoliationParams,
    radius: float = 0.5,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    seed: int = 0,
    n_samples: int = 20,
    conditions=None,
) -> dict:
    """Full numeric report: deterministic given (params, radius, rtol, seed)."""
    model = float_model(p)
    loops = build_loops(radius)
    rows = []
    for lp in (loops.gamma1, loops.gamma2):
        rows.extend(verify_variation_formulas(model, lp, rtol=rtol, atol=atol))
    rows.extend(
        verify_integral_lemmas(
            model, loops, seed=seed, n_samples=n_samples, rtol=rtol, atol=atol, conditions=conditions
        )
    )
    struct, convention = structural_rows(model, loops, rtol=rtol, atol=atol, seed=seed)
    rows.extend(struct)
    return {
        "params": p.to_dict(),
        "radius": radius,
        "rtol": rtol,
        "atol": atol,
        "seed": seed,
        "convention": convention,
        "checks": [r.to_dict() for r in rows],
        "n_checks": len(rows),
        "failed": [r.name for r in rows if not r.passed],
        "all_pass": all(r.passed for r in rows),
    }


def numeric_summary(report: dict) -> dict:
    """Compact summary embedded in certificates."""
    return {
        "all_pass": report["all_pass"],
        "n_checks": report["n_checks"],
        "failed": report["failed"],
        "convention": report["convention"],
        "radius": report["radius"],
        "rtol": report["rtol"],
        "seed": report["seed"],
    }
