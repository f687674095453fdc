"""Degree-d condition polynomials P_d, auxiliary q_d, and conjugacy jet constants.

Everything here compares two expansions: the reference one (parameters
alpha, always numeric) and a second one whose parameters are either the
symbols b0, b1, b2 or concrete numbers.  The same code path serves both,
since polynomials over Q(i) subsume constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gaussian import GaussianRational, gq
from .mpoly import MPoly
from .normalform import (
    FoliationParams,
    NormalFormExpansion,
    expand_normal_form,
    expand_with_beta,
)
from .obstruction import BandedMatrix, build_Md, functional_Fd, solve_Rd

_HALF = gq("1/2")
_THIRD = gq("1/3")


def build_q(e: NormalFormExpansion, d: int) -> MPoly:
    """Auxiliary polynomial q_d combining S_2..S_d with the constants c_k."""
    r = e.r_poly()
    c2, c3, c4, c5 = (e.c[k] for k in (2, 3, 4, 5))
    S = e.S
    if d == 4:
        return S[4] + c2 * S[3] * r - _HALF * c3 * S[2] * r**2
    if d == 5:
        return (
            S[5]
            + 2 * c2 * S[4] * r
            + c2 * c2 * S[3] * r**2
            - gq("2/3") * (c4 + c3 * c2) * S[2] * r**3
        )
    if d == 6:
        return (
            S[6]
            + 3 * c2 * S[5] * r
            + (_HALF * c3 + 3 * c2 * c2) * S[4] * r**2
            + (-_THIRD * c4 + gq("1/6") * c3 * c2 + c2**3) * S[3] * r**3
            + (
                -gq("3/4") * c5
                - gq("3/2") * c4 * c2
                - gq("1/8") * c3 * c3
                - gq("3/4") * c3 * c2 * c2
            )
            * S[2]
            * r**4
        )
    raise ValueError(f"q_d is defined for d in 4..6, got {d}")


def build_P(
    d: int,
    e_alpha: NormalFormExpansion,
    e_beta: NormalFormExpansion,
    R3: MPoly | None = None,
    R4: MPoly | None = None,
    R5: MPoly | None = None,
) -> MPoly:
    """The degree-d condition polynomial, per-degree definitions:

        P3 = ~S3 - S3
        P4 = ~q4 - q4 - S2 R3
        P5 = ~q5 - q5 - 2 S2 R4
        P6 = ~q6 - q6 + ~q4 R3 - (1/2) S2 R3^2 - S3 R4 - 3 S2 R5
    """
    S = e_alpha.S
    if d == 3:
        return e_beta.S[3] - S[3]
    if d == 4:
        if R3 is None:
            raise ValueError("P4 needs R3")
        return build_q(e_beta, 4) - build_q(e_alpha, 4) - S[2] * R3
    if d == 5:
        if R4 is None:
            raise ValueError("P5 needs R4")
        return build_q(e_beta, 5) - build_q(e_alpha, 5) - 2 * S[2] * R4
    if d == 6:
        if R3 is None or R4 is None or R5 is None:
            raise ValueError("P6 needs R3, R4 and R5")
        return (
            build_q(e_beta, 6)
            - build_q(e_alpha, 6)
            + build_q(e_beta, 4) * R3
            - _HALF * S[2] * R3**2
            - S[3] * R4
            - 3 * S[2] * R5
        )
    raise ValueError(f"P_d is defined for d in 3..6, got {d}")


def h_jets(e_alpha: NormalFormExpansion, e_beta: NormalFormExpansion, R3: MPoly, R4: MPoly):
    """Jet constants (h2, h3, h4) of the conjugating parabolic germ.

        h2 = ~c2 - c2
        h3 = h2^2 + (~c3 - c3)/2 + R3(0)
        h4 = (~c4 - c4)/3 - (~c3 ~c2 - c3 c2)/6 - R4(0) - ~c2 R3(0)
             + 3 h3 h2 - 2 h2^3 + (c3/2) h2
    """
    c2, c3, c4 = (e_alpha.c[k] for k in (2, 3, 4))
    t2, t3, t4 = (e_beta.c[k] for k in (2, 3, 4))
    r30 = R3.coeff_of("w", 0)
    r40 = R4.coeff_of("w", 0)
    h2 = _as_poly(t2) - c2
    h3 = h2 * h2 + _HALF * (_as_poly(t3) - c3) + r30
    h4 = (
        _THIRD * (_as_poly(t4) - c4)
        - gq("1/6") * (_as_poly(t3) * t2 - _as_poly(c3) * c2)
        - r40
        - _as_poly(t2) * r30
        + 3 * h3 * h2
        - 2 * h2**3
        + _HALF * c3 * h2
    )
    return h2, h3, h4


def _as_poly(x) -> MPoly:
    return x if isinstance(x, MPoly) else MPoly.const(x)


@dataclass
class ConditionSet:
    """Per-degree bundle of the exact pipeline outputs for one beta choice."""

    params: FoliationParams
    symbolic: bool
    P: dict[int, MPoly] = field(default_factory=dict)
    R: dict[int, MPoly] = field(default_factory=dict)
    F: dict[int, MPoly] = field(default_factory=dict)
    q: dict[int, MPoly] = field(default_factory=dict)
    q_tilde: dict[int, MPoly] = field(default_factory=dict)
    matrices: dict[int, BandedMatrix] = field(default_factory=dict)
    h2: MPoly = field(default_factory=MPoly.zero)
    h3: MPoly = field(default_factory=MPoly.zero)
    h4: MPoly = field(default_factory=MPoly.zero)

    def f_degrees(self) -> dict[int, int]:
        return {d: self.F[d].total_degree() for d in sorted(self.F)}


def build_condition_set(
    p: FoliationParams,
    beta: tuple[GaussianRational, GaussianRational, GaussianRational] | None = None,
) -> ConditionSet:
    """Run the full degree 3..6 pipeline at alpha versus beta.

    With beta=None the second expansion is symbolic in b0, b1, b2 and the
    F_d come out as polynomials in beta; with a concrete beta everything
    collapses to Gaussian-rational constants.
    """
    e_alpha = expand_normal_form(p)
    if beta is None:
        e_beta = expand_with_beta(p)
    else:
        e_beta = expand_normal_form(p.with_alpha(*beta))
    cs = ConditionSet(params=p, symbolic=beta is None)
    R3 = R4 = R5 = None
    for d in (3, 4, 5, 6):
        P = build_P(d, e_alpha, e_beta, R3=R3, R4=R4, R5=R5)
        M = build_Md(d, p.lambda1, p.lambda2)
        R = solve_Rd(M, P)
        F = functional_Fd(M, P, R)
        cs.P[d], cs.R[d], cs.F[d], cs.matrices[d] = P, R, F, M
        if d >= 4:
            cs.q[d] = build_q(e_alpha, d)
            cs.q_tilde[d] = build_q(e_beta, d)
        if d == 3:
            R3 = R
        elif d == 4:
            R4 = R
        elif d == 5:
            R5 = R
    cs.h2, cs.h3, cs.h4 = h_jets(e_alpha, e_beta, cs.R[3], cs.R[4])
    return cs
