import pytest

from holocert.gaussian import gq
from holocert.mpoly import MPoly
from holocert.obstruction import (
    GenericityError,
    SolverError,
    apply_Ld,
    build_Md,
    functional_Fd,
    solve_Rd,
)

from conftest import random_generic_params

W = MPoly.var("w")


def test_M3_values_at_test_point(tp):
    M = build_Md(3, tp.lambda1, tp.lambda2)
    assert M.A == gq(-4, 6)
    assert M.B == gq(4, 2)
    assert M.diagonal_dropped() == (gq(3, 2), gq(2, 2), gq(1, 2), gq(0, 2))


def test_first_column_is_image_of_one(tp):
    # f = 1 has f' = 0, so L_d(1) = (B_d - (2d-2)) w + A_d ... only via s - r'
    for d in (3, 4, 5, 6):
        M = build_Md(d, tp.lambda1, tp.lambda2)
        img = apply_Ld(d, tp.lambda1, tp.lambda2, MPoly.one())
        col = [M.rows[i][0] for i in range(M.n_rows)]
        expect = [img.coeff_of("w", i).constant_term() for i in range(M.n_rows)]
        assert col == expect
        assert col[0] == M.A
        assert col[1] == M.B - (2 * d - 2)


def test_matrix_matches_bruteforce_oracle(tp, rng):
    # assemble the matrix by applying L_d to each basis monomial directly
    for p in [tp, random_generic_params(rng)]:
        for d in (3, 4, 5, 6):
            M = build_Md(d, p.lambda1, p.lambda2)
            for k in range(M.n_cols):
                img = apply_Ld(d, p.lambda1, p.lambda2, W**k)
                for i in range(M.n_rows):
                    assert M.rows[i][k] == img.coeff_of("w", i).constant_term()


def test_planted_singular_diagonal():
    # lambda1 = 1, lambda2 = 0 gives B_3 = 2 so B_3 - 2 = 0
    with pytest.raises(GenericityError):
        build_Md(3, gq(1), gq(0))


def test_bad_degree_rejected(tp):
    with pytest.raises(ValueError):
        build_Md(2, tp.lambda1, tp.lambda2)
    with pytest.raises(ValueError):
        build_Md(7, tp.lambda1, tp.lambda2)


def test_solve_zero_gives_zero(tp):
    M = build_Md(4, tp.lambda1, tp.lambda2)
    assert solve_Rd(M, MPoly.zero()).is_zero()


def test_solve_roundtrip_on_basis_vector(tp):
    for d in (3, 5):
        M = build_Md(d, tp.lambda1, tp.lambda2)
        P = apply_Ld(d, tp.lambda1, tp.lambda2, W)
        assert solve_Rd(M, P) == W


def test_solve_roundtrip_on_random_polys(tp, rng):
    from conftest import random_gaussian

    for d in (3, 4, 5, 6):
        M = build_Md(d, tp.lambda1, tp.lambda2)
        coeffs = [random_gaussian(rng) for _ in range(2 * d - 2)]
        R = sum((MPoly.const(c) * W**k for k, c in enumerate(coeffs)), MPoly.zero())
        P = apply_Ld(d, tp.lambda1, tp.lambda2, R)
        got = solve_Rd(M, P)
        assert got == R
        assert functional_Fd(M, P, got).is_zero()


def test_solve_rejects_overdegree(tp):
    M = build_Md(3, tp.lambda1, tp.lambda2)
    with pytest.raises(ValueError):
        solve_Rd(M, W**5)


def test_Fd_constant_input(tp):
    # P = 1 is w-free, so R = 0 and F = L(0)(0) - 1 = -1
    for d in (3, 6):
        M = build_Md(d, tp.lambda1, tp.lambda2)
        R = solve_Rd(M, MPoly.one())
        assert R.is_zero()
        assert functional_Fd(M, MPoly.one(), R) == MPoly.const(-1)


def test_Fd_detects_solver_corruption(tp):
    M = build_Md(3, tp.lambda1, tp.lambda2)
    P = apply_Ld(3, tp.lambda1, tp.lambda2, W)
    with pytest.raises(SolverError):
        functional_Fd(M, P, W + W**2)  # wrong preimage


def test_degree_bound_on_solution(tp, rng):
    # R_d never exceeds degree 2d-3 by construction of the solve
    from conftest import random_gaussian

    for d in (3, 4, 5, 6):
        M = build_Md(d, tp.lambda1, tp.lambda2)
        P = sum(
            (MPoly.const(random_gaussian(rng)) * W**k for k in range(2 * d - 1)),
            MPoly.zero(),
        )
        R = solve_Rd(M, P)
        assert R.degree("w") <= 2 * d - 3
        # defect is w-free even for arbitrary P
        F = functional_Fd(M, P, R)
        assert F.degree("w") <= 0
