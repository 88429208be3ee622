import pytest

from awdelta.awpoly import (
    AWContext,
    apply_d,
    aw_operator_check,
    aw_poly,
    recurrence_coeffs,
    sample_points,
    verma_basis_poly,
)
from awdelta.errors import PreconditionError
from awdelta.linalg import Polynomial
from awdelta.scalar import ONE, ZERO, gr

X = Polynomial.x()
SPECIAL = AWContext(4, 2, 3, 5, 7)
GENERIC = [AWContext(3, 2, 3, 5, 7), AWContext(5, 3, 2, 7, gr("1+i"))]


def test_b0_is_zero():
    assert recurrence_coeffs(0, SPECIAL)[1] == ZERO


def test_a0_oracle():
    a0, _, c0 = recurrence_coeffs(0, SPECIAL)
    # X p_0 = a_0 p_1 + c_0 with p_1 read off the sum formula
    assert a0 == SPECIAL.phi(1) / (SPECIAL.theta_b(1) - SPECIAL.theta_b(0))
    assert a0 == gr("-515/588")
    assert c0 == gr("145/49")


@pytest.mark.parametrize("ctx", [SPECIAL, *GENERIC])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_coefficients_sum_to_theta0(ctx, i):
    a, b, c = recurrence_coeffs(i, ctx)
    assert a + b + c == ctx.theta_a(0)


def test_low_degree_polynomials():
    ctx = SPECIAL
    assert aw_poly(0, ctx) == Polynomial.constant(ONE)
    p1 = aw_poly(1, ctx)
    expected = (X - ctx.theta_a(0)) * ((ctx.theta_b(1) - ctx.theta_b(0)) / ctx.phi(1)) + Polynomial.constant(ONE)
    assert p1 == expected
    assert p1.degree == 1


def test_special_point_breaks_at_three():
    assert SPECIAL.phi(3) == ZERO
    aw_poly(2, SPECIAL)
    with pytest.raises(PreconditionError):
        aw_poly(3, SPECIAL)


@pytest.mark.parametrize("ctx", GENERIC)
def test_three_term_recurrence(ctx):
    ctx.check_generic(6)
    polys = [aw_poly(i, ctx) for i in range(7)]
    for i, p in enumerate(polys):
        assert p.degree == i
        assert p(ctx.theta_a(0)) == ONE
    for i in range(6):
        a, b, c = recurrence_coeffs(i, ctx)
        rhs = polys[i + 1] * a + polys[i] * c
        if i:
            rhs = rhs + polys[i - 1] * b
        assert X * polys[i] == rhs


@pytest.mark.parametrize("ctx", [SPECIAL, *GENERIC])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_d_eigen_identity(ctx, i):
    assert aw_operator_check(i, ctx)


def test_d_rejects_corrupted_polynomial():
    ctx = GENERIC[0]
    bad = aw_poly(2, ctx) + X * gr("1/1000")
    assert not aw_operator_check(2, ctx, poly=bad)


def test_sample_count_precondition():
    with pytest.raises(PreconditionError):
        aw_operator_check(1, GENERIC[0], samples=12)


def test_sample_points_avoid_poles():
    ctx = AWContext(3, 5, 2, 3, 7)
    pts = sample_points(ctx, 6)
    assert gr(5) not in pts
    assert pts[:3] == [gr(7), gr(11), gr(13)]


def test_check_generic_rejects():
    # q^{-2} = lam^{-2} when lam = q
    with pytest.raises(PreconditionError):
        AWContext(2, 2, 3, 5, 7).check_generic(1)


def test_context_rejects_degenerate():
    with pytest.raises(PreconditionError):
        AWContext(0, 2, 3, 5, 7)
    with pytest.raises(PreconditionError):
        AWContext(3, -1, 3, 5, 7)


@pytest.mark.parametrize("i", range(5))
def test_verma_basis_carries_a_and_b(i):
    """Multiplication by X and D act on the images of m_i like L and U."""
    ctx = GENERIC[0]
    m = verma_basis_poly(i, ctx)
    assert X * m == verma_basis_poly(i + 1, ctx) + m * ctx.theta_a(i)
    prev = verma_basis_poly(i - 1, ctx) if i else Polynomial.constant(ZERO)
    for Y in sample_points(ctx, 4):
        x = Y + ONE / Y
        assert apply_d(m, ctx, Y) == ctx.theta_b(i) * m(x) + ctx.phi(i) * prev(x)
