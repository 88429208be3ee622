"""Askey-Wilson polynomials, their recurrence and the operator ``D``.

Polynomials are in ``X = Y + Y^{-1}``; the operator ``D`` acts on functions
of ``Y`` and is checked by exact evaluation at sample points.
"""

from dataclasses import dataclass

from .awcore import phi_at, theta_at
from .errors import PreconditionError
from .linalg import Polynomial
from .scalar import ONE, ZERO, gr, is_root_of_unity

__all__ = [
    "AWContext",
    "recurrence_coeffs",
    "aw_poly",
    "aw_operator_check",
    "apply_d",
    "verma_basis_poly",
    "sample_points",
]


@dataclass(frozen=True)
class AWContext:
    """Parameters ``(lam, q, a, b, c)`` of the polynomial family."""

    lam: object
    q: object
    a: object
    b: object
    c: object

    def __post_init__(self):
        for name in ("lam", "q", "a", "b", "c"):
            v = gr(getattr(self, name))
            if not v:
                raise PreconditionError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)
        if is_root_of_unity(self.q):
            raise PreconditionError("q must not be a root of unity")

    def check_generic(self, upto):
        """Raise unless ``q^{-2i}`` avoids the four forbidden values for ``i <= upto``."""
        lam, q, a, b, c = self.lam, self.q, self.a, self.b, self.c
        bad = (
            ONE / (lam * lam),
            b * b / (lam * lam * q * q),
            q * a * b * c / lam,
            q * a * b / (c * lam),
        )
        for i in range(upto + 1):
            if q ** (-2 * i) in bad:
                raise PreconditionError(f"parameters are not generic at i = {i}")

    def theta_a(self, i):
        return theta_at(i, self.lam, self.q, self.a)

    def theta_b(self, i):
        return theta_at(i, self.lam, self.q, self.b)

    def phi(self, i, a=None):
        return phi_at(i, self.lam, self.q, self.a if a is None else a, self.b, self.c)


def recurrence_coeffs(i, ctx):
    """``(a_i, b_i, c_i)`` with ``X p_i = a_i p_{i+1} + c_i p_i + b_i p_{i-1}``."""
    if i < 0:
        raise PreconditionError("index must be nonnegative")
    lam, q, b = ctx.lam, ctx.q, ctx.b
    li = ONE / lam

    def pair(k):
        # lam^{-1} q^k b - lam q^{-k} b^{-1}
        return li * q**k * b - lam * q ** (-k) / b

    den_a = (q ** (i + 1) - q ** (-i - 1)) * pair(2 * i) * pair(2 * i + 1)
    den_b = (li * q ** (i - 1) - lam * q ** (1 - i)) * pair(2 * i - 1) * pair(2 * i)
    if not den_a or (i > 0 and not den_b):
        raise PreconditionError(f"recurrence coefficient denominator vanishes at i = {i}")
    a_i = pair(i) * ctx.phi(i + 1) / den_a
    if i == 0:
        b_i = ZERO
    else:
        b_i = (q**i * b - q ** (-i) / b) * ctx.phi(i, a=ONE / ctx.a) / den_b
    c_i = ctx.theta_a(0) - a_i - b_i
    return a_i, b_i, c_i


def aw_poly(i, ctx):
    """``p_i(X)`` from the finite sum formula, expanded in powers of ``X``."""
    if i < 0:
        raise PreconditionError("index must be nonnegative")
    thi = ctx.theta_b(i)
    X = Polynomial.x()
    term = Polynomial.constant(ONE)
    total = term
    for h in range(1, i + 1):
        ph = ctx.phi(h)
        if not ph:
            raise PreconditionError(f"phi_{h} vanishes; p_{i} is undefined")
        term = term * (X - ctx.theta_a(h - 1)) * ((thi - ctx.theta_b(h - 1)) / ph)
        total = total + term
    return total


def _weight(ctx, Y):
    lam, q, a, b, c = ctx.lam, ctx.q, ctx.a, ctx.b, ctx.c
    li = ONE / lam
    num = lam * (1 - li * a * Y) * (1 - li * Y / a) * (1 - q * b * c * Y) * (1 - q * b * Y / c)
    den = b * (1 - Y * Y) * (1 - q * q * Y * Y)
    if not den:
        raise PreconditionError("sample point is a pole of the weight")
    return num / den


def apply_d(f, ctx, Y):
    """``(D f)(Y)`` for ``f`` a function of ``X = Y + Y^{-1}``."""
    q = ctx.q
    Yi = ONE / Y
    wp, wm = _weight(ctx, Y), _weight(ctx, Yi)
    q2 = q * q

    def at(y):
        return f(y + ONE / y)

    mid = wp + wm - ctx.lam / ctx.b - ctx.b / ctx.lam
    return wp * at(q2 * Y) - mid * at(Y) + wm * at(Y / q2)


def sample_points(ctx, count):
    """Odd primes ``5, 7, 11, ...`` avoiding ``Y^2 in {1, q^2, q^{-2}}``."""
    q2 = ctx.q * ctx.q
    bad = {ONE, q2, ONE / q2}
    out = []
    p = 5
    while len(out) < count:
        if all(p % d for d in range(2, int(p**0.5) + 1)):
            y = gr(p)
            if y * y not in bad:
                out.append(y)
        p += 2
    return out


def aw_operator_check(i, ctx, samples=None, poly=None):
    """Check ``D p_i = theta_i(b) p_i`` at ``samples`` exact points.

    ``poly`` overrides the polynomial under test.
    """
    need = 4 * (i + 2)
    if samples is None:
        samples = need + 1
    if samples <= need:
        raise PreconditionError(f"need more than {need} sample points for degree {i}")
    p = aw_poly(i, ctx) if poly is None else poly
    th = ctx.theta_b(i)
    for Y in sample_points(ctx, samples):
        if apply_d(p, ctx, Y) != th * p(Y + ONE / Y):
            return False
    return True


def verma_basis_poly(i, ctx):
    """The image ``prod_{h=1..i} (X - theta_{h-1}(lam, q; a))`` of ``m_i``."""
    X = Polynomial.x()
    out = Polynomial.constant(ONE)
    for h in range(1, i + 1):
        out = out * (X - ctx.theta_a(h - 1))
    return out
