"""Irreducibility, isomorphism and recognition of finite-dimensional modules."""

from dataclasses import dataclass

from .awcore import build_rep, qint, theta_at
from .deltamod import ModuleParams, central_images, orbit_key, vn_module
from .errors import OutsideFieldError, PreconditionError, VerificationError
from .linalg import (
    ExactMatrix,
    char_poly,
    exact_eigenvalues,
    intertwiner,
    kernel,
    random_unimodular,
    solve,
    span_closure,
)
from .scalar import ONE, format_scalar, sqrt_exact

__all__ = [
    "irreducible_criterion",
    "irreducible_oracle",
    "irreducibility_report",
    "isomorphic",
    "recognize",
    "RecognitionResult",
    "parameter_quadratics",
    "eigenvalues",
    "random_conjugation",
]


def irreducible_criterion(params):
    """Closed-form test: ``q^{2i} != 1`` and the four products avoid ``q^{1-n+2k}``."""
    if not params.specialized:
        raise PreconditionError("the criterion applies to V_n with lambda = q^n")
    n, q, a, b, c = params.n, params.q, params.a, params.b, params.c
    if any(q ** (2 * i) == 1 for i in range(1, n + 1)):
        return False
    forbidden = {q ** (1 - n + 2 * k) for k in range(n)}
    products = (a * b * c, b * c / a, a * c / b, a * b / c)
    return not any(p in forbidden for p in products)


def eigenvalues(m):
    """Distinct eigenvalues in Q(i); triangular matrices are read off directly."""
    if m.is_lower_triangular() or m.is_upper_triangular():
        out = []
        for i in range(m.rows):
            if m[i, i] not in out:
                out.append(m[i, i])
        return out
    return exact_eigenvalues(m)


def irreducible_oracle(rep, witness=False):
    """Brute-force irreducibility via invariant spans of ``A``-eigenvectors.

    Any proper invariant subspace contains an eigenvector of ``A``; such a
    vector lies in some eigenspace, so it suffices to close every element
    of an eigenspace basis.  Eigenspaces of dimension one (the case for
    ``V_n``) make this exhaustive; for larger eigenspaces a combination of
    basis vectors could span a smaller closure, so those are also tried
    pairwise.  With ``witness`` the result is ``(flag, basis-or-None)``.
    """
    A, B, C = rep.matrices
    N = rep.size
    ops = (A, B, C)
    found = None
    for mu in eigenvalues(A):
        vecs = kernel(A.add_scalar(-mu))
        trial = list(vecs)
        if len(vecs) > 1:
            trial += [vecs[i] + vecs[j] * (k + 2) for i in range(len(vecs)) for j in range(i + 1, len(vecs)) for k in range(2)]
        for v in trial:
            span = span_closure([v], ops)
            if len(span) < N:
                found = span
                break
        if found is not None:
            break
    flag = found is None
    return (flag, found) if witness else flag


def irreducibility_report(params):
    rep = vn_module(params)
    crit = irreducible_criterion(params)
    oracle, wit = irreducible_oracle(rep, witness=True)
    return {
        "irreducible": oracle,
        "criterion": crit,
        "oracle": oracle,
        "witness": None if wit is None else [[format_scalar(x) for x in v.column(0)] for v in wit],
    }


def isomorphic(rep1, rep2):
    """An invertible ``M`` with ``M^{-1} X1 M = X2`` for ``X = A, B, C``, or ``None``."""
    if rep1.size != rep2.size:
        raise PreconditionError("representations have different dimensions")
    if rep1.q != rep2.q:
        return None
    for x, y in zip(rep1.matrices, rep2.matrices):
        if x.trace() != y.trace():
            return None
    p1, p2 = rep1.params, rep2.params
    if p1 is not None and p2 is not None and p1.specialized and p2.specialized:
        if orbit_key(*p1.abc) == orbit_key(*p2.abc) and rep1.matrices == rep2.matrices:
            return ExactMatrix.identity(rep1.size)
    return intertwiner(rep1.A, rep1.B, rep2.A, rep2.B, (rep1.C, rep2.C))


def parameter_quadratics(rep):
    """For each of ``A, B, C`` the quadratic ``[n+1] X^2 - tr X + [n+1]`` and its roots."""
    n = rep.size - 1
    q = rep.q
    k = qint(n + 1, q)
    out = []
    for m in rep.matrices:
        tr = m.trace()
        coeffs = (k, -tr, k)
        disc = tr * tr - 4 * k * k
        r = sqrt_exact(disc)
        if r is None:
            raise OutsideFieldError(
                "parameter lies outside the Gaussian rationals",
                [format_scalar(x) for x in coeffs],
            )
        out.append((coeffs, ((tr + r) / (2 * k), (tr - r) / (2 * k))))
    return out


@dataclass
class RecognitionResult:
    params: ModuleParams
    orbit: tuple
    intertwiner: ExactMatrix

    def to_json(self):
        return {
            "module": self.params.to_json(),
            "orbit": [format_scalar(x) for x in self.orbit],
            "intertwiner": self.intertwiner.to_json(),
        }


def _solve_theta0(mu, n, q):
    """Roots ``s`` of ``q^{-n} s^2 - mu s + q^n = 0``."""
    qn = q**n
    disc = mu * mu - 4
    r = sqrt_exact(disc)
    if r is None:
        coeffs = [qn, -mu, ONE / qn]
        raise OutsideFieldError(
            "eigenvalue ladder parameter lies outside the Gaussian rationals",
            [format_scalar(x) for x in coeffs],
        )
    roots = [qn * (mu + r) / 2, qn * (mu - r) / 2]
    return roots if roots[0] != roots[1] else roots[:1]


def _ladder_bottoms(M, n, q):
    """All ``x`` with ``theta_{-1}(q; x)`` not an eigenvalue and ``theta_0(q; x)`` one."""
    K = char_poly(M)
    dim = M.rows
    lam = q**n

    def is_eig(x):
        return not K(x)

    out = []
    for mu in eigenvalues(M):
        for s in _solve_theta0(mu, n, q):
            for i in range(0, -(dim + 2), -1):
                if not is_eig(theta_at(i - 1, lam, q, s)):
                    x = s * q ** (2 * i)
                    if x not in out:
                        out.append(x)
                    break
    return out


def _restricted_eigenvector(op, space):
    """An eigenvector of ``op`` inside the span of ``space`` (``op``-stable)."""
    if len(space) == 1:
        return space[0]
    basis = ExactMatrix.from_columns([v.column(0) for v in space])
    coords = solve(basis, op @ basis)
    for mu in eigenvalues(coords):
        ker = kernel(coords.add_scalar(-mu))
        if ker:
            return basis @ ker[0]
    raise VerificationError("no eigenvector found in the restricted space")


def _try_build(rep, n, q, a, b, gamma):
    A, B, C = rep.matrices
    lam = q**n
    qq = q ** (n + 1) + ONE / q ** (n + 1)
    s = (gamma - (a + ONE / a) * (b + ONE / b)) / qq
    r = sqrt_exact(s * s - 4)
    if r is None:
        raise OutsideFieldError(
            "parameter c lies outside the Gaussian rationals",
            [format_scalar(x) for x in (ONE, -s, ONE)],
        )
    c = (s + r) / 2
    th0b = theta_at(0, lam, q, b)
    th1b = theta_at(1, lam, q, b)
    space = kernel(B.add_scalar(-th0b))
    if not space:
        return None
    v = _restricted_eigenvector((B.add_scalar(-th1b)) @ A, space)
    vecs = [v]
    for i in range(1, n + 1):
        v = A @ v - v * theta_at(i - 1, lam, q, a)
        vecs.append(v)
    P = ExactMatrix.from_columns([x.column(0) for x in vecs])
    if not P.is_invertible():
        return None
    params = ModuleParams(n, q, a, b, c)
    args = params.args()
    # the two closing identities of the ladder construction
    lhs = (B.add_scalar(-th1b)) @ (A.add_scalar(-theta_at(0, lam, q, a))) @ vecs[0]
    if lhs != vecs[0] * args.phi(1):
        return None
    if A @ vecs[-1] != vecs[-1] * theta_at(n, lam, q, a):
        return None
    L, U, T = build_rep(n + 1, args)
    Pi = P.inverse()
    if Pi @ A @ P != L or Pi @ B @ P != U or Pi @ C @ P != T:
        return None
    return RecognitionResult(params, orbit_key(a, b, c), P)


def recognize(rep):
    """Identify an irreducible representation with some ``V_n(a, b, c)``."""
    if not irreducible_oracle(rep):
        raise PreconditionError("recognition requires an irreducible representation")
    n = rep.size - 1
    q = rep.q
    _, _, gamma = central_images(*rep.matrices, q)
    g = gamma.scalar_value()
    if g is None:
        raise PreconditionError("gamma does not act as a scalar")
    bs = _ladder_bottoms(rep.B, n, q)
    as_ = _ladder_bottoms(rep.A, n, q)
    for b in bs:
        for a in as_:
            res = _try_build(rep, n, q, a, b, g)
            if res is not None:
                return res
    raise VerificationError("no candidate parameters reproduce the representation")


def random_conjugation(rep, rng, spread=3):
    """Conjugate by a random unimodular matrix ``U L`` with small integer entries."""
    P = random_unimodular(rep.size, rng, spread)
    return rep.conjugate(P), P
