"""Eigenvalue ladders, ladder factors and the closed-form matrices.

Conventions: ``theta_at``, ``phi_at`` and ``omega_at`` take the generic
arguments ``(lam, Q, ...)`` and work for exact and complex scalars alike.  The finite specialisation sets ``lam = Q**n``; in that
setting "``Q`` inverted" means substituting ``Q -> 1/Q`` everywhere, so
``lam`` becomes ``Q**(-n)`` (see :meth:`SymbolArgs.inverted`).
"""

from dataclasses import dataclass, replace
from typing import Optional

from .errors import PreconditionError
from .linalg import ExactMatrix
from .scalar import ONE, gr

__all__ = [
    "SymbolArgs",
    "theta",
    "phi",
    "omega",
    "theta_at",
    "phi_at",
    "omega_at",
    "qint",
    "qbinom",
    "theta_n",
    "phi_n",
    "omega_n",
    "build_rep",
    "rep_entries",
    "build_transition",
    "TRANSITION_KINDS",
]


def theta_at(i, lam, Q, X):
    """Ladder value ``lam Q^{-2i} X^{-1} + lam^{-1} Q^{2i} X``."""
    q2i = Q ** (2 * i)
    return lam / (q2i * X) + q2i * X / lam


def phi_at(i, lam, Q, X, Y, Z):
    """Four-factor ladder obstruction; vanishes at ``i = 0``."""
    qi = Q**i
    qim = 1 / qi
    lq = Q ** (i - 1) / lam  # lam^{-1} Q^{i-1}
    return (
        lam * Q / (X * Y)
        * (qi - qim)
        * (lq - 1 / lq)
        * (qim - lq * X * Y * Z)
        * (qim - lq * X * Y / Z)
    )


def omega_at(lam, Q, X, Y, Z):
    """Central-value symbol."""
    lq = lam * Q
    return (lq + 1 / lq) * (Z + 1 / Z) + (X + 1 / X) * (Y + 1 / Y)


def theta(i, args):
    """``theta_i(Lambda, Q; X)`` for :class:`SymbolArgs`."""
    return theta_at(i, args.Lambda, args.Q, args.X)


def phi(i, args):
    return phi_at(i, args.Lambda, args.Q, args.X, args.Y, args.Z)


def omega(args):
    return omega_at(args.Lambda, args.Q, args.X, args.Y, args.Z)


def qint(m, Q):
    """The q-integer ``[m]_Q = (Q^m - Q^{-m}) / (Q - Q^{-1})``."""
    Q = gr(Q)
    den = Q - ONE / Q
    if not den:
        raise ZeroDivisionError("[m]_Q undefined for Q = +-1")
    qm = Q**m
    return (qm - ONE / qm) / den


def qbinom(j, i, Q):
    """Gaussian binomial ``prod_{h=1..i} [j-h+1]_Q / [h]_Q`` for ``i >= 0``."""
    if i < 0:
        raise PreconditionError("lower index of a Gaussian binomial must be >= 0")
    out = ONE
    for h in range(1, i + 1):
        d = qint(h, Q)
        if not d:
            raise ZeroDivisionError(f"[{h}]_Q vanishes; Q is a root of unity")
        out = out * qint(j - h + 1, Q) / d
    return out


def theta_n(i, n, Q, X):
    """``theta_i(Q; X)``: the specialisation ``lam = Q**n``."""
    return theta_at(i, Q**n, Q, X)


def phi_n(i, n, Q, X, Y, Z):
    return phi_at(i, Q**n, Q, X, Y, Z)


def omega_n(n, Q, X, Y, Z):
    return omega_at(Q**n, Q, X, Y, Z)


@dataclass(frozen=True)
class SymbolArgs:
    """Concrete values for the indeterminates ``(Lambda, Q, X, Y, Z)``.

    ``n`` is recorded when ``Lambda == Q**n``.
    """

    Lambda: object
    Q: object
    X: object
    Y: object = ONE
    Z: object = ONE
    n: Optional[int] = None

    def __post_init__(self):
        for name in ("Lambda", "Q", "X", "Y", "Z"):
            v = gr(getattr(self, name))
            if not v:
                raise PreconditionError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)

    @classmethod
    def specialized(cls, n, Q, X, Y=ONE, Z=ONE):
        Q = gr(Q)
        return cls(Q**n, Q, X, Y, Z, n)

    def inverted(self):
        """The same symbols with ``Q -> 1/Q`` (so ``Lambda -> Q**(-n)``)."""
        if self.n is None:
            raise PreconditionError("Q-inversion is only defined for the specialisation Lambda = Q^n")
        return SymbolArgs.specialized(self.n, ONE / self.Q, self.X, self.Y, self.Z)

    def with_xyz(self, X, Y, Z):
        return replace(self, X=gr(X), Y=gr(Y), Z=gr(Z))

    def theta(self, i, var):
        return theta_at(i, self.Lambda, self.Q, var)

    def phi(self, i, X=None, Y=None, Z=None):
        return phi_at(
            i,
            self.Lambda,
            self.Q,
            self.X if X is None else X,
            self.Y if Y is None else Y,
            self.Z if Z is None else Z,
        )

    def omega(self):
        return omega_at(self.Lambda, self.Q, self.X, self.Y, self.Z)


def _check_q(Q):
    if not (Q * Q - ONE / (Q * Q)) or not (Q + ONE / Q):
        raise PreconditionError("Q must satisfy Q^4 != 1")


def rep_entries(size, lam, Q, X, Y, Z):
    """Entries of ``L``, ``U``, ``T`` as nested lists; works for any backend."""
    qq = Q * Q - 1 / (Q * Q)
    qp = Q + 1 / Q
    qinv = 1 / Q
    th_x = [theta_at(i, lam, Q, X) for i in range(size + 1)]
    th_y = [theta_at(i, lam, Q, Y) for i in range(size + 1)]
    ph = [phi_at(i, lam, Q, X, Y, Z) for i in range(size + 1)]
    om = omega_at(lam, Q, X, Y, Z)
    zero = 0 * Q
    L = [[zero] * size for _ in range(size)]
    U = [[zero] * size for _ in range(size)]
    T = [[zero] * size for _ in range(size)]
    for i in range(size):
        L[i][i] = th_x[i]
        U[i][i] = th_y[i]
        T[i][i] = (qinv * ph[i + 1] - Q * ph[i]) / qq + (om - th_x[i] * th_y[i]) / qp
        if i >= 1:
            L[i][i - 1] = zero + 1
            U[i - 1][i] = ph[i]
            T[i - 1][i] = (qinv * th_x[i] - Q * th_x[i - 1]) / qq * ph[i]
            T[i][i - 1] = (qinv * th_y[i] - Q * th_y[i - 1]) / qq
    return L, U, T


def build_rep(size, args):
    """Top-left ``size x size`` blocks of the matrices ``L``, ``U``, ``T``."""
    if size < 1:
        raise PreconditionError("size must be >= 1")
    _check_q(args.Q)
    L, U, T = rep_entries(size, args.Lambda, args.Q, args.X, args.Y, args.Z)
    return ExactMatrix(L), ExactMatrix(U), ExactMatrix(T)


def _build_e(size, args):
    Q, X, lam = args.Q, args.X, args.Lambda
    m = ExactMatrix.zeros(size)
    for i in range(size):
        for j in range(i, size):
            v = qbinom(j, i, Q)
            for h in range(1, j - i + 1):
                v = v * (Q ** (h + i - 1) / lam - lam * Q ** (1 - i - h)) * (Q ** (1 - h) * X - Q ** (h - 1) / X)
            m._d[i][j] = v
    return m


def _build_s(size, args):
    Q, X, Y, Z, lam = args.Q, args.X, args.Y, args.Z, args.Lambda
    m = ExactMatrix.zeros(size)
    for i in range(size):
        for j in range(i, size):
            v = (-1) ** i * lam**i * Q ** (-i * j) * Y ** (-j) * qbinom(j, i, Q)
            for h in range(1, j - i + 1):
                v = v * (lam * Q ** (h - j) - Q ** (j - h) / lam) * (Q ** (j - h) * Y * Z - lam * Q ** (h - j - 1) / X)
            m._d[i][j] = v
    return m


def _ratio_prod(n, i, j, Q, factor):
    """``prod_{h=1..j} ([n-i+h]_Q / [n-h+1]_Q) * factor(h)``."""
    v = ONE
    for h in range(1, j + 1):
        v = v * qint(n - i + h, Q) / qint(n - h + 1, Q) * factor(h)
    return v


def _build_f(args):
    n, Q, X, Y = args.n, args.Q, args.X, args.Y
    inv = args.inverted()
    th0 = args.theta(0, Y)
    m = ExactMatrix.zeros(n + 1)
    for i in range(n + 1):
        tail = ONE
        for h in range(1, n - i + 1):
            tail = tail * args.phi(h, X=ONE / X)
        for j in range(i + 1):
            v = qbinom(i, j, Q)
            for h in range(1, i - j + 1):
                v = v * (th0 - inv.theta(h - 1, Y))
            v = v * _ratio_prod(n, i, j, Q, lambda h: args.phi(h)) * tail
            m._d[i][j] = v
    return m


def _build_p(args):
    n, Q, X, Y = args.n, args.Q, args.X, args.Y
    inv = args.inverted()
    th0 = args.theta(0, X)
    m = ExactMatrix.zeros(n + 1)
    for i in range(n + 1):
        for j in range(i + 1):
            v = qbinom(i, j, Q)
            for h in range(1, i - j + 1):
                v = v * (th0 - inv.theta(h - 1, X))
            v = v * _ratio_prod(n, i, j, Q, lambda h: args.phi(h, Y=ONE / Y))
            m._d[n - i][j] = v
    return m


TRANSITION_KINDS = ("E", "S", "F", "P")


def build_transition(kind, size, args):
    """The transition matrices ``E``, ``S`` (any ``Lambda``) and ``F``, ``P``.

    ``F`` and ``P`` only exist in the specialisation ``Lambda = Q**n`` with
    ``size == n + 1``.
    """
    if size < 1:
        raise PreconditionError("size must be >= 1")
    if kind == "E":
        return _build_e(size, args)
    if kind == "S":
        return _build_s(size, args)
    if kind in ("F", "P"):
        if args.n is None or args.Lambda != args.Q**args.n:
            raise PreconditionError(f"{kind} requires the specialisation Lambda = Q^n")
        if size != args.n + 1:
            raise PreconditionError(f"{kind} is defined only at size n+1 = {args.n + 1}")
        return _build_f(args) if kind == "F" else _build_p(args)
    raise PreconditionError(f"unknown transition kind {kind!r}")
