"""Leonard pairs and triples on ``V_n(a, b, c)`` and a numeric unitary check."""

import cmath
from dataclasses import dataclass, field

import numpy as np

from .awcore import rep_entries, theta_at
from .classify import irreducible_criterion
from .deltamod import vn_module
from .errors import PreconditionError
from .linalg import ExactMatrix, kernel

__all__ = ["LeonardReport", "leonard_check", "diagonalizable_criterion", "unitary_check_float", "unit"]

PAIRS = (("A", "B"), ("A", "C"), ("B", "C"))


def diagonalizable_criterion(n, q, x):
    """``x^2`` avoids ``q^{2n-2}, q^{2n-4}, ..., q^{2-2n}``."""
    bad = {q ** (2 * n - 2 * s) for s in range(1, 2 * n)}
    return x * x not in bad


@dataclass
class LeonardReport:
    diag_flags: tuple
    pair_flags: tuple
    triple_flag: bool
    direct_pair_flags: tuple = None
    witnesses: dict = field(default_factory=dict)

    @property
    def agrees(self):
        return self.direct_pair_flags is None or self.direct_pair_flags == self.pair_flags

    @property
    def consistent(self):
        """Triple iff every pair iff every operator diagonalizable."""
        return self.triple_flag == all(self.pair_flags) == all(self.diag_flags)

    def to_json(self):
        out = {
            "diagonalizable": dict(zip("ABC", self.diag_flags)),
            "pairs": {x + y: f for (x, y), f in zip(PAIRS, self.pair_flags)},
            "triple": self.triple_flag,
        }
        if self.direct_pair_flags is not None:
            out["direct_pairs"] = {x + y: f for (x, y), f in zip(PAIRS, self.direct_pair_flags)}
            out["agrees"] = self.agrees
        if self.witnesses:
            out["witnesses"] = {k: v.to_json() for k, v in self.witnesses.items()}
        return out


def _theta_eigenbasis(M, n, q, x):
    """Eigenvectors for ``theta_0(x), ..., theta_n(x)`` in that order, or ``None``."""
    lam = q**n
    cols = []
    for i in range(n + 1):
        ker = kernel(M.add_scalar(-theta_at(i, lam, q, x)))
        if len(ker) != 1:
            return None
        cols.append(ker[0].column(0))
    P = ExactMatrix.from_columns(cols)
    return P if P.is_invertible() else None


def leonard_check(params, verify_directly=False):
    """Diagonalizability and Leonard pair/triple flags from the closed-form criteria.

    With ``verify_directly`` each pair is also tested by building an eigenbasis
    of one member (ordered by the ``theta`` index) and checking that the
    other is irreducible tridiagonal in it, and vice versa.
    """
    if not irreducible_criterion(params):
        raise PreconditionError("V_n(a, b, c) must be irreducible")
    n, q = params.n, params.q
    diag = tuple(diagonalizable_criterion(n, q, x) for x in params.abc)
    idx = {"A": 0, "B": 1, "C": 2}
    pairs = tuple(diag[idx[x]] and diag[idx[y]] for x, y in PAIRS)
    report = LeonardReport(diag, pairs, all(pairs))
    if not verify_directly:
        return report
    rep = vn_module(params)
    mats = dict(zip("ABC", rep.matrices))
    bases = {k: _theta_eigenbasis(mats[k], n, q, x) for k, x in zip("ABC", params.abc)}
    direct = []
    for x, y in PAIRS:
        ok = True
        for s, t in ((x, y), (y, x)):
            P = bases[s]
            if P is None:
                ok = False
                break
            M = P.inverse() @ mats[t] @ P
            report.witnesses[f"{t} in {s}-eigenbasis"] = M
            if not M.is_tridiagonal(irreducible=True):
                ok = False
        direct.append(ok)
    report.direct_pair_flags = tuple(direct)
    return report


# -- floating point unitary structure --------------------------------------


def _null_vector(M):
    _, _, vh = np.linalg.svd(M)
    v = vh[-1].conj()
    return v / np.linalg.norm(v)


def _form_scales(Bu, Av, Cu, Cvv):
    """Diagonal ``d`` with ``(u_i, v_j) = d_i delta_ij`` compatible with both pairings."""
    N = Bu.shape[0]
    rows = []
    for X, Y in ((Bu, Av), (Cu, Cvv)):
        for i in range(N):
            for j in range(N):
                row = np.zeros(N, dtype=complex)
                row[j] += np.conj(X[j, i])
                row[i] -= Y[i, j]
                rows.append(row)
    return _null_vector(np.array(rows))


def unitary_check_float(n, q, a, b, c, tol=1e-9):
    """Residuals of the adjoint relations for the form ``(u_i, v_j) = delta_ij``.

    ``u_i`` and ``v_j`` are eigenvectors of ``A`` and ``B`` for ``theta_i(a)`` and
    ``theta_j(1/conj(a))``, the latter being ``theta_j(b)`` or ``theta_{n-j}(b)``; the relations checked are ``(Au, v) = (u, Bv)``,
    ``(Bu, v) = (u, Av)`` and ``(Cu, v) = (u, C' v)`` with
    ``C' = C + (AB - BA)/(q - q^{-1})``.
    """
    q, a, b, c = (complex(x) for x in (q, a, b, c))
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    if n > 15:
        raise PreconditionError("the float check is limited to dimension 16")
    for name, x in (("q", q), ("a", a), ("b", b), ("c", c)):
        if abs(abs(x) - 1) > tol:
            raise PreconditionError(f"|{name}| must be 1")
    if min(abs(a.conjugate() - b), abs(a.conjugate() - 1 / b)) > tol:
        raise PreconditionError("need conj(a) in {b, 1/b}")
    if min(abs(c.conjugate() - c), abs(c.conjugate() - 1 / c)) > tol:
        raise PreconditionError("need conj(c) in {c, 1/c}")
    if any(abs(q ** (2 * i) - 1) <= tol for i in range(1, n + 1)):
        raise PreconditionError("q^{2i} = 1 for some 1 <= i <= n")
    for p in (a * b * c, b * c / a, a * c / b, a * b / c):
        if any(abs(p - q ** (1 - n + 2 * k)) <= tol for k in range(n)):
            raise PreconditionError("(a, b, c) is numerically outside the irreducible set")
    N = n + 1
    if n == 0:
        return {"n": 0, "residual": 0.0, "tolerance": tol, "ok": True}
    lam = q**n
    L, U, T = (np.array(m, dtype=complex) for m in rep_entries(N, lam, q, a, b, c))
    A, B, C = L, U, T
    Cv = C + (A @ B - B @ A) / (q - 1 / q)
    I = np.eye(N)
    # conj(theta_i(a)) = theta_i(1/conj(a)), so v_j must use whichever of b, 1/b equals 1/conj(a)
    bb = b if abs(a.conjugate() - 1 / b) <= tol else 1 / b
    u = np.column_stack([_null_vector(A - theta_at(i, lam, q, a) * I) for i in range(N)])
    v = np.column_stack([_null_vector(B - theta_at(j, lam, q, bb) * I) for j in range(N)])
    if np.linalg.cond(u) > 1 / tol or np.linalg.cond(v) > 1 / tol:
        raise PreconditionError("A or B is not diagonalizable")
    ui, vi = np.linalg.inv(u), np.linalg.inv(v)
    Bu, Cu = ui @ B @ u, ui @ C @ u
    Av, Cvv = vi @ A @ v, vi @ Cv @ v
    d = _form_scales(Bu, Av, Cu, Cvv)
    if np.min(np.abs(d)) <= tol:
        raise PreconditionError("the pairing degenerates")
    u = u / np.conj(d)
    G = np.linalg.inv(u).conj().T @ vi

    def pair(x, y):
        return x.conj() @ G @ y

    residual = 0.0
    for X, Y in ((A, B), (B, A), (C, Cv)):
        for i in range(N):
            for j in range(N):
                r = abs(pair(X @ u[:, i], v[:, j]) - pair(u[:, i], Y @ v[:, j]))
                residual = max(residual, r)
    delta = max(abs(pair(u[:, i], v[:, j]) - (i == j)) for i in range(N) for j in range(N))
    return {
        "n": n,
        "residual": float(residual),
        "pairing_error": float(delta),
        "tolerance": tol,
        "ok": bool(residual < tol and delta < tol),
    }


def unit(theta):
    """``exp(i theta)``."""
    return cmath.exp(1j * theta)
