"""Quantum group ``U_q(sl2)`` modules and their links to the algebra.

Covers the standard modules ``V_{n,eps}``, equitable generators, the
Casimir element, the realizations of ``V_n(a, b, c)`` as ``U_q(sl2)``
modules, comultiplication, Clebsch-Gordan decompositions, Racah
transition matrices and the ``U'_q(so3)`` specialisation.
"""

from dataclasses import dataclass, field
from typing import Optional

from .awcore import qint
from .classify import irreducible_criterion, isomorphic
from .deltamod import (
    DeltaRep,
    GroupElem24,
    ModuleParams,
    TAU,
    central_images,
    change_basis24,
    check_relations,
    vn_module,
)
from .errors import PreconditionError, VerificationError
from .linalg import ExactMatrix, commutator, intertwiner, kernel, kron
from .scalar import ONE, ZERO, format_scalar, gr, is_root_of_unity

__all__ = [
    "Uqsl2Rep",
    "EquitableTriple",
    "standard_module",
    "equitable_rotator",
    "Realization",
    "realize_uq",
    "coproduct",
    "CGResult",
    "cg_decompose",
    "casimir_scalar",
    "RacahData",
    "racah",
    "so3_check",
]


@dataclass
class EquitableTriple:
    x: ExactMatrix
    y: ExactMatrix
    y_inv: ExactMatrix
    z: ExactMatrix


@dataclass
class Uqsl2Rep:
    """Matrices of ``e, f, k, k^{-1}``; ``n`` and ``type_eps`` set for standard modules."""

    e: ExactMatrix
    f: ExactMatrix
    k: ExactMatrix
    k_inv: ExactMatrix
    q: object
    n: Optional[int] = None
    type_eps: Optional[int] = None

    @property
    def dim(self):
        return self.k.rows

    def equitable(self):
        q = self.q
        d = q - ONE / q
        x = self.k_inv - (self.e @ self.k_inv) * (d / q)
        z = self.k_inv + self.f * d
        return EquitableTriple(x, self.k, self.k_inv, z)

    def casimir(self):
        q = self.q
        d = q - ONE / q
        return self.e @ self.f + (self.k / q + self.k_inv * q) / (d * d)

    def relation_residuals(self):
        """Residuals of the four defining relations (all zero for a module)."""
        q = self.q
        I = ExactMatrix.identity(self.dim)
        return {
            "k k^-1 = 1": self.k @ self.k_inv - I,
            "ke = q^2 ek": self.k @ self.e - self.e @ self.k * (q * q),
            "kf = q^-2 fk": self.k @ self.f - self.f @ self.k / (q * q),
            "[e,f]": commutator(self.e, self.f) - (self.k - self.k_inv) / (q - ONE / q),
        }

    def relations_ok(self):
        return all(m.is_zero() for m in self.relation_residuals().values())

    def to_json(self):
        out = {
            "e": self.e.to_json(),
            "f": self.f.to_json(),
            "k": self.k.to_json(),
            "k_inv": self.k_inv.to_json(),
            "q": format_scalar(self.q),
        }
        if self.n is not None:
            out["n"] = self.n
            out["type"] = self.type_eps
        return out


def _check_q(q):
    q = gr(q)
    if is_root_of_unity(q):
        raise PreconditionError("q must not be a root of unity")
    return q


def standard_module(n, eps, q):
    """The ``(n+1)``-dimensional irreducible module ``V_{n,eps}`` in its canonical basis."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    if eps not in (1, -1):
        raise PreconditionError("type must be +1 or -1")
    q = _check_q(q)
    N = n + 1
    e = ExactMatrix.zeros(N)
    f = ExactMatrix.zeros(N)
    for i in range(1, N):
        e._d[i - 1][i] = qint(n - i + 1, q) * eps
        f._d[i][i - 1] = qint(i, q)
    k = ExactMatrix.diag([q ** (n - 2 * i) * eps for i in range(N)])
    k_inv = ExactMatrix.diag([q ** (2 * i - n) * eps for i in range(N)])
    return Uqsl2Rep(e, f, k, k_inv, q, n, eps)


def casimir_scalar(n, eps, q):
    """``eps (q^{n+1} + q^{-n-1}) / (q - q^{-1})^2``."""
    q = gr(q)
    d = q - ONE / q
    return (q ** (n + 1) + q ** (-n - 1)) * eps / (d * d)


def equitable_rotator(rep):
    """An invertible ``L`` with ``L^{-1} x L = y``, ``L^{-1} y L = z``, ``L^{-1} z L = x``."""
    t = rep.equitable()
    L = intertwiner(t.x, t.y, t.y, t.z, (t.z, t.x))
    if L is None:
        raise VerificationError("no invertible rotator; the module is not irreducible")
    return L


# -- realizations of V_n(a, b, c) -------------------------------------------


@dataclass
class Realization:
    """A ``U_q(sl2)`` module structure on ``V_n(a, b, c)``.

    ``x, y, z`` act on the canonical basis of ``V_n(a, b, c)``; the columns
    of ``basis`` form the canonical basis of ``V_{n,eps}``.
    """

    params: ModuleParams
    eps: int
    x: ExactMatrix
    y: ExactMatrix
    z: ExactMatrix
    basis: ExactMatrix
    residuals_zero: bool

    def to_json(self):
        return {
            "module": self.params.to_json(),
            "type": self.eps,
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "z": self.z.to_json(),
            "basis": self.basis.to_json(),
            "residuals_zero": self.residuals_zero,
        }


def equitable_images(params, x, y, z):
    """Right-hand sides of the three equitable expressions for ``A, B, C``."""
    q, a, b, c = params.q, params.a, params.b, params.c
    d = q - ONE / q
    A = x * a + y / a + commutator(x, y) * (b / (c * d))
    B = y * b + z / b + commutator(y, z) * (c / (a * d))
    C = z * c + x / c + commutator(z, x) * (a / (b * d))
    return A, B, C


def _type1(params):
    n, q, a, b, c = params.n, params.q, params.a, params.b, params.c
    P, _, _ = change_basis24(params, GroupElem24(1, -1, TAU))
    scale = []
    ci = ONE
    for i in range(n + 1):
        if i:
            ci = ci * (q**i - q ** (-i)) * (ONE / b - q ** (n - 2 * i + 1) * c / a)
        if not ci:
            raise VerificationError("normalising constant vanishes on an irreducible module")
        scale.append(ONE / ci)
    return P @ ExactMatrix.diag(scale)


def realize_uq(params, eps):
    """The type-``eps`` module on ``V_n(a, b, c)`` reproducing ``A, B, C``, or ``None``."""
    if eps not in (1, -1):
        raise PreconditionError("type must be +1 or -1")
    if not irreducible_criterion(params):
        raise PreconditionError("V_n(a, b, c) must be irreducible")
    rep = vn_module(params)
    std = standard_module(params.n, 1, params.q).equitable()
    if eps == 1:
        W = _type1(params)
        Wi = W.inverse()
        x, y, z = (W @ m @ Wi for m in (std.x, std.y, std.z))
    else:
        # a type -1 structure negates the equitable generators of a type 1
        # structure carried by V_n(-a, -b, -c)
        other = params.with_abc(-params.a, -params.b, -params.c)
        if not irreducible_criterion(other):
            return None
        M = isomorphic(rep, vn_module(other))
        if M is None:
            return None
        W = M @ _type1(other)
        Wi = W.inverse()
        x, y, z = (-(W @ m @ Wi) for m in (std.x, std.y, std.z))
    ok = equitable_images(params, x, y, z) == rep.matrices
    if not ok:
        return None
    target = standard_module(params.n, eps, params.q).equitable()
    basis = intertwiner(x, y, target.x, target.y, (z, target.z))
    if basis is None:
        raise VerificationError("realized generators are not a standard module")
    return Realization(params, eps, x, y, z, basis, ok)


# -- tensor products -------------------------------------------------------


def coproduct(rep1, rep2):
    """``V1 (x) V2`` via ``e (x) 1 + k (x) e``, ``f (x) k^{-1} + 1 (x) f``, ``k (x) k``."""
    if rep1.q != rep2.q:
        raise PreconditionError("tensor factors must share q")
    I1 = ExactMatrix.identity(rep1.dim)
    I2 = ExactMatrix.identity(rep2.dim)
    e = kron(rep1.e, I2) + kron(rep1.k, rep2.e)
    f = kron(rep1.f, rep2.k_inv) + kron(I1, rep2.f)
    k = kron(rep1.k, rep2.k)
    k_inv = kron(rep1.k_inv, rep2.k_inv)
    return Uqsl2Rep(e, f, k, k_inv, rep1.q)


@dataclass
class CGResult:
    """Components ``(n_i, eps_i)`` with an adapted basis (columns of ``basis``)."""

    components: list
    basis: ExactMatrix
    blocks: list = field(default_factory=list)

    def multiset(self):
        out = {}
        for c in self.components:
            out[c] = out.get(c, 0) + 1
        return out

    def to_json(self):
        return {
            "components": [{"n": n, "type": e} for n, e in self.components],
            "basis": self.basis.to_json(),
        }


def _stack(vectors):
    return ExactMatrix.from_columns([v.column(0) for v in vectors])


def _intersect_kernel(mats):
    """Kernel of the vertical stack of ``mats``."""
    rows = []
    for m in mats:
        rows.extend(m.tolist())
    return kernel(ExactMatrix(rows))


def _normalize_first(v):
    for x in v.column(0):
        if x:
            return v / x
    return v


def _canonical_component(rep, hw, m):
    """Canonical basis ``v_i = f v_{i-1} / [i]`` from a highest weight vector."""
    vecs = [hw]
    for i in range(1, m + 1):
        vecs.append(rep.f @ vecs[-1] / qint(i, rep.q))
    return vecs


def _casimir_levels(rep, cas, max_n):
    """Casimir eigenvalue labels ``(n, eps)`` present in ``rep``, highest first."""
    levels = []
    I = ExactMatrix.identity(rep.dim)
    for n in range(max_n, -1, -1):
        for eps in (1, -1):
            mu = casimir_scalar(n, eps, rep.q)
            ker = kernel(cas - I * mu)
            if ker:
                levels.append((n, eps, mu, ker))
    return levels


def cg_decompose(rep):
    """Split ``rep`` into irreducibles using Casimir eigenspaces and highest weights."""
    cas = rep.casimir()
    I = ExactMatrix.identity(rep.dim)
    levels = _casimir_levels(rep, cas, rep.dim - 1)
    total = sum(len(ker) for *_, ker in levels)
    if total != rep.dim:
        raise VerificationError("Casimir eigenvalues not recognised or module not semisimple")
    components, columns, blocks = [], [], []
    for n, eps, mu, _ in levels:
        top = rep.q**n * eps
        hws = _intersect_kernel([cas - I * mu, rep.e, rep.k - I * top])
        for hw in hws:
            vecs = _canonical_component(rep, _normalize_first(hw), n)
            blocks.append((n, eps, len(columns)))
            components.append((n, eps))
            columns.extend(vecs)
    if len(columns) != rep.dim:
        raise VerificationError("highest weight vectors do not span the module")
    basis = _stack(columns)
    if not basis.is_invertible():
        raise VerificationError("component bases are dependent")
    return CGResult(components, basis, blocks)


# -- Racah coefficients ----------------------------------------------------


@dataclass
class RacahData:
    dims: tuple
    images: DeltaRep
    relations: object
    u_basis: ExactMatrix
    v_basis: ExactMatrix
    u_labels: list
    v_labels: list
    transition: ExactMatrix
    components: dict
    left: dict
    right: dict
    diagonal_ok: bool
    tridiagonal_ok: bool
    irreducible_ok: bool

    def to_json(self):
        def ms(d):
            return [{"n": n, "multiplicity": k} for n, k in sorted(d.items(), reverse=True)]

        return {
            "dims": list(self.dims),
            "transition": self.transition.to_json(),
            "components": ms(self.components),
            "left": ms(self.left),
            "right": ms(self.right),
            "central_ok": self.relations.central,
            "diagonal_ok": self.diagonal_ok,
            "tridiagonal_ok": self.tridiagonal_ok,
            "irreducible_ok": self.irreducible_ok,
        }


def _coupled_basis(partial_cas, total_rep, total_cas, max_partial):
    """Basis adapted to a partial Casimir and the total action.

    Labels are ``(J, j, w)``: total component ``V_J``, intermediate coupling
    ``V_j`` and weight index ``w``; columns are sorted by these labels.
    """
    q = total_rep.q
    I = ExactMatrix.identity(total_rep.dim)
    entries = []
    for j in range(max_partial, -1, -1):
        mu_j = casimir_scalar(j, 1, q)
        pj = partial_cas - I * mu_j
        if not kernel(pj):
            continue
        for J in range(total_rep.dim - 1, -1, -1):
            mu_J = casimir_scalar(J, 1, q)
            hws = _intersect_kernel([pj, total_cas - I * mu_J, total_rep.e, total_rep.k - I * q**J])
            if len(hws) > 1:
                raise VerificationError("coupling is not multiplicity free")
            for hw in hws:
                vecs = _canonical_component(total_rep, _normalize_first(hw), J)
                for w, v in enumerate(vecs):
                    entries.append(((J, j, w), v))
    entries.sort(key=lambda t: (-t[0][0], -t[0][1], t[0][2]))
    labels = [lab for lab, _ in entries]
    return _stack([v for _, v in entries]), labels


def _blockwise_tridiagonal(M, labels):
    """Check ``M`` is block diagonal over ``(J, w)`` and tridiagonal inside blocks."""
    groups = {}
    for idx, (J, j, w) in enumerate(labels):
        groups.setdefault((J, w), []).append(idx)
    where = {}
    for key, idxs in groups.items():
        for pos, idx in enumerate(idxs):
            where[idx] = (key, pos)
    shape_ok = True
    irreducible = True
    for r in range(M.rows):
        for s in range(M.cols):
            x = M[r, s]
            kr, pr = where[r]
            ks, ps = where[s]
            if kr != ks:
                if x:
                    shape_ok = False
            elif abs(pr - ps) > 1:
                if x:
                    shape_ok = False
            elif abs(pr - ps) == 1 and not x:
                irreducible = False
    return shape_ok, irreducible


def racah(m, n, p, q):
    """Images of ``A, B, C`` on ``V_m (x) V_n (x) V_p`` and the two coupled bases."""
    q = _check_q(q)
    if min(m, n, p) < 0:
        raise PreconditionError("dimensions must be nonnegative")
    Vm, Vn, Vp = (standard_module(d, 1, q) for d in (m, n, p))
    Im, In, Ip = (ExactMatrix.identity(d + 1) for d in (m, n, p))
    d = q - ONE / q
    d2 = d * d
    mn = coproduct(Vm, Vn)
    np_ = coproduct(Vn, Vp)
    total = coproduct(mn, Vp)
    cas_mn, cas_np, cas_tot = mn.casimir(), np_.casimir(), total.casimir()
    cas_m, cas_n, cas_p = Vm.casimir(), Vn.casimir(), Vp.casimir()

    A = kron(cas_mn, Ip) * d2
    B = kron(Im, cas_np) * d2
    gamma = (kron(kron(cas_m, In), cas_p) + kron(kron(Im, cas_n), Ip) @ cas_tot) * (d2 * d2)
    qi = ONE / q
    C = gamma / (q + qi) - (A @ B * q - B @ A * qi) / (q * q - qi * qi)
    images = DeltaRep(A, B, C, q)
    rel = check_relations(images, require_scalar=False)
    if central_images(A, B, C, q)[2] != gamma:
        raise VerificationError("C does not reproduce the gamma image")
    if not rel.central:
        raise VerificationError("images of the central elements are not central: " + "; ".join(rel.failures))

    U, ulab = _coupled_basis(kron(cas_mn, Ip), total, cas_tot, m + n)
    V, vlab = _coupled_basis(kron(Im, cas_np), total, cas_tot, n + p)
    if U.cols != total.dim or V.cols != total.dim:
        raise VerificationError("coupled bases are incomplete")
    Ui, Vi = U.inverse(), V.inverse()
    R = Ui @ V

    A_u = Ui @ A @ U
    B_v = Vi @ B @ V
    diagonal_ok = _is_diagonal(A_u) and _is_diagonal(B_v)
    A_v = Vi @ A @ V
    B_u = Ui @ B @ U
    t1, i1 = _blockwise_tridiagonal(A_v, vlab)
    t2, i2 = _blockwise_tridiagonal(B_u, ulab)

    comps = {}
    for J, j, w in ulab:
        if w == 0:
            comps[J] = comps.get(J, 0) + 1
    left = _multiset(cg_decompose(mn))
    right = _multiset(cg_decompose(np_))
    return RacahData(
        (m, n, p), images, rel, U, V, ulab, vlab, R, comps, left, right, diagonal_ok, t1 and t2, i1 and i2
    )


def _multiset(cg):
    out = {}
    for n, _ in cg.components:
        out[n] = out.get(n, 0) + 1
    return out


def _is_diagonal(M):
    return all(not M[i, j] for i in range(M.rows) for j in range(M.cols) if i != j)


# -- U'_q(so3) -------------------------------------------------------------


def so3_params(n, q, family):
    """Parameters of the classical ``(e0, e1, e2)`` or nonclassical family."""
    q = _check_q(q)
    if family == "nonclassical":
        i = gr("i")
        return ModuleParams(n, q, i, i, i)
    try:
        e0, e1, e2 = family
    except (TypeError, ValueError):
        raise PreconditionError(f"unknown so3 family {family!r}") from None
    if any(e not in (1, -1) for e in (e0, e1, e2)):
        raise PreconditionError("signs must be +1 or -1")
    if e0 * e1 * e2 != 1:
        raise PreconditionError("classical signs must satisfy e0 e1 e2 = 1")
    t = q ** (n + 1)
    return ModuleParams(n, q, -t * e0, -t * e1, -t * e2)


def so3_check(n, q, family):
    """Verify the ``U'_q(so3)`` relations on the matching ``V_n(a, b, c)``."""
    params = so3_params(n, q, family)
    q = params.q
    rep = vn_module(params)
    s = ONE / (q * q) - q * q
    K0, K1, K2 = (m / s for m in rep.matrices)
    qi = ONE / q
    rels = [
        (K1 @ K2 * q - K2 @ K1 * qi - K0).is_zero(),
        (K2 @ K0 * q - K0 @ K2 * qi - K1).is_zero(),
        (K0 @ K1 * q - K1 @ K0 * qi - K2).is_zero(),
    ]
    report = check_relations(rep)
    zero_central = report.scalar and all(x == ZERO for x in report.scalars)
    return {
        "module": params.to_json(),
        "irreducible": irreducible_criterion(params),
        "so3_relations": rels,
        "central_zero": zero_central,
        "relations_ok": report.ok,
        "ok": all(rels) and zero_central and report.ok,
    }
