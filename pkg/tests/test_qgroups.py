import pytest

from awdelta.awcore import qint
from awdelta.deltamod import ModuleParams, vn_module
from awdelta.errors import PreconditionError
from awdelta.linalg import ExactMatrix
from awdelta.qgroups import (
    casimir_scalar,
    cg_decompose,
    coproduct,
    equitable_rotator,
    racah,
    realize_uq,
    so3_check,
    standard_module,
    equitable_images,
)
from awdelta.scalar import ONE, gr

Q = gr(2)


def P(n, q, a, b, c):
    return ModuleParams(n, gr(q), gr(a), gr(b), gr(c))


def test_standard_v1():
    V = standard_module(1, 1, 2)
    assert V.k == ExactMatrix.diag([gr(2), gr("1/2")])
    assert V.e == ExactMatrix([[0, 1], [0, 0]])
    assert V.f == ExactMatrix([[0, 0], [1, 0]])
    assert casimir_scalar(1, 1, 2) == gr("17/9")
    assert V.casimir() == ExactMatrix.identity(2) * gr("17/9")


def test_standard_rejects():
    with pytest.raises(PreconditionError):
        standard_module(1, 0, 2)
    with pytest.raises(PreconditionError):
        standard_module(-1, 1, 2)
    with pytest.raises(PreconditionError):
        standard_module(1, 1, -1)


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("eps", [1, -1])
def test_module_relations_and_equitable_forms(n, eps):
    V = standard_module(n, eps, Q)
    assert V.relations_ok()
    I = ExactMatrix.identity(n + 1)
    t = V.equitable()
    assert t.y @ t.y_inv == I
    d = Q - ONE / Q
    for u, w in ((t.x, t.y), (t.y, t.z), (t.z, t.x)):
        assert (u @ w * Q - w @ u / Q) / d == I
    cas = V.casimir()
    assert cas == I * casimir_scalar(n, eps, Q)
    for m in (V.e, V.f, V.k):
        assert cas @ m == m @ cas


def test_rotator_trivial_module():
    L = equitable_rotator(standard_module(0, 1, Q))
    assert L.rows == 1 and L[0, 0]


@pytest.mark.parametrize("n, eps", [(1, 1), (2, -1), (3, 1)])
def test_rotator_cycles_triple(n, eps):
    V = standard_module(n, eps, Q)
    t = V.equitable()
    L = equitable_rotator(V)
    Li = L.inverse()
    assert Li @ t.x @ L == t.y
    assert Li @ t.y @ L == t.z
    assert Li @ t.z @ L == t.x
    L3 = L @ L @ L
    assert L3.scalar_value() is not None


@pytest.mark.parametrize(
    "params",
    [P(1, 2, 2, 1, 1), P(1, 2, 3, 5, 7), P(2, 3, 2, "1/5", "i"), P(3, 2, 5, 7, 11), P(2, "1/2", 3, 2, -1)],
)
def test_type_one_realization(params):
    R = realize_uq(params, 1)
    assert R is not None and R.residuals_zero
    assert equitable_images(params, R.x, R.y, R.z) == vn_module(params).matrices
    std = standard_module(params.n, 1, params.q).equitable()
    B, Bi = R.basis, R.basis.inverse()
    assert Bi @ R.x @ B == std.x
    assert Bi @ R.y @ B == std.y
    assert Bi @ R.z @ B == std.z
    assert realize_uq(params, -1) is None


@pytest.mark.parametrize("n", range(4))
def test_trace_obstruction(n):
    """tr A = eps [n+1] (a + 1/a) under a type eps structure; V_n has the eps = 1 value."""
    params = P(n, 2, 3, 5, 7)
    tr = vn_module(params).A.trace()
    a = params.a
    assert tr == qint(n + 1, params.q) * (a + ONE / a)
    assert tr != -qint(n + 1, params.q) * (a + ONE / a)


def test_realize_rejects_reducible():
    with pytest.raises(PreconditionError):
        realize_uq(P(1, 2, 1, 1, 1), 1)
    with pytest.raises(PreconditionError):
        realize_uq(P(1, 2, 2, 1, 1), 2)


def test_coproduct_v1_v1():
    V = standard_module(1, 1, Q)
    T = coproduct(V, V)
    assert T.k == ExactMatrix.diag([gr(4), ONE, ONE, gr("1/4")])
    assert T.relations_ok()


def test_coproduct_mixed_types():
    T = coproduct(standard_module(1, -1, Q), standard_module(2, 1, Q))
    assert T.relations_ok()
    with pytest.raises(PreconditionError):
        coproduct(standard_module(1, 1, 2), standard_module(1, 1, 3))


@pytest.mark.parametrize(
    "m, e1, n, e2, expected",
    [
        (1, 1, 1, 1, {(2, 1): 1, (0, 1): 1}),
        (1, 1, 0, 1, {(1, 1): 1}),
        (2, 1, 1, 1, {(3, 1): 1, (1, 1): 1}),
        (1, -1, 1, 1, {(2, -1): 1, (0, -1): 1}),
        (1, -1, 2, -1, {(3, 1): 1, (1, 1): 1}),
        (2, 1, 2, 1, {(4, 1): 1, (2, 1): 1, (0, 1): 1}),
    ],
)
def test_clebsch_gordan(m, e1, n, e2, expected):
    T = coproduct(standard_module(m, e1, Q), standard_module(n, e2, Q))
    res = cg_decompose(T)
    assert res.multiset() == expected
    B, Bi = res.basis, res.basis.inverse()
    for n_c, eps, start in res.blocks:
        V = standard_module(n_c, eps, Q)
        sl = range(start, start + n_c + 1)
        for big, small in ((T.e, V.e), (T.f, V.f), (T.k, V.k)):
            M = Bi @ big @ B
            assert ExactMatrix([[M[i, j] for j in sl] for i in sl]) == small


def test_racah_111():
    R = racah(1, 1, 1, 2)
    assert R.components == {3: 1, 1: 2}
    assert R.left == {2: 1, 0: 1} and R.right == {2: 1, 0: 1}
    assert R.relations.central
    assert R.diagonal_ok and R.tridiagonal_ok and R.irreducible_ok
    assert R.transition @ R.v_basis.inverse() == R.u_basis.inverse()
    data = R.to_json()
    assert data["tridiagonal_ok"] and data["central_ok"]


def test_racah_110():
    R = racah(1, 1, 0, 3)
    assert R.components == {2: 1, 0: 1}
    assert R.diagonal_ok and R.tridiagonal_ok


def test_racah_rejects():
    with pytest.raises(PreconditionError):
        racah(1, -1, 1, 2)
    with pytest.raises(PreconditionError):
        racah(1, 1, 1, 1)


@pytest.mark.parametrize("family", [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1), "nonclassical"])
@pytest.mark.parametrize("n", range(4))
def test_so3(family, n):
    res = so3_check(n, 2, family)
    assert res["ok"] and res["irreducible"]
    assert all(res["so3_relations"])


@pytest.mark.parametrize("family", [(-1, 1, 1), (-1, -1, -1), (1, 1, 2), "other"])
def test_so3_rejects(family):
    with pytest.raises(PreconditionError):
        so3_check(1, 2, family)
