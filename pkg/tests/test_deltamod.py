import itertools
import random

import pytest

from awdelta.awcore import SymbolArgs, build_rep, omega_at, qint, theta_at
from awdelta.deltamod import (
    E1,
    GENERATORS,
    GROUP24,
    SIG,
    TAU_ELEM,
    V4,
    DeltaRep,
    GroupElem24,
    ModuleParams,
    act_on_tuple,
    c_vee,
    change_basis24,
    check_relations,
    expected_forms,
    orbit_key,
    sign_orbit,
    verma_truncation,
    vn_module,
)
from awdelta.errors import PreconditionError
from awdelta.linalg import ExactMatrix, Polynomial, char_poly, random_unimodular
from awdelta.scalar import ONE, gr

I = gr("i")


def P(n, q, a, b, c, lam=None):
    return ModuleParams(n, gr(q), gr(a), gr(b), gr(c), None if lam is None else gr(lam))


def test_params_validation_and_json():
    with pytest.raises(PreconditionError):
        P(1, 2, 0, 1, 1)
    with pytest.raises(PreconditionError):
        P(1, -1, 2, 1, 1)
    with pytest.raises(PreconditionError):
        P(-1, 2, 2, 1, 1)
    p = P(2, 2, "1/2", "i", 3)
    assert p.specialized and p.lam == gr(4)
    assert p.to_json() == {"n": 2, "q": "2/1", "a": "1/2", "b": "0/1+1/1i", "c": "3/1"}
    assert ModuleParams.from_json(p.to_json()) == p
    v = P(0, 2, 3, 5, 7, lam=9)
    assert not v.specialized
    assert ModuleParams.from_json(v.to_json()) == v
    with pytest.raises(PreconditionError):
        ModuleParams.from_json({"n": 1, "q": "2"})


def test_vn_module_examples():
    rep = vn_module(P(1, 2, 3, 5, 7))
    assert rep.A.trace() == gr("25/3")
    assert rep.A.trace() == qint(2, gr(2)) * (gr(3) + gr("1/3"))
    r0 = vn_module(P(0, 2, 3, 5, 7))
    assert [m[0, 0] for m in r0.matrices] == [gr(3) + gr("1/3"), gr(5) + gr("1/5"), gr(7) + gr("1/7")]
    with pytest.raises(PreconditionError):
        vn_module(P(1, 2, 3, 5, 7, lam=3))


@pytest.mark.parametrize("params", [P(2, 2, 3, 5, 7), P(3, 3, "1/2", I, -1), P(1, 2, 2, 1, 1)])
def test_characteristic_polynomials(params):
    rep = vn_module(params)
    lam = params.lam
    for m, x in zip(rep.matrices, params.abc):
        K = Polynomial.from_roots([theta_at(i, lam, params.q, x) for i in range(params.n + 1)])
        assert char_poly(m) == K


def test_check_relations_on_vn():
    p = P(1, 2, 2, 1, 1)
    report = check_relations(vn_module(p))
    assert report.ok and report.central and report.scalar
    assert report.scalars[2] == omega_at(gr(2), gr(2), gr(2), gr(1), gr(1))
    assert report.scalars == p.central_values()
    assert report.to_json()["ok"] is True


def test_check_relations_negative_control():
    rep = vn_module(P(2, 2, 3, 5, 7))
    rng = random.Random(0)
    B = ExactMatrix([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)])
    bad = DeltaRep(rep.A, B, rep.C, rep.q)
    report = check_relations(bad)
    assert not report.central and not report.ok and report.failures


def test_check_relations_is_basis_independent():
    rep = vn_module(P(3, 2, 3, "1/5", I))
    conj = rep.conjugate(random_unimodular(4, random.Random(1)))
    assert check_relations(conj).ok


@pytest.mark.parametrize("lam", ["3", "1/7", "2+i"])
def test_verma_truncation(lam):
    p = P(0, 2, 3, 5, 7, lam=lam)
    rep = verma_truncation(p, 9)
    assert rep.window == 6
    report = check_relations(rep)
    assert report.ok
    assert report.scalars[2] == omega_at(gr(lam), gr(2), gr(3), gr(5), gr(7))
    w = rep.window
    inv = SymbolArgs(ONE / gr(lam), gr("1/2"), gr("1/3"), gr("1/5"), gr("1/7"))
    T_inv = build_rep(9, inv)[2]
    assert (c_vee(rep) - T_inv).window(w).is_zero()


def test_verma_truncation_stability():
    p = P(0, 3, 2, 5, "1/3", lam=5)
    small, big = verma_truncation(p, 7), verma_truncation(p, 12)
    w = small.window
    for x, y in zip(small.matrices, big.matrices):
        assert x == y.window(7)
    from awdelta.deltamod import central_images

    for x, y in zip(central_images(*small.matrices, p.q), central_images(*big.matrices, p.q)):
        assert x.window(w) == y.window(w)


def test_verma_basis_contract():
    """prod (A - theta_{h-1}) m_0 gives the canonical vectors m_i."""
    p = P(0, 2, 3, 5, 7, lam=3)
    depth = 8
    rep = verma_truncation(p, depth)
    v = ExactMatrix.column_vector([ONE] + [gr(0)] * (depth - 1))
    for i in range(depth - 1):
        expected = ExactMatrix.column_vector([ONE if j == i else gr(0) for j in range(depth)])
        assert v == expected
        v = rep.A @ v - v * theta_at(i, p.lam, p.q, p.a)


def test_verma_rejects_degenerate_q():
    with pytest.raises(PreconditionError):
        verma_truncation(P(0, 2, 3, 5, 7), 0)


def test_group_has_24_elements_and_is_associative():
    assert len(GROUP24) == 24 and len(set(GROUP24)) == 24
    assert len(V4) == 4
    for g, h, k in itertools.product(GROUP24, repeat=3):
        assert (g * h) * k == g * (h * k)
    for g in GROUP24:
        assert (g * g.inverse()).is_identity()


def test_group_action_law():
    t = (gr(3), gr(2), gr("5/7"), gr("1+i"))
    for g, h in itertools.product(GROUP24, repeat=2):
        assert act_on_tuple(g * h, t) == act_on_tuple(h.word(), act_on_tuple(g, t))


def test_sign_action_of_permutations():
    # sigma fixes the pattern (-1, 1) and sends (1, -1) to (-1, -1)
    e1, e2 = GroupElem24(-1, 1), GroupElem24(1, -1)
    s, t = SIG, TAU_ELEM
    assert s * e1 * s.inverse() in (e1,)
    assert (s * e2 * s.inverse()) == GroupElem24(-1, -1)
    assert (t * e1 * t.inverse()) == e2


def test_words_generate_elements():
    for g in GROUP24:
        h = GroupElem24()
        for name in g.word():
            h = h * GENERATORS[name]
        assert h == g


def test_parse_group_elements():
    assert GroupElem24.parse("-1,1,1") == E1
    assert GroupElem24.parse("1,1,s") == SIG
    assert GroupElem24.parse("(1,-1,st)").perm == (1, 2, 0)
    assert GroupElem24.parse("1,1,021").perm == (0, 2, 1)
    with pytest.raises(PreconditionError):
        GroupElem24.parse("1,1,x")
    with pytest.raises(PreconditionError):
        GroupElem24(2, 1)


def test_change_basis_identity():
    p = P(2, 2, 3, 5, 7)
    T, mats, target = change_basis24(p, GroupElem24())
    assert T == ExactMatrix.identity(3)
    assert mats == vn_module(p).matrices


def test_change_basis_e1_example():
    p = P(1, 2, 2, 1, 1)
    q, a, b, c = p.q, p.a, p.b, p.c
    _, mats, target = change_basis24(p, E1)
    expected = build_rep(2, SymbolArgs.specialized(1, q, ONE / a, b, ONE / c))
    assert mats == expected
    assert target == (q, ONE / a, b, ONE / c)


POINTS = [P(1, 2, 3, 5, 7), P(2, 3, "1/2", I, 2), P(3, 2, 5, 7, 11)]


@pytest.mark.parametrize("params", POINTS)
def test_all_24_bases(params):
    for g in GROUP24:
        _, mats, target = change_basis24(params, g)
        assert g.permute(mats) == expected_forms(params.n, target)


def test_sigma_tau_basis_gives_b_and_c_forms():
    p = P(2, 3, 2, 5, 7)
    q, a, b, c = p.q, p.a, p.b, p.c
    g = SIG * TAU_ELEM
    _, (A2, B2, C2), target = change_basis24(p, g)
    args_ = SymbolArgs.specialized(2, q, b, c, a)
    L, U, _ = build_rep(3, args_)
    assert B2 == L and C2 == U


def test_word_independence_up_to_scalar():
    p = P(2, 2, 3, 5, 7)
    for g, word in [(E1, ("e1", "e1", "e1")), (SIG, ("e1", "s", "e1")), (TAU_ELEM, ("t", "t", "t"))]:
        h = GroupElem24()
        for name in word:
            h = h * GENERATORS[name]
        assert h == g
        A, _, _ = change_basis24(p, g)
        B, _, _ = change_basis24(p, g, word=word)
        ratios = {B[i, j] / A[i, j] for i in range(3) for j in range(3) if A[i, j]}
        assert len(ratios) == 1
        assert all(bool(A[i, j]) == bool(B[i, j]) for i in range(3) for j in range(3))


def test_reducible_module_allows_only_klein_bases():
    p = P(1, 2, 1, 1, 1)
    for g in V4:
        change_basis24(p, g)
    with pytest.raises(PreconditionError):
        change_basis24(p, GroupElem24(1, -1))


def test_orbit_key_examples():
    assert orbit_key(2, 3, 5) == orbit_key(gr("1/2"), 3, gr("1/5")) == (gr(2), gr(3), gr(5))
    assert orbit_key(1, 1, 1) == (ONE, ONE, ONE)
    assert orbit_key(I, -I, I) == (I, I, I)
    with pytest.raises(PreconditionError):
        orbit_key(0, 1, 1)


def test_sign_orbit_shares_key():
    triples = sign_orbit(2, "1/3", "1+i")
    assert len(set(triples)) == 8
    assert len({orbit_key(*t) for t in triples}) == 1


def test_deltarep_json_round_trip():
    rep = vn_module(P(1, 2, 3, 5, 7))
    doc = rep.to_json()
    assert doc["module"]["n"] == 1 and len(doc["central"]) == 3
    back = DeltaRep.from_json(doc)
    assert back.matrices == rep.matrices and back.central == rep.central
