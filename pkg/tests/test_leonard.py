import itertools
import math

import pytest

from awdelta.classify import irreducible_criterion
from awdelta.deltamod import ModuleParams
from awdelta.errors import PreconditionError
from awdelta.leonard import diagonalizable_criterion, leonard_check, unit, unitary_check_float
from awdelta.scalar import gr


def P(n, q, a, b, c):
    return ModuleParams(n, gr(q), gr(a), gr(b), gr(c))


def test_partial_diagonalizability():
    rep = leonard_check(P(1, 2, 2, 1, 1), verify_directly=True)
    assert rep.diag_flags == (True, False, False)
    assert rep.pair_flags == (False, False, False)
    assert not rep.triple_flag
    assert rep.agrees and rep.consistent


def test_generic_triple():
    rep = leonard_check(P(2, 2, 3, 5, 7), verify_directly=True)
    assert rep.triple_flag and rep.agrees
    assert rep.witnesses["B in A-eigenbasis"].is_tridiagonal(irreducible=True)
    data = rep.to_json()
    assert data["triple"] and data["agrees"]
    assert set(data["pairs"]) == {"AB", "AC", "BC"}


def test_dimension_one_is_trivially_leonard():
    rep = leonard_check(P(0, 2, 1, 1, 1), verify_directly=True)
    assert rep.triple_flag and rep.agrees


def test_criterion_values():
    q = gr(2)
    assert diagonalizable_criterion(0, q, gr(1))
    assert not diagonalizable_criterion(2, q, q)
    assert diagonalizable_criterion(2, q, q * q)
    assert not diagonalizable_criterion(3, q, gr(-1))


def test_rejects_reducible():
    with pytest.raises(PreconditionError):
        leonard_check(P(1, 2, 1, 1, 1))


def _grid(n_max, q):
    q = gr(q)
    vals = [gr(1), gr(-1), q, 1 / q, q * q, gr(3), gr("i")]
    for n in range(n_max + 1):
        for abc in itertools.product(vals, repeat=3):
            p = ModuleParams(n, q, *abc)
            if irreducible_criterion(p):
                yield p


@pytest.mark.parametrize("q", ["2", "1/3"])
def test_criterion_matches_direct_check(q):
    seen = set()
    for p in _grid(3, q):
        rep = leonard_check(p, verify_directly=True)
        assert rep.agrees, p.to_json()
        assert rep.consistent
        seen.add(rep.triple_flag)
    assert seen == {True, False}


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize(
    "ta, tc",
    [(0.3, 0.5), (1.1, math.pi), (0.7, 2.0)],
)
def test_unitary_pairing(n, ta, tc):
    q, a = unit(0.4), unit(ta)
    for b in (a.conjugate(), 1 / a.conjugate()):
        res = unitary_check_float(n, q, a, b, unit(tc))
        assert res["ok"], res
        assert res["residual"] < 1e-9


def test_unitary_on_circle_c():
    res = unitary_check_float(2, unit(0.4), unit(0.9), unit(-0.9), unit(0.5))
    assert res["ok"]


def test_unitary_trivial_dimension():
    assert unitary_check_float(0, unit(0.4), unit(0.3), unit(-0.3), 1)["ok"]


@pytest.mark.parametrize(
    "args",
    [
        (2, unit(0.4), unit(0.3), unit(-0.3), 2),
        (2, unit(0.4), unit(0.3), unit(0.5), 1),
        (2, 2, unit(0.3), unit(-0.3), 1),
        (2, unit(math.pi / 2), unit(0.3), unit(-0.3), 1),
        (-1, unit(0.4), unit(0.3), unit(-0.3), 1),
    ],
)
def test_unitary_preconditions(args):
    with pytest.raises(PreconditionError):
        unitary_check_float(*args)


def test_unitary_reference_point():
    res = unitary_check_float(2, unit(1.0), unit(0.3), unit(0.3), unit(0.7), 1e-9)
    assert res["ok"] and res["residual"] < 1e-9 and res["pairing_error"] < 1e-9
    with pytest.raises(PreconditionError):
        unitary_check_float(2, unit(1.0), unit(0.3), unit(0.3), 2 * unit(0.7), 1e-9)
