"""Reproducible verification grid behind ``aw suite`` and the acceptance tests."""

import itertools
import random
import time
from dataclasses import dataclass

from .awcore import (
    SymbolArgs,
    build_rep,
    build_transition,
    omega_at,
    phi_at,
    qint,
    theta_at,
)
from .awpoly import AWContext, aw_operator_check, aw_poly, recurrence_coeffs
from .classify import (
    parameter_quadratics,
    irreducible_criterion,
    irreducible_oracle,
    random_conjugation,
    recognize,
)
from .deltamod import (
    GENERATORS,
    GROUP24,
    ModuleParams,
    _WORDS,
    change_basis24,
    check_relations,
    expected_forms,
    orbit_key,
    verma_truncation,
    vn_module,
)
from .leonard import unit, unitary_check_float
from .linalg import Polynomial
from .qgroups import racah, realize_uq, so3_check
from .scalar import ONE, gr

__all__ = ["CriterionResult", "CRITERIA", "grid_values", "grid_points", "run_suite"]

GRID_Q = ("2", "3", "1/2")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    limit: float
    checked: int
    detail: str = ""

    @property
    def ok(self):
        return self.passed and self.elapsed < self.limit

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return (
            f"criterion {self.number:2d} {status}: {self.title}; "
            f"{self.checked} checks in {self.elapsed:.2f}s (limit {self.limit:g}s){extra}"
        )

    def to_json(self):
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "ok": self.ok,
            "elapsed": round(self.elapsed, 3),
            "limit": self.limit,
            "checked": self.checked,
            "detail": self.detail,
        }


def grid_values(q):
    """Distinct members of ``{1, -1, 2, 3, q, q^2, i}``."""
    q = gr(q)
    out = []
    for v in (gr(1), gr(-1), gr(2), gr(3), q, q * q, gr("i")):
        if v not in out:
            out.append(v)
    return out


def grid_points(n_max, qs=GRID_Q):
    for q in qs:
        vals = grid_values(q)
        for n in range(n_max + 1):
            for a, b, c in itertools.product(vals, repeat=3):
                yield ModuleParams(n, gr(q), a, b, c)


def _timed(number, title, limit, body):
    t0 = time.perf_counter()
    passed, checked, detail = body()
    return CriterionResult(number, title, passed, time.perf_counter() - t0, limit, checked, detail)


# -- 1: symbol identities ---------------------------------------------------


def _rand_scalar(rng, gaussian=True):
    while True:
        re_ = rng.randint(-9, 9)
        den = rng.randint(1, 5)
        im = rng.randint(-3, 3) if gaussian and rng.random() < 0.3 else 0
        v = gr(re_) / den + gr("i") * im
        if v:
            return v


def _rand_q(rng):
    while True:
        q = _rand_scalar(rng)
        if q.norm() != 1:
            return q


def _symbols(seed=1, draws=200):
    rng = random.Random(seed)
    checked = 0
    for _ in range(draws):
        lam, Q = _rand_scalar(rng), _rand_q(rng)
        X, Y, Z = (_rand_scalar(rng) for _ in range(3))
        n = rng.randint(0, 8)
        i = rng.randint(-3, 10)
        inv = [ONE / v for v in (lam, Q, X, Y, Z)]
        if theta_at(i, inv[0], inv[1], inv[2]) != theta_at(i, lam, Q, X):
            return False, checked, f"theta inversion symmetry fails at draw {checked}"
        if phi_at(i, *inv) != phi_at(i, lam, Q, X, Y, Z):
            return False, checked, f"phi inversion symmetry fails at draw {checked}"
        if omega_at(lam, Q, Y, X, Z) != omega_at(lam, Q, X, Y, Z):
            return False, checked, f"omega X,Y symmetry fails at draw {checked}"
        Qn, Qi = Q**n, ONE / Q
        Qin = Qi**n
        if theta_at(n - i, Qn, Q, X) != theta_at(i, Qin, Qi, X):
            return False, checked, f"theta reflection fails at draw {checked}"
        if phi_at(n - i + 1, Qn, Q, X, Y, Z) != phi_at(i, Qin, Qi, X, Y, Z):
            return False, checked, f"phi reflection fails at draw {checked}"
        for j in range(-3, 11):
            lhs = theta_at(j, Qn, Q, X)
            rhs = (Q * Q + Qi * Qi) * theta_at(j - 1, Qn, Q, X) - theta_at(j - 2, Qn, Q, X)
            if lhs != rhs:
                return False, checked, f"recurrence fails at draw {checked}"
        total = sum((theta_at(j, Qn, Q, X) for j in range(n + 1)), gr(0))
        if total != qint(n + 1, Q) * (X + ONE / X):
            return False, checked, f"theta sum fails at draw {checked}"
        checked += 1
    return True, checked, ""


def criterion_1():
    return _timed(1, "symbol identities and theta recurrence", 5, _symbols)


# -- 2: matrix equations ----------------------------------------------------

GRID2 = ("2", "1/3", "1+i")


def _matrix_equations():
    checked = 0
    vals = [gr(v) for v in GRID2]
    for Q, X, Y, Z in itertools.product(vals, repeat=4):
        lam = Q * Q * Q
        depth, w = 8, 7
        args = SymbolArgs(lam, Q, X, Y, Z)
        L, _, T = build_rep(depth, args)
        Lx = build_rep(depth, args.with_xyz(ONE / X, Y, Z))[0]
        Lz = build_rep(depth, args.with_xyz(Z, Y, Z))[0]
        E = build_transition("E", depth, args)
        S = build_transition("S", depth, args)
        if not (L @ E - E @ Lx).window(w).is_zero():
            return False, checked, f"L E = E L(X^-1) fails at {(Q, X, Y, Z)}"
        if not (T @ S - S @ Lz).window(w).is_zero():
            return False, checked, f"T S = S L(Z) fails at {(Q, X, Y, Z)}"
        checked += 2
        for n in range(5):
            sp = SymbolArgs.specialized(n, Q, X, Y, Z)
            Ln, Un, _ = build_rep(n + 1, sp)
            F = build_transition("F", n + 1, sp)
            P = build_transition("P", n + 1, sp)
            Qi = ONE / Q
            LY = build_rep(n + 1, SymbolArgs(Qi**n, Qi, Y, Y, Z))[0]
            if not (Ln @ F - F @ Ln).is_zero():
                return False, checked, f"L F = F L fails at n={n}"
            if not (Un @ P - P @ LY).is_zero():
                return False, checked, f"U P = P L(Q^-1; Y) fails at n={n}"
            checked += 2
    return True, checked, ""


def criterion_2():
    return _timed(2, "transition matrix equations", 30, _matrix_equations)


# -- 3: relations on V_n and Verma truncations ------------------------------


def _relations():
    checked = 0
    for p in grid_points(4):
        rep = vn_module(p)
        report = check_relations(rep)
        if not report.ok:
            return False, checked, f"V_n relations fail at {p.to_json()}: {report.failures}"
        checked += 1
    for q in GRID_Q:
        for a, b, c in itertools.product(grid_values(q), repeat=3):
            p = ModuleParams(0, gr(q), a, b, c, lam=gr(q) ** 3)
            report = check_relations(verma_truncation(p, 8))
            if not report.ok:
                return False, checked, f"Verma relations fail at {p.to_json()}"
            checked += 1
    return True, checked, ""


def criterion_3():
    return _timed(3, "relations on V_n(a,b,c) and Verma truncations", 120, _relations)


# -- 4: irreducibility criterion vs oracle ----------------------------------


def _irreducibility():
    checked = 0
    for p in grid_points(3):
        crit = irreducible_criterion(p)
        if crit != irreducible_oracle(vn_module(p)):
            return False, checked, f"disagreement at {p.to_json()}"
        checked += 1
    return True, checked, ""


def criterion_4():
    return _timed(4, "irreducibility criterion agrees with the oracle", 300, _irreducibility)


# -- 5: recognition round trip ----------------------------------------------


def _recognition(seed=5):
    rng = random.Random(seed)
    checked = 0
    for p in grid_points(3):
        if not irreducible_criterion(p):
            continue
        rep = vn_module(p)
        conj, _ = random_conjugation(rep, rng)
        res = recognize(conj)
        if res.orbit != orbit_key(*p.abc):
            return False, checked, f"orbit mismatch at {p.to_json()}"
        M = res.intertwiner
        Mi = M.inverse()
        if (Mi @ conj.A @ M, Mi @ conj.B @ M, Mi @ conj.C @ M) != vn_module(res.params).matrices:
            return False, checked, f"intertwiner check fails at {p.to_json()}"
        for (_, roots), x in zip(parameter_quadratics(conj), p.abc):
            if set(roots) != {x, ONE / x}:
                return False, checked, f"quadratic roots wrong at {p.to_json()}"
        checked += 1
    return True, checked, ""


def criterion_5():
    return _timed(5, "recognition of conjugated modules", 300, _recognition)


# -- 6: the 24 bases --------------------------------------------------------

POINTS6 = (
    (1, "2", "3", "5", "7"),
    (2, "2", "3", "5", "7"),
    (2, "3", "2", "1/5", "i"),
    (3, "2", "5", "7", "11"),
    (3, "1/2", "3", "-1", "2"),
    (1, "3", "i", "2", "5"),
    (2, "2", "-3", "7", "1/3"),
    (4, "2", "3", "5", "7"),
    (2, "1+i", "2", "3", "5"),
    (3, "3", "2", "i", "7"),
)


def _alternate_words(limit=5, max_len=5):
    """Pairs ``(element, word)`` whose word differs from the canonical one."""
    out = []
    for length in range(2, max_len + 1):
        for word in itertools.product(GENERATORS, repeat=length):
            g = GENERATORS[word[0]]
            for name in word[1:]:
                g = g * GENERATORS[name]
            if word != _WORDS[g] and not g.is_identity():
                out.append((g, list(word)))
                if len(out) == limit:
                    return out
    return out


def _proportional(M, N):
    ratio = None
    for r in range(M.rows):
        for s in range(M.cols):
            x, y = M[r, s], N[r, s]
            if bool(x) != bool(y):
                return False
            if x:
                if ratio is None:
                    ratio = y / x
                elif y / x != ratio:
                    return False
    return ratio is not None


def _bases24():
    checked = 0
    params = [ModuleParams(n, gr(q), gr(a), gr(b), gr(c)) for n, q, a, b, c in POINTS6]
    for p in params:
        if not irreducible_criterion(p):
            return False, checked, f"grid point {p.to_json()} is not irreducible"
        for g in GROUP24:
            _, mats, target = change_basis24(p, g)
            if g.permute(mats) != expected_forms(p.n, target):
                return False, checked, f"element {g.label()} misses its target form at {p.to_json()}"
            checked += 1
    for p, (g, word) in zip(params, _alternate_words()):
        P1, _, _ = change_basis24(p, g)
        P2, _, _ = change_basis24(p, g, word=word)
        if not _proportional(P1, P2):
            return False, checked, f"word {word} disagrees with the canonical word"
        checked += 1
    return True, checked, ""


def criterion_6():
    return _timed(6, "24 bases and word independence", 60, _bases24)


# -- 7: Askey-Wilson polynomials --------------------------------------------

POINTS7 = (("3", "2", "3", "5", "7"), ("5", "3", "2", "7", "1+i"))


def _askey_wilson():
    checked = 0
    X = Polynomial.x()
    for pt in POINTS7:
        ctx = AWContext(*(gr(v) for v in pt))
        ctx.check_generic(6)
        polys = [aw_poly(i, ctx) for i in range(7)]
        for i in range(6):
            a_i, b_i, c_i = recurrence_coeffs(i, ctx)
            rhs = polys[i + 1] * a_i + polys[i] * c_i
            if i:
                rhs = rhs + polys[i - 1] * b_i
            if X * polys[i] != rhs:
                return False, checked, f"recurrence fails at i={i}, point {pt}"
            checked += 1
        for i in range(3):
            if not aw_operator_check(i, ctx, poly=polys[i]):
                return False, checked, f"D eigen-identity fails at i={i}, point {pt}"
            checked += 1
    return True, checked, ""


def criterion_7():
    return _timed(7, "Askey-Wilson recurrence and difference operator", 30, _askey_wilson)


# -- 8: realizations --------------------------------------------------------

POINTS8 = (
    (1, "2", "2", "1", "1"),
    (1, "2", "3", "5", "7"),
    (2, "2", "3", "5", "7"),
    (2, "3", "2", "1/5", "i"),
    (3, "2", "5", "7", "11"),
    (1, "3", "i", "2", "5"),
    (2, "2", "-3", "7", "1/3"),
    (2, "1/2", "3", "2", "-1"),
    (3, "3", "2", "i", "7"),
    (1, "2", "1+i", "3", "2"),
)


def _realizations():
    checked = 0
    for n, q, a, b, c in POINTS8:
        p = ModuleParams(n, gr(q), gr(a), gr(b), gr(c))
        if realize_uq(p, 1) is None:
            return False, checked, f"type 1 realization missing at {p.to_json()}"
        if realize_uq(p, -1) is not None:
            return False, checked, f"type -1 realization unexpectedly found at {p.to_json()}"
        checked += 2
    i = gr("i")
    for n in (1, 2):
        p = ModuleParams(n, gr(2), i, i, i)
        for eps in (1, -1):
            if realize_uq(p, eps) is None:
                return False, checked, f"type {eps} realization missing at (i, i, i), n={n}"
            checked += 1
    return True, checked, ""


def criterion_8():
    return _timed(8, "equitable realizations of both types", 60, _realizations)


# -- 9: so3 -----------------------------------------------------------------

CLASSICAL = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def _so3():
    checked = 0
    for q in (2, 3):
        for n in range(4):
            for family in CLASSICAL + ("nonclassical",):
                report = so3_check(n, q, family)
                if not report["ok"]:
                    return False, checked, f"so3 check fails for {family} at n={n}, q={q}"
                checked += 1
    return True, checked, ""


def criterion_9():
    return _timed(9, "so3 specialisations", 30, _so3)


# -- 10: Racah --------------------------------------------------------------

TRIPLES10 = ((1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1))


def _racah():
    checked = 0
    for m, n, p in TRIPLES10:
        data = racah(m, n, p, 2)
        if not data.relations.central:
            return False, checked, f"centrality fails at {(m, n, p)}"
        expect = {m + n - 2 * i: 1 for i in range(min(m, n) + 1)}
        if data.left != expect:
            return False, checked, f"Clebsch-Gordan multiset wrong at {(m, n, p)}"
        if not data.tridiagonal_ok:
            return False, checked, f"tridiagonality fails at {(m, n, p)}"
        checked += 1
    return True, checked, ""


def criterion_10():
    return _timed(10, "tensor product images and Racah transition", 180, _racah)


# -- 11: unitary ------------------------------------------------------------


def _unitary():
    report = unitary_check_float(2, unit(1.0), unit(0.3), unit(0.3), unit(0.7), 1e-9)
    return report["ok"], 1, f"residual {report['residual']:.2e}"


def criterion_11():
    return _timed(11, "floating point unitary form", 1, _unitary)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_suite(selection=None, echo=None):
    """Run the chosen criteria (all by default); ``echo`` receives each summary line."""
    results = []
    for k in selection or sorted(CRITERIA):
        res = CRITERIA[k]()
        if echo is not None:
            echo(res.line())
        results.append(res)
    return results
