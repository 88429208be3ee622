"""Representations of the universal Askey-Wilson algebra.

A representation is given by the matrices of the generators ``A``, ``B``,
``C``.  This module builds Verma truncations and the finite quotients
``V_n(a, b, c)``, checks the defining relations, and implements the 24
bases indexed by the group ``{+-1}^2 x| S3``.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .awcore import SymbolArgs, build_rep, build_transition, omega_at, qint
from .errors import PreconditionError
from .linalg import ExactMatrix, commutator
from .scalar import ONE, format_scalar, gr, is_root_of_unity, parse_scalar

__all__ = [
    "ModuleParams",
    "DeltaRep",
    "RelationReport",
    "GroupElem24",
    "GROUP24",
    "V4",
    "verma_truncation",
    "vn_module",
    "check_relations",
    "c_vee",
    "change_basis24",
    "transition_for_word",
    "orbit_key",
    "act_on_tuple",
    "expected_forms",
    "sign_orbit",
    "central_images",
    "cubic_residual",
]


@dataclass(frozen=True)
class ModuleParams:
    """The data ``(n, q, a, b, c)`` and ``lam`` (default ``q**n``)."""

    n: int
    q: object
    a: object
    b: object
    c: object
    lam: object = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise PreconditionError("n must be a nonnegative integer")
        for name in ("q", "a", "b", "c"):
            v = gr(getattr(self, name))
            if not v:
                raise PreconditionError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)
        if is_root_of_unity(self.q):
            raise PreconditionError("q must not be a root of unity")
        lam = self.q**self.n if self.lam is None else gr(self.lam)
        if not lam:
            raise PreconditionError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)

    @property
    def specialized(self):
        return self.lam == self.q**self.n

    @property
    def abc(self):
        return (self.a, self.b, self.c)

    def args(self):
        n = self.n if self.specialized else None
        return SymbolArgs(self.lam, self.q, self.a, self.b, self.c, n)

    def with_abc(self, a, b, c):
        return ModuleParams(self.n, self.q, a, b, c)

    def central_values(self):
        """Scalars of ``alpha, beta, gamma``: omega at the three cyclic shifts."""
        lam, q, a, b, c = self.lam, self.q, self.a, self.b, self.c
        return (omega_at(lam, q, b, c, a), omega_at(lam, q, c, a, b), omega_at(lam, q, a, b, c))

    def to_json(self):
        out = {"n": self.n}
        for name in ("q", "a", "b", "c"):
            out[name] = format_scalar(getattr(self, name))
        if not self.specialized:
            out["lambda"] = format_scalar(self.lam)
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            lam = obj.get("lambda")
            return cls(
                int(obj["n"]),
                parse_scalar(obj["q"]),
                parse_scalar(obj["a"]),
                parse_scalar(obj["b"]),
                parse_scalar(obj["c"]),
                None if lam is None else parse_scalar(lam),
            )
        except KeyError as exc:
            raise PreconditionError(f"module JSON lacks field {exc}") from None


@dataclass
class DeltaRep:
    """Matrices of ``A``, ``B``, ``C`` on a common space.

    ``window`` limits relation checks to a top-left block (Verma
    truncations); ``None`` means the whole matrix is meaningful.
    """

    A: ExactMatrix
    B: ExactMatrix
    C: ExactMatrix
    q: object
    central: Optional[tuple] = None
    window: Optional[int] = None
    params: Optional[ModuleParams] = field(default=None, compare=False)

    def __post_init__(self):
        self.q = gr(self.q)
        shapes = {self.A.shape, self.B.shape, self.C.shape}
        if len(shapes) != 1 or self.A.rows != self.A.cols:
            raise PreconditionError("A, B, C must be square of equal size")

    @property
    def size(self):
        return self.A.rows

    @property
    def matrices(self):
        return (self.A, self.B, self.C)

    def conjugate(self, P):
        """The same representation in the basis given by the columns of ``P``."""
        Pi = P.inverse()
        return DeltaRep(Pi @ self.A @ P, Pi @ self.B @ P, Pi @ self.C @ P, self.q, self.central, self.window)

    def to_json(self):
        out = {
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "C": self.C.to_json(),
            "q": format_scalar(self.q),
        }
        if self.central is not None:
            out["central"] = [format_scalar(x) for x in self.central]
        if self.params is not None:
            out["module"] = self.params.to_json()
        if self.window is not None:
            out["window"] = self.window
        return out

    @classmethod
    def from_json(cls, obj):
        central = obj.get("central")
        return cls(
            ExactMatrix.from_json(obj["A"]),
            ExactMatrix.from_json(obj["B"]),
            ExactMatrix.from_json(obj["C"]),
            parse_scalar(obj["q"]),
            None if central is None else tuple(parse_scalar(x) for x in central),
            obj.get("window"),
        )


def _check_q(q):
    if not (q * q - ONE / (q * q)) or not (q + ONE / q):
        raise PreconditionError("q must satisfy q^4 != 1")


def verma_truncation(params, depth):
    """Top-left ``depth x depth`` block of the Verma module, window ``depth - 3``."""
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    _check_q(params.q)
    args = SymbolArgs(params.lam, params.q, params.a, params.b, params.c)
    L, U, T = build_rep(depth, args)
    return DeltaRep(L, U, T, params.q, params.central_values(), max(depth - 3, 0), params)


def vn_module(params):
    """The ``(n+1)``-dimensional quotient ``V_n(a, b, c)``."""
    if not params.specialized:
        raise PreconditionError("V_n requires lambda = q^n")
    _check_q(params.q)
    L, U, T = build_rep(params.n + 1, params.args())
    return DeltaRep(L, U, T, params.q, params.central_values(), None, params)


def c_vee(rep):
    """``C + (AB - BA)/(q - q^{-1})``."""
    q = rep.q
    return rep.C + commutator(rep.A, rep.B) / (q - ONE / q)


@dataclass
class RelationReport:
    central: bool
    forms_agree: bool
    scalars: tuple
    scalar: bool
    matches_expected: Optional[bool]
    cubic_zero: bool
    window: Optional[int]
    failures: list

    @property
    def ok(self):
        if not (self.central and self.forms_agree and self.cubic_zero):
            return False
        return self.matches_expected is not False

    def to_json(self):
        return {
            "central": self.central,
            "forms_agree": self.forms_agree,
            "scalar": self.scalar,
            "scalars": [None if s is None else format_scalar(s) for s in self.scalars],
            "matches_expected": self.matches_expected,
            "cubic_zero": self.cubic_zero,
            "window": self.window,
            "failures": self.failures,
            "ok": self.ok,
        }


def central_images(A, B, C, q):
    """The elements ``alpha, beta, gamma`` from the cyclic commutator forms."""
    qi = ONE / q
    d = q * q - qi * qi
    s = q + qi

    def form(X, Y, Z):
        return (X + (Y @ Z * q - Z @ Y * qi) / d) * s

    return form(A, B, C), form(B, C, A), form(C, A, B)


def alpha_beta_from_gamma(A, B, gamma, q):
    """``alpha`` and ``beta`` expressed through ``A``, ``B`` and ``gamma``."""
    qi = ONE / q
    q2 = q * q + qi * qi
    d2 = q * q - qi * qi
    d1 = q - qi
    den = d1 * d2
    AB, BA = A @ B, B @ A
    alpha = (B @ BA - B @ AB * q2 + AB @ B + A * (d2 * d2) + B @ gamma * (d1 * d1)) / den
    beta = (A @ AB - A @ BA * q2 + BA @ A + B * (d2 * d2) + A @ gamma * (d1 * d1)) / den
    return alpha, beta


def cubic_residual(A, B, q):
    q3 = qint(3, q)
    d = q * q - ONE / (q * q)
    BA, AB = B @ A, A @ B
    BB = B @ B
    return BB @ BA - BB @ AB * q3 + B @ AB @ B * q3 - AB @ BB + (BA - AB) * (d * d)


def check_relations(rep, require_scalar=True):
    """Verify that the three central combinations commute with ``A, B, C``.

    Residuals are compared on ``rep.window`` when it is set.  When the
    representation carries expected central values they are compared too.
    """
    _check_q(rep.q)
    A, B, C = rep.matrices
    w = rep.window if rep.window is not None else rep.size
    cut = (lambda m: m.window(w)) if w < rep.size else (lambda m: m)
    failures = []

    alpha, beta, gamma = central_images(A, B, C, rep.q)
    alpha2, beta2 = alpha_beta_from_gamma(A, B, gamma, rep.q)
    central = True
    for name, z in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("alpha'", alpha2), ("beta'", beta2)):
        for gname, g in (("A", A), ("B", B), ("C", C)):
            if not cut(commutator(z, g)).is_zero():
                central = False
                failures.append(f"[{name}, {gname}] != 0")
    forms_agree = cut(alpha - alpha2).is_zero() and cut(beta - beta2).is_zero()
    if not forms_agree:
        failures.append("alpha/beta forms disagree")

    scalars = tuple(cut(z).scalar_value() if w > 0 else None for z in (alpha, beta, gamma))
    scalar = all(s is not None for s in scalars)
    matches = None
    if rep.central is not None and require_scalar and w > 0:
        matches = scalars == tuple(rep.central)
        if not matches:
            failures.append("central scalars differ from the expected omega values")
    elif require_scalar and not scalar:
        matches = False
        failures.append("central elements are not scalar")

    cubic = cut(cubic_residual(A, B, rep.q)).is_zero()
    if not cubic:
        failures.append("cubic relation residual nonzero")
    return RelationReport(central, forms_agree, scalars, scalar, matches, cubic, rep.window, failures)


# -- the group {+-1}^2 x| S3 -----------------------------------------------

_ID = (0, 1, 2)
SIGMA = (2, 1, 0)
TAU = (1, 0, 2)


def _compose(g, h):
    return (g[h[0]], g[h[1]], g[h[2]])


def _perm_inverse(g):
    out = [0, 0, 0]
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def _is_odd(g):
    return sum(1 for i in range(3) for j in range(i + 1, 3) if g[i] > g[j]) % 2 == 1


def _sign_pattern(s0, s1):
    # inversion pattern on (a, b, c): (-1, 1) inverts a and c, (1, -1) inverts b and c
    return (s0, s1, s0 * s1)


def _signs_from_pattern(p):
    return p[0], p[1]


@dataclass(frozen=True)
class GroupElem24:
    """``(sign0, sign1, perm)``; ``perm`` acts on triples by ``t^g[i] = t[g[i]]``."""

    sign0: int = 1
    sign1: int = 1
    perm: tuple = _ID

    def __post_init__(self):
        if self.sign0 not in (1, -1) or self.sign1 not in (1, -1):
            raise PreconditionError("signs must be +1 or -1")
        if sorted(self.perm) != [0, 1, 2]:
            raise PreconditionError("perm must be a permutation of (0, 1, 2)")
        object.__setattr__(self, "perm", tuple(self.perm))

    def __mul__(self, other):
        gi = _perm_inverse(self.perm)
        p = _sign_pattern(other.sign0, other.sign1)
        moved = tuple(p[gi[i]] for i in range(3))
        s0, s1 = _signs_from_pattern(moved)
        return GroupElem24(self.sign0 * s0, self.sign1 * s1, _compose(self.perm, other.perm))

    def inverse(self):
        for h in GROUP24:
            if (self * h).is_identity():
                return h
        raise AssertionError("unreachable")

    def is_identity(self):
        return self.sign0 == 1 and self.sign1 == 1 and self.perm == _ID

    def in_v4(self):
        return self.sign1 == 1 and self.perm in (_ID, SIGMA)

    def word(self):
        """Canonical generator word (shortest, generators tried in fixed order)."""
        return _WORDS[self]

    def permute(self, triple):
        g = self.perm
        return (triple[g[0]], triple[g[1]], triple[g[2]])

    def label(self):
        names = {_ID: "1", SIGMA: "s", TAU: "t", (1, 2, 0): "st", (2, 0, 1): "ts", (0, 2, 1): "sts"}
        return f"({self.sign0:+d},{self.sign1:+d},{names[self.perm]})"

    def to_json(self):
        return {"sign0": self.sign0, "sign1": self.sign1, "perm": list(self.perm)}

    @classmethod
    def parse(cls, text):
        """Parse ``"s0,s1,perm"`` where perm is a word in ``s``/``t`` or digits."""
        parts = [p.strip() for p in text.strip("() ").split(",")]
        if len(parts) != 3:
            raise PreconditionError(f"malformed group element {text!r}")
        s0, s1 = int(parts[0]), int(parts[1])
        w = parts[2]
        if w.isdigit() and len(w) == 3:
            return cls(s0, s1, tuple(int(ch) for ch in w))
        g = _ID
        for ch in "" if w in ("1", "id", "") else w:
            if ch not in "st":
                raise PreconditionError(f"unknown permutation letter {ch!r}")
            g = _compose(g, SIGMA if ch == "s" else TAU)
        return cls(s0, s1, g)


E1 = GroupElem24(-1, 1, _ID)
E2 = GroupElem24(1, -1, _ID)
SIG = GroupElem24(1, 1, SIGMA)
TAU_ELEM = GroupElem24(1, 1, TAU)
GENERATORS = {"e1": E1, "e2": E2, "s": SIG, "t": TAU_ELEM}


def _all_words():
    words = {GroupElem24(): ()}
    queue = deque([GroupElem24()])
    while queue:
        g = queue.popleft()
        for name, s in GENERATORS.items():
            h = g * s
            if h not in words:
                words[h] = words[g] + (name,)
                queue.append(h)
    return words


_WORDS = _all_words()
GROUP24 = tuple(sorted(_WORDS, key=lambda g: (len(_WORDS[g]), _WORDS[g])))
V4 = tuple(g for g in GROUP24 if g.in_v4())


def _act_generator(name, t):
    Q, X, Y, Z = t
    if name == "e1":
        return (Q, ONE / X, Y, ONE / Z)
    if name == "e2":
        return (Q, X, ONE / Y, ONE / Z)
    if name == "s":
        return (ONE / Q, ONE / Z, ONE / Y, ONE / X)
    if name == "t":
        return (ONE / Q, ONE / Y, ONE / X, ONE / Z)
    raise PreconditionError(f"unknown generator {name!r}")


def act_on_tuple(word_or_elem, t):
    """Right action on ``(q^eps; a, b, c)`` along a generator word."""
    word = word_or_elem.word() if isinstance(word_or_elem, GroupElem24) else word_or_elem
    t = tuple(gr(x) for x in t)
    for name in word:
        t = _act_generator(name, t)
    return t


def _generator_transition(name, n, t):
    Q, X, Y, Z = t
    size = n + 1
    if name == "e1":
        return build_transition("E", size, SymbolArgs.specialized(n, Q, X, Y, Z))
    if name == "s":
        return build_transition("S", size, SymbolArgs.specialized(n, Q, X, Y, Z))
    if name == "e2":
        return build_transition("F", size, SymbolArgs.specialized(n, Q, X, ONE / Y, Z))
    if name == "t":
        P = build_transition("P", size, SymbolArgs.specialized(n, Q, X, Y, Z))
        return P @ build_transition("E", size, SymbolArgs.specialized(n, ONE / Q, Y))
    raise PreconditionError(f"unknown generator {name!r}")


def transition_for_word(params, word):
    """Product of the generator transitions along ``word``; returns (matrix, tuple)."""
    t = (params.q, params.a, params.b, params.c)
    total = ExactMatrix.identity(params.n + 1)
    for name in word:
        total = total @ _generator_transition(name, params.n, t)
        t = _act_generator(name, t)
    return total, t


def change_basis24(params, g, word=None, check_irreducible=True):
    """Transition to the basis indexed by ``g`` and the conjugated ``(A, B, C)``.

    Returns ``(P, (A', B', C'), target)`` where ``target`` is the
    transformed tuple ``(Q; X, Y, Z)``.  In the new basis the matrices of
    ``(A, B, C)^g`` equal ``L(Q; X)``, ``U(Q; X, Y, Z)``, ``T(Q; X, Y, Z)``.
    """
    if not params.specialized:
        raise PreconditionError("the 24 bases live on V_n; lambda must be q^n")
    word = g.word() if word is None else tuple(word)
    needs_irreducible = any(w in ("e2", "t") for w in word)
    if needs_irreducible and check_irreducible and not g.in_v4():
        from .classify import irreducible_criterion

        if not irreducible_criterion(params):
            raise PreconditionError("V_n(a, b, c) is reducible; only the Klein subgroup bases exist")
    rep = vn_module(params)
    P, target = transition_for_word(params, word)
    try:
        conj = rep.conjugate(P)
    except ZeroDivisionError:
        raise PreconditionError("transition matrix is singular") from None
    return P, conj.matrices, target


def expected_forms(n, target):
    Q, X, Y, Z = target
    return build_rep(n + 1, SymbolArgs.specialized(n, Q, X, Y, Z))


def orbit_key(a, b, c):
    """Canonical representative of ``(a, b, c)`` under coordinatewise inversion."""
    out = []
    for x in (a, b, c):
        x = gr(x)
        if not x:
            raise PreconditionError("orbit entries must be nonzero")
        xi = ONE / x
        out.append(x if x.key() >= xi.key() else xi)
    return tuple(out)


def sign_orbit(a, b, c):
    """All eight triples obtained by inverting any subset of coordinates."""
    a, b, c = gr(a), gr(b), gr(c)
    choices = [(x, ONE / x) for x in (a, b, c)]
    return [tuple(t) for t in product(*choices)]
