"""Dense exact matrices and polynomials over the Gaussian rationals."""

from fractions import Fraction

import numpy as np

from .errors import OutsideFieldError, PreconditionError
from .scalar import ONE, ZERO, GaussianRational, format_scalar, gr

__all__ = [
    "ExactMatrix",
    "Polynomial",
    "kernel",
    "rank",
    "char_poly",
    "kron",
    "solve",
    "intertwiner_space",
    "intertwiner",
    "exact_roots",
    "exact_eigenvalues",
    "commutator",
    "span_closure",
    "random_unimodular",
]


class ExactMatrix:
    """A dense ``rows x cols`` matrix of :class:`GaussianRational` entries.

    Instances are treated as immutable; every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "_d")

    def __init__(self, data):
        data = [[gr(x) for x in row] for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise PreconditionError("ragged matrix rows")
        self._d = data

    @classmethod
    def _wrap(cls, data, rows, cols):
        m = object.__new__(cls)
        m._d = data
        m.rows = rows
        m.cols = cols
        return m

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values):
        values = [gr(v) for v in values]
        n = len(values)
        d = [[ZERO] * n for _ in range(n)]
        for i, v in enumerate(values):
            d[i][i] = v
        return cls._wrap(d, n, n)

    @classmethod
    def from_columns(cls, columns):
        cols = [c.column(0) if isinstance(c, ExactMatrix) else [gr(x) for x in c] for c in columns]
        if not cols:
            raise PreconditionError("no columns given")
        rows = len(cols[0])
        return cls._wrap([[c[i] for c in cols] for i in range(rows)], rows, len(cols))

    @classmethod
    def column_vector(cls, values):
        return cls._wrap([[gr(v)] for v in values], len(values), 1)

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._d[i][j]

    def row(self, i):
        return list(self._d[i])

    def column(self, j):
        return [row[j] for row in self._d]

    def columns(self):
        return [ExactMatrix._wrap([[row[j]] for row in self._d], self.rows, 1) for j in range(self.cols)]

    def tolist(self):
        return [list(row) for row in self._d]

    def block(self, r0, r1, c0=None, c1=None):
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1`` (defaults to rows)."""
        c0 = r0 if c0 is None else c0
        c1 = r1 if c1 is None else c1
        return ExactMatrix._wrap([row[c0:c1] for row in self._d[r0:r1]], r1 - r0, c1 - c0)

    def window(self, w):
        """Top-left ``w x w`` block."""
        return self.block(0, w, 0, w)

    def map(self, fn):
        return ExactMatrix._wrap([[fn(x) for x in row] for row in self._d], self.rows, self.cols)

    # -- arithmetic -------------------------------------------------------
    def _check_same(self, other):
        if self.shape != other.shape:
            raise PreconditionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return ExactMatrix._wrap(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self._d, other._d)], self.rows, self.cols
        )

    def __sub__(self, other):
        self._check_same(other)
        return ExactMatrix._wrap(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self._d, other._d)], self.rows, self.cols
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, s):
        if isinstance(s, ExactMatrix):
            return NotImplemented
        s = gr(s)
        return self.map(lambda x: x * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        s = gr(s)
        inv = ONE / s
        return self.map(lambda x: x * inv)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        n = other.cols
        bd = other._d
        out = []
        for row in self._d:
            acc = [ZERO] * n
            for k, a in enumerate(row):
                if a:
                    brow = bd[k]
                    for j in range(n):
                        b = brow[j]
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix._wrap(out, self.rows, n)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def add_scalar(self, s):
        """Return ``self + s*I``."""
        s = gr(s)
        d = [list(row) for row in self._d]
        for i in range(min(self.rows, self.cols)):
            d[i][i] = d[i][i] + s
        return ExactMatrix._wrap(d, self.rows, self.cols)

    @property
    def T(self):
        return ExactMatrix._wrap([list(col) for col in zip(*self._d)], self.cols, self.rows)

    def trace(self):
        t = ZERO
        for i in range(min(self.rows, self.cols)):
            t = t + self._d[i][i]
        return t

    # -- predicates -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._d == other._d

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self._d))

    def is_zero(self):
        return not any(x for row in self._d for x in row)

    def scalar_value(self):
        """Return ``s`` if the matrix equals ``s*I``, else ``None``."""
        if self.rows != self.cols:
            return None
        s = self._d[0][0] if self.rows else ZERO
        for i, row in enumerate(self._d):
            for j, x in enumerate(row):
                if (x != s) if i == j else x:
                    return None
        return s

    def is_tridiagonal(self, irreducible=False):
        for i, row in enumerate(self._d):
            for j, x in enumerate(row):
                if abs(i - j) > 1 and x:
                    return False
                if irreducible and abs(i - j) == 1 and not x:
                    return False
        return True

    def is_lower_triangular(self):
        return all(not x for i, row in enumerate(self._d) for j, x in enumerate(row) if j > i)

    def is_upper_triangular(self):
        return all(not x for i, row in enumerate(self._d) for j, x in enumerate(row) if j < i)

    # -- elimination ------------------------------------------------------
    def rref(self):
        """Reduced row echelon form and the list of pivot columns."""
        d = [list(row) for row in self._d]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            best = None
            for i in range(r, self.rows):
                x = d[i][c]
                if x:
                    h = x.height()
                    if best is None or h < best[0]:
                        best = (h, i)
            if best is None:
                continue
            p = best[1]
            d[r], d[p] = d[p], d[r]
            inv = ONE / d[r][c]
            prow = [x * inv if x else ZERO for x in d[r]]
            d[r] = prow
            nz = [j for j in range(c, self.cols) if prow[j]]
            for i in range(self.rows):
                if i != r:
                    f = d[i][c]
                    if f:
                        row = d[i]
                        for j in nz:
                            row[j] = row[j] - f * prow[j]
            pivots.append(c)
            r += 1
        return ExactMatrix._wrap(d, self.rows, self.cols), pivots

    def rank(self):
        return len(self.rref()[1])

    def inverse(self):
        if self.rows != self.cols:
            raise PreconditionError("inverse of a non-square matrix")
        n = self.rows
        aug = ExactMatrix._wrap(
            [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self._d)], n, 2 * n
        )
        red, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.block(0, n, n, 2 * n)

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def det(self):
        """Determinant by fraction-carrying elimination."""
        if self.rows != self.cols:
            raise PreconditionError("determinant of a non-square matrix")
        d = [list(row) for row in self._d]
        n = self.rows
        det = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if d[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                d[c], d[p] = d[p], d[c]
                det = -det
            det = det * d[c][c]
            inv = ONE / d[c][c]
            for i in range(c + 1, n):
                f = d[i][c] * inv
                if f:
                    for j in range(c, n):
                        d[i][j] = d[i][j] - f * d[c][j]
        return det

    # -- conversion -------------------------------------------------------
    def to_numpy(self):
        return np.array([[complex(x) for x in row] for row in self._d], dtype=complex).reshape(self.rows, self.cols)

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [format_scalar(x) for row in self._d for x in row],
        }

    @classmethod
    def from_json(cls, obj):
        r, c = obj["rows"], obj["cols"]
        entries = obj["entries"]
        if len(entries) != r * c:
            raise PreconditionError("entry count does not match rows*cols")
        return cls([[entries[i * c + j] for j in range(c)] for i in range(r)])

    def __repr__(self):
        body = "; ".join(", ".join(format_scalar(x) for x in row) for row in self._d)
        return f"ExactMatrix([{body}])"


def commutator(x, y):
    return x @ y - y @ x


def rank(m):
    return m.rank()


def kernel(m):
    """Basis of the null space of ``m`` as a list of column matrices."""
    red, piv = m.rref()
    free = [j for j in range(m.cols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(piv):
            v[p] = -red[r, f]
        basis.append(ExactMatrix.column_vector(v))
    return basis


def solve(a, b):
    """Solve ``a @ x == b`` for ``x``; ``a`` must have full column rank.

    Raises ``ValueError`` if the system is inconsistent.
    """
    if a.rows != b.rows:
        raise PreconditionError("row count mismatch")
    n, k = a.cols, b.cols
    aug = ExactMatrix._wrap([ra + rb for ra, rb in zip(a._d, b._d)], a.rows, n + k)
    red, piv = aug.rref()
    if any(p >= n for p in piv):
        raise ValueError("inconsistent linear system")
    if len(piv) < n:
        raise PreconditionError("coefficient matrix lacks full column rank")
    return red.block(0, n, n, n + k)


def kron(m, n):
    """Kronecker product with entry ``((i1,i2),(j1,j2)) = m[i1,j1]*n[i2,j2]``."""
    out = []
    for mrow in m._d:
        for nrow in n._d:
            out.append([x * y if x and y else ZERO for x in mrow for y in nrow])
    return ExactMatrix._wrap(out, m.rows * n.rows, m.cols * n.cols)


def char_poly(m):
    """Monic characteristic polynomial ``det(X*I - m)`` (Faddeev-LeVerrier)."""
    if m.rows != m.cols:
        raise PreconditionError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = ExactMatrix.zeros(n)
    for k in range(1, n + 1):
        mk = mk.add_scalar(coeffs[n - k + 1])
        amk = m @ mk
        coeffs[n - k] = -amk.trace() / k
        mk = amk
    return Polynomial(coeffs)


def intertwiner_space(pairs):
    """Basis of ``{M : M @ right == left @ M for (left, right) in pairs}``."""
    size = pairs[0][0].rows
    for left, right in pairs:
        if left.shape != (size, size) or right.shape != (size, size):
            raise PreconditionError("intertwiner inputs must be square of equal size")
    nvar = size * size
    eqs = []
    for left, right in pairs:
        ld, rd = left._d, right._d
        for r in range(size):
            for s in range(size):
                row = [ZERO] * nvar
                for t in range(size):
                    x = rd[t][s]
                    if x:
                        row[r * size + t] = row[r * size + t] + x
                    y = ld[r][t]
                    if y:
                        row[t * size + s] = row[t * size + s] - y
                if any(row):
                    eqs.append(row)
    if not eqs:
        system = ExactMatrix.zeros(1, nvar)
    else:
        system = ExactMatrix._wrap(eqs, len(eqs), nvar)
    out = []
    for v in kernel(system):
        col = v.column(0)
        out.append(ExactMatrix._wrap([col[i * size:(i + 1) * size] for i in range(size)], size, size))
    return out


def _normalize_first(m):
    for row in m._d:
        for x in row:
            if x:
                return m / x
    return m


def intertwiner(a1, b1, a2, b2, *extra):
    """An invertible ``M`` with ``M @ a2 == a1 @ M`` and ``M @ b2 == b1 @ M``.

    Further ``(left, right)`` pairs may be passed in ``extra``.  The result is
    scaled so that its first nonzero entry (row-major) is 1; ``None`` is
    returned when no invertible solution exists.
    """
    basis = intertwiner_space([(a1, a2), (b1, b2), *extra])
    if not basis:
        return None
    candidates = list(basis)
    if len(basis) > 1:
        # generic combinations: the invertible ones form a Zariski-open set
        primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        for shift in range(4):
            combo = ExactMatrix.zeros(basis[0].rows)
            for idx, b in enumerate(basis):
                combo = combo + b * primes[(idx + shift) % len(primes)] ** (shift + 1)
            candidates.append(combo)
    for m in candidates:
        if m.is_invertible():
            return _normalize_first(m)
    return None


def span_closure(vectors, operators):
    """Smallest subspace containing ``vectors`` and stable under ``operators``.

    Returns a list of column matrices forming a basis.
    """
    basis = []
    echelon = []  # rows in reduced form, paired with pivot column

    def add(v):
        col = v.column(0)
        for prow, p in echelon:
            f = col[p]
            if f:
                col = [x - f * y for x, y in zip(col, prow)]
        p = next((i for i, x in enumerate(col) if x), None)
        if p is None:
            return False
        inv = ONE / col[p]
        prow = [x * inv for x in col]
        for k, (other, q) in enumerate(echelon):
            f = other[p]
            if f:
                echelon[k] = ([x - f * y for x, y in zip(other, prow)], q)
        echelon.append((prow, p))
        basis.append(v)
        return True

    queue = []
    for v in vectors:
        if add(v):
            queue.append(v)
    while queue:
        v = queue.pop()
        for op in operators:
            w = op @ v
            if add(w):
                queue.append(w)
    return basis


class Polynomial:
    """Univariate polynomial with scalar coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [gr(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls([ZERO, ONE])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def from_roots(cls, roots):
        p = cls([ONE])
        for r in roots:
            p = p * cls([-gr(r), ONE])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def monic(self):
        lead = self.leading()
        return Polynomial([c / lead for c in self.coeffs])

    def derivative(self):
        return Polynomial([c * k for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [ZERO] * max(len(rem) - other.degree, 1)
        inv = ONE / other.leading()
        while len(rem) - 1 >= other.degree and rem:
            shift = len(rem) - 1 - other.degree
            f = rem[-1] * inv
            q[shift] = f
            for k, c in enumerate(other.coeffs):
                rem[shift + k] = rem[shift + k] - f * c
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial(q), Polynomial(rem)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def squarefree(self):
        g = self.gcd(self.derivative())
        return self.divmod(g)[0].monic()

    def to_json(self):
        return {"coeffs": [format_scalar(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["coeffs"])

    def __repr__(self):
        return f"Polynomial([{', '.join(format_scalar(c) for c in self.coeffs)}])"


def _as_poly(x):
    return x if isinstance(x, Polynomial) else Polynomial([x])


def _rationalize(z, max_den):
    return GaussianRational(
        Fraction(z.real).limit_denominator(max_den), Fraction(z.imag).limit_denominator(max_den)
    )


def exact_roots(p):
    """All distinct roots of ``p`` lying in Q(i).

    Roots of the squarefree part are located numerically, rounded to nearby
    Gaussian rationals and accepted only after exact substitution.  Raises
    :class:`OutsideFieldError` if some root is not recovered.
    """
    if p.degree < 1:
        return []
    sf = p.squarefree()
    coeffs = [complex(c) for c in reversed(sf.coeffs)]
    approx = np.roots(coeffs)
    found = []
    for z in approx:
        for max_den in (10**3, 10**6, 10**9, 10**12):
            r = _rationalize(z, max_den)
            if not sf(r):
                if r not in found:
                    found.append(r)
                break
    if len(found) < sf.degree:
        raise OutsideFieldError(
            f"only {len(found)} of {sf.degree} roots recovered in Q(i)", list(p.coeffs)
        )
    found.sort(key=lambda r: r.key())
    return found


def exact_eigenvalues(m):
    """Distinct eigenvalues of ``m``, all of which must lie in Q(i)."""
    return exact_roots(char_poly(m))


def random_unimodular(size, rng, spread=3):
    """``U @ L`` with unit-triangular factors holding small random integers.

    The determinant is 1, so the result is always invertible.
    """
    U = [[ONE if i == j else (gr(rng.randint(-spread, spread)) if j > i else ZERO) for j in range(size)] for i in range(size)]
    L = [[ONE if i == j else (gr(rng.randint(-spread, spread)) if j < i else ZERO) for j in range(size)] for i in range(size)]
    return ExactMatrix._wrap(U, size, size) @ ExactMatrix._wrap(L, size, size)
