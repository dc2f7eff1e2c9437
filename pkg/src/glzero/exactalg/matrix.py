"""Dense matrices over Euclidean domains and the Smith normal form.

Two coefficient rings are supported: the integers (used by the mod-p
Bockstein engine) and Laurent polynomials in q over Q or F_p.  A ring
object supplies the handful of operations the elimination needs, so the
normal-form code itself never looks at the representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import LaurentPoly

__all__ = [
    "IntegerRing", "LaurentRing", "RationalField", "ZZ", "QQ", "LL", "MatrixL", "SnfResult",
    "smith_normal_form", "rank_over_fraction_field", "cokernel_decompose",
]


class IntegerRing:
    name = "ZZ"
    zero = 0
    one = 1

    def coerce(self, a):
        return int(a)

    def is_zero(self, a):
        return a == 0

    def norm(self, a):
        return abs(a)

    def divmod(self, a, b):
        quo, rem = divmod(a, b)
        # symmetric remainder keeps entries small
        if 2 * abs(rem) > abs(b):
            rem -= b
            quo += 1
        return quo, rem

    def is_unit(self, a):
        return a in (1, -1)

    def normalize(self, a):
        return (-1, -a) if a < 0 else (1, a)

    def unit_inverse(self, u):
        return u

    def __repr__(self):
        return "ZZ"


class LaurentRing:
    """K[q, q^-1] with K = Q (p = 0) or F_p."""

    def __init__(self, p=0):
        self.p = p
        self.zero = LaurentPoly((), 0, p)
        self.one = LaurentPoly((1,), 0, p)
        self.name = "Q[q,q^-1]" if not p else "F%d[q,q^-1]" % p

    def coerce(self, a):
        if isinstance(a, LaurentPoly):
            return a
        return LaurentPoly((a,), 0, self.p)

    def is_zero(self, a):
        return not a.coeffs

    def norm(self, a):
        return len(a.coeffs) - 1

    def divmod(self, a, b):
        return a.divmod(b)

    def is_unit(self, a):
        return len(a.coeffs) == 1

    def normalize(self, a):
        return a.normalize()

    def unit_inverse(self, u):
        return u.inverse_unit()

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and other.p == self.p

    def __hash__(self):
        return hash(("L", self.p))

    def __repr__(self):
        return self.name


class RationalField:
    """Q (p = 0) or F_p viewed as a (trivially) Euclidean domain."""

    def __init__(self, p=0):
        self.p = p
        self.zero = 0
        self.one = 1
        self.name = "QQ" if not p else "GF(%d)" % p

    def coerce(self, a):
        if self.p:
            return int(a) % self.p
        return a

    def is_zero(self, a):
        return a == 0

    def norm(self, a):
        return 0

    def divmod(self, a, b):
        if self.p:
            return a * pow(b, -1, self.p) % self.p, 0
        return Fraction(a) / b, 0

    def is_unit(self, a):
        return a != 0

    def normalize(self, a):
        return (a, 1) if a else (1, 0)

    def unit_inverse(self, u):
        return pow(u, -1, self.p) if self.p else Fraction(1) / u

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return self.name


ZZ = IntegerRing()
QQ = RationalField(0)
LL = LaurentRing(0)


class MatrixL:
    """A rows x cols matrix with entries in ``ring`` (list of lists)."""

    def __init__(self, rows, cols, ring=LL, entries=None):
        self.rows, self.cols, self.ring = rows, cols, ring
        if entries is None:
            self.a = [[ring.zero] * cols for _ in range(rows)]
        else:
            self.a = [[ring.coerce(x) for x in r] for r in entries]
            if len(self.a) != rows or any(len(r) != cols for r in self.a):
                raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows, ring=LL, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, ring, rows)

    @classmethod
    def identity(cls, n, ring=LL):
        m = cls(n, n, ring)
        for i in range(n):
            m.a[i][i] = ring.one
        return m

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.a[i][j] = self.ring.coerce(v)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        ring = self.ring
        out = MatrixL(self.rows, other.cols, ring)
        cols_b = [[(k, other.a[k][j]) for k in range(other.rows) if not ring.is_zero(other.a[k][j])]
                  for j in range(other.cols)]
        for i in range(self.rows):
            row = self.a[i]
            for j, col in enumerate(cols_b):
                acc = ring.zero
                for k, b in col:
                    x = row[k]
                    if not ring.is_zero(x):
                        acc = acc + x * b
                out.a[i][j] = acc
        return out

    def transpose(self):
        return MatrixL(self.cols, self.rows, self.ring,
                       [[self.a[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def map(self, fn, ring):
        return MatrixL(self.rows, self.cols, ring, [[fn(x) for x in r] for r in self.a])

    def is_zero(self):
        return all(self.ring.is_zero(x) for r in self.a for x in r)

    def nnz(self):
        return sum(1 for r in self.a for x in r if not self.ring.is_zero(x))

    def submatrix(self, rows, cols):
        return MatrixL(len(rows), len(cols), self.ring, [[self.a[i][j] for j in cols] for i in rows])

    def copy(self):
        return MatrixL(self.rows, self.cols, self.ring, [list(r) for r in self.a])

    def __eq__(self, other):
        return isinstance(other, MatrixL) and self.shape == other.shape and self.a == other.a

    def __repr__(self):
        return "MatrixL(%dx%d over %r)" % (self.rows, self.cols, self.ring)

    def pretty(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.a)


@dataclass
class SnfResult:
    divisors: list
    rank: int
    U: MatrixL | None = None
    V: MatrixL | None = None
    Uinv: MatrixL | None = None
    D: MatrixL | None = field(default=None, repr=False)


def smith_normal_form(M, transforms=True):
    """Smith normal form ``U M V = D`` over the ring of ``M``.

    Pivots are chosen by smallest Euclidean norm, ties going to the entry
    with the fewest nonzeros in its row and column.  Divisors come out
    normalized (positive integers, or monic Laurent polynomials with lowest
    exponent 0) and each divides the next.  With ``transforms`` the result
    also carries ``U``, ``V`` and ``U^-1``.
    """
    ring = M.ring
    m, n = M.rows, M.cols
    A = [list(r) for r in M.a]
    zero, one = ring.zero, ring.one
    isz = ring.is_zero
    if transforms:
        U = [[one if i == j else zero for j in range(m)] for i in range(m)]
        Ui = [[one if i == j else zero for j in range(m)] for i in range(m)]
        V = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in A:
            r[i], r[j] = r[j], r[i]
        if transforms:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        rd, rs = A[dst], A[src]
        for j in range(n):
            if not isz(rs[j]):
                rd[j] = rd[j] + c * rs[j]
        if transforms:
            ud, us = U[dst], U[src]
            for j in range(m):
                if not isz(us[j]):
                    ud[j] = ud[j] + c * us[j]
            # inverse: col_src -= c * col_dst
            for r in Ui:
                if not isz(r[dst]):
                    r[src] = r[src] - c * r[dst]

    def add_col(dst, src, c):
        for r in A:
            if not isz(r[src]):
                r[dst] = r[dst] + c * r[src]
        if transforms:
            for r in V:
                if not isz(r[src]):
                    r[dst] = r[dst] + c * r[src]

    t = 0
    while t < min(m, n):
        # pivot search
        best = None
        rowcnt = [sum(1 for x in A[i][t:] if not isz(x)) for i in range(m)]
        colcnt = [sum(1 for i in range(t, m) if not isz(A[i][j])) for j in range(n)]
        for i in range(t, m):
            if not rowcnt[i]:
                continue
            for j in range(t, n):
                x = A[i][j]
                if isz(x):
                    continue
                key = (ring.norm(x), rowcnt[i] + colcnt[j])
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, i0, j0 = best
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            changed = False
            piv = A[t][t]
            for i in range(t + 1, m):
                if not isz(A[i][t]):
                    quo, rem = ring.divmod(A[i][t], piv)
                    add_row(i, t, -quo)
                    if not isz(rem):
                        changed = True
            if changed:
                k = min((i for i in range(t, m) if not isz(A[i][t])), key=lambda i: ring.norm(A[i][t]))
                swap_rows(t, k)
                continue
            for j in range(t + 1, n):
                if not isz(A[t][j]):
                    quo, rem = ring.divmod(A[t][j], piv)
                    add_col(j, t, -quo)
                    if not isz(rem):
                        changed = True
            if changed:
                k = min((j for j in range(t, n) if not isz(A[t][j])), key=lambda j: ring.norm(A[t][j]))
                swap_cols(t, k)
                continue
            # divisibility of the remaining block
            bad = None
            if not ring.is_unit(piv):
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if not isz(A[i][j]) and not isz(ring.divmod(A[i][j], piv)[1]):
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            add_row(t, bad, one)
        u, d = ring.normalize(A[t][t])
        if not (u == one):
            uinv = ring.unit_inverse(u)
            A[t][t] = d
            if transforms:
                U[t] = [x * uinv for x in U[t]]
                for r in Ui:
                    r[t] = r[t] * u
        t += 1

    divisors = [A[i][i] for i in range(t)]
    res = SnfResult(divisors=divisors, rank=t)
    if transforms:
        res.U = MatrixL(m, m, ring, U)
        res.V = MatrixL(n, n, ring, V)
        res.Uinv = MatrixL(m, m, ring, Ui)
        res.D = MatrixL(m, n, ring, A)
    return res


def rank_over_fraction_field(M):
    return smith_normal_form(M, transforms=False).rank


def cokernel_decompose(M):
    """``(free_rank, torsion_divisors)`` of the cokernel of ``M``."""
    snf = smith_normal_form(M, transforms=False)
    ring = M.ring
    tors = [d for d in snf.divisors if not ring.is_unit(d)]
    return M.rows - snf.rank, tors
