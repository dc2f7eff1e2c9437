"""Young diagrams, Schur polynomials and a few identities between them.

Polynomials here are small and exact: a ``SymPoly`` is a dict from exponent
tuples to Fractions over an ordered alphabet of variable names.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

from .exactalg import LaurentPoly

__all__ = [
    "YoungDiagram", "BoxBound", "SymPoly", "complement", "transpose", "dual",
    "schur_eval", "schur_tableaux", "schur_bialternant", "lr_coeffs",
    "quantum_int", "quantum_factorial", "quantum_binom", "identity_check_2_1_to_2_3",
    "partitions_in_box", "partitions_of", "elementary", "box_sum",
]


class YoungDiagram(tuple):
    """Weakly decreasing tuple of positive row lengths."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts if x)
        if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("not a partition: %r" % (parts,))
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def fits(self, bound):
        a, b = bound
        return len(self) <= b and (not self or self[0] <= a)

    def contains(self, other):
        return len(other) <= len(self) and all(x <= y for x, y in zip(other, self))

    def __repr__(self):
        return "YoungDiagram(%s)" % (tuple(self),)


BoxBound = tuple  # (a, b): at most a columns and b rows


def _check(lam, bound):
    if not YoungDiagram(lam).fits(bound):
        raise ValueError("%r does not fit in box%r" % (tuple(lam), tuple(bound)))


def complement(lam, bound):
    lam = YoungDiagram(lam)
    _check(lam, bound)
    a, b = bound
    rows = list(lam) + [0] * (b - len(lam))
    return YoungDiagram(a - r for r in reversed(rows))


def transpose(lam):
    lam = YoungDiagram(lam)
    if not lam:
        return lam
    return YoungDiagram(sum(1 for r in lam if r > i) for i in range(lam[0]))


def dual(lam, bound):
    """Transpose of the complement; it fits in the transposed box."""
    return transpose(complement(lam, bound))


def partitions_in_box(a, b):
    out = []

    def rec(prefix, maxpart):
        out.append(YoungDiagram(prefix))
        if len(prefix) == b:
            return
        for x in range(1, maxpart + 1):
            rec(prefix + [x], x)

    rec([], a)
    return out


def partitions_of(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        return [YoungDiagram()]
    out = []
    for x in range(min(n, maxpart), 0, -1):
        for rest in partitions_of(n - x, x):
            out.append(YoungDiagram((x,) + tuple(rest)))
    return out


# ---- polynomials ----------------------------------------------------------------

class SymPoly:
    """Polynomial with rational coefficients over a named ordered alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None):
        self.alphabet = tuple(alphabet)
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[tuple(m)] = Fraction(c)

    @classmethod
    def const(cls, alphabet, c):
        return cls(alphabet, {(0,) * len(alphabet): c})

    @classmethod
    def var(cls, alphabet, name):
        alphabet = tuple(alphabet)
        m = [0] * len(alphabet)
        m[alphabet.index(name)] = 1
        return cls(alphabet, {tuple(m): 1})

    def _same(self, other):
        if isinstance(other, SymPoly):
            if other.alphabet != self.alphabet:
                raise ValueError("alphabet mismatch")
            return other
        return SymPoly.const(self.alphabet, other)

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SymPoly(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.alphabet, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return SymPoly(self.alphabet, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = SymPoly.const(self.alphabet, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            other = SymPoly.const(self.alphabet, other)
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def constant(self):
        return self.terms.get((0,) * len(self.alphabet), Fraction(0))

    def subs(self, values):
        """Evaluate at a point given as a dict name -> number."""
        vals = [Fraction(values[a]) for a in self.alphabet]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def rename(self, mapping, alphabet=None):
        """Substitute variables by variables (mapping name -> name)."""
        alphabet = tuple(alphabet or self.alphabet)
        pos = {a: i for i, a in enumerate(alphabet)}
        out = {}
        for m, c in self.terms.items():
            v = [0] * len(alphabet)
            for a, e in zip(self.alphabet, m):
                if e:
                    v[pos[mapping.get(a, a)]] += e
            v = tuple(v)
            out[v] = out.get(v, 0) + c
        return SymPoly(alphabet, out)

    def extend(self, alphabet):
        return self.rename({}, alphabet)

    def is_symmetric(self, among=None):
        among = list(among or self.alphabet)
        for a, b in zip(among, among[1:]):
            if self.rename({a: b, b: a}) != self:
                return False
        return True

    def divide_linear(self, i, j):
        """Exact quotient by (x_i - x_j); raises if the division is not exact."""
        n = len(self.alphabet)
        # group by exponent of x_i
        by_rest = {}
        for m, c in self.terms.items():
            rest = m[:i] + (0,) + m[i + 1:]
            by_rest.setdefault(m[i], {})[rest] = c
        if not by_rest:
            return self
        top = max(by_rest)
        quo = {}
        carry = {}
        for e in range(top, 0, -1):
            cur = dict(by_rest.get(e, {}))
            for rest, c in carry.items():
                # multiply carry by x_j
                r = list(rest)
                r[j] += 1
                r = tuple(r)
                cur[r] = cur.get(r, 0) + c
            cur = {r: c for r, c in cur.items() if c}
            for rest, c in cur.items():
                m = list(rest)
                m[i] = e - 1
                quo[tuple(m)] = c
            carry = cur
        rem = dict(by_rest.get(0, {}))
        for rest, c in carry.items():
            r = list(rest)
            r[j] += 1
            r = tuple(r)
            rem[r] = rem.get(r, 0) + c
        if any(rem.values()):
            raise ArithmeticError("not divisible by (%s - %s)" % (self.alphabet[i], self.alphabet[j]))
        return SymPoly(self.alphabet, quo)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(a if e == 1 else "%s^%d" % (a, e) for a, e in zip(self.alphabet, m) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts)


# ---- Schur polynomials ------------------------------------------------------------

def _ssyt(shape, n):
    """Semistandard tableaux of the given shape with entries 0..n-1."""
    cells = [(r, c) for r, ln in enumerate(shape) for c in range(ln)]
    filling = {}

    def rec(k):
        if k == len(cells):
            yield dict(filling)
            return
        r, c = cells[k]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, n):
            filling[(r, c)] = v
            yield from rec(k + 1)
        filling.pop((r, c), None)

    yield from rec(0)


def schur_tableaux(lam, alphabet):
    lam = YoungDiagram(lam)
    alphabet = tuple(alphabet)
    n = len(alphabet)
    out = {}
    if len(lam) > n:
        return SymPoly(alphabet)
    for T in _ssyt(lam, n):
        m = [0] * n
        for v in T.values():
            m[v] += 1
        m = tuple(m)
        out[m] = out.get(m, 0) + 1
    return SymPoly(alphabet, out)


def _det_poly(M, alphabet):
    n = len(M)
    if n == 0:
        return SymPoly.const(alphabet, 1)
    total = SymPoly(alphabet)
    for perm in permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = SymPoly.const(alphabet, sign)
        for r in range(n):
            term = term * M[r][perm[r]]
        total = total + term
    return total


def schur_bialternant(lam, alphabet):
    """s_lambda = det(x_i^(lambda_j + n - j)) / det(x_i^(n - j))."""
    lam = YoungDiagram(lam)
    alphabet = tuple(alphabet)
    n = len(alphabet)
    if len(lam) > n:
        return SymPoly(alphabet)
    parts = list(lam) + [0] * (n - len(lam))
    xs = [SymPoly.var(alphabet, a) for a in alphabet]
    num = _det_poly([[xs[i] ** (parts[j] + n - 1 - j) for j in range(n)] for i in range(n)], alphabet)
    # divide by the Vandermonde product prod_{i<j} (x_i - x_j)
    for i in range(n):
        for j in range(i + 1, n):
            num = num.divide_linear(i, j)
    return num


def schur_eval(lam, alphabet, method="tableaux"):
    if method == "tableaux":
        return schur_tableaux(lam, alphabet)
    if method == "bialternant":
        return schur_bialternant(lam, alphabet)
    raise ValueError("unknown method %r" % method)


def elementary(r, alphabet):
    return schur_tableaux([1] * r, alphabet)


def _leading(poly):
    """Dominance-largest exponent (lex order on exponent tuples)."""
    return max(poly.terms)


def lr_coeffs(lam, mu):
    """Littlewood-Richardson coefficients by expanding s_lam * s_mu."""
    lam, mu = YoungDiagram(lam), YoungDiagram(mu)
    n = lam.size + mu.size
    alphabet = tuple("z%d" % i for i in range(max(n, 1)))
    prod = schur_tableaux(lam, alphabet) * schur_tableaux(mu, alphabet)
    out = {}
    while not prod.is_zero():
        m = _leading(prod)
        nu = YoungDiagram(m)
        c = prod.terms[m]
        out[nu] = int(c)
        prod = prod - schur_tableaux(nu, alphabet) * c
    return out


# ---- quantum numbers ---------------------------------------------------------------

def quantum_int(k, p=0):
    if k < 0:
        raise ValueError("quantum integer of a negative number")
    return LaurentPoly({e: 1 for e in range(-k + 1, k, 2)}, 0, p)


def quantum_factorial(k, p=0):
    out = LaurentPoly((1,), 0, p)
    for i in range(1, k + 1):
        out = out * quantum_int(i, p)
    return out


def quantum_binom(n, k, p=0):
    if k < 0 or k > n:
        raise ValueError("need 0 <= k <= n")
    return quantum_factorial(n, p).divexact(quantum_factorial(k, p) * quantum_factorial(n - k, p))


# ---- identities ---------------------------------------------------------------------

def identity_check_2_1_to_2_3(lam, X, Y, Z, bound=None, detail=False):
    """Check the splitting identities for Schur polynomials on disjoint alphabets.

    With c the Littlewood-Richardson coefficients c^lam_{ab}:

    * s_lam(X u Z) = sum c s_a(X) s_b(Z)
    * s_lam(X) = sum c (-1)^|b| s_a(X u Z) s_{b^t}(Z)
    * sum c (-1)^|b| s_a(X) s_{b^t}(Y) = sum c (-1)^|b| s_a(X u Z) s_{b^t}(Y u Z)

    and, when ``bound`` = (a, b) is given, the box version
    sum_{al in T(a,b)} (-1)^|dual al| s_al(X) s_{dual al}(Y), which is again
    unchanged when Z is added to both alphabets.  Returns a bool, or a dict
    of the individual results with ``detail``.
    """
    lam = YoungDiagram(lam)
    X, Y, Z = tuple(X), tuple(Y), tuple(Z)
    if set(X) & set(Y) or set(X) & set(Z) or set(Y) & set(Z):
        raise ValueError("alphabets must be disjoint")
    alphabet = X + Y + Z

    def s(mu, alpha):
        return schur_tableaux(mu, alpha).extend(alphabet)

    coeffs = _lr_splits(lam)
    res = {}
    rhs = SymPoly(alphabet)
    for (a, b), c in coeffs.items():
        rhs = rhs + s(a, X) * s(b, Z) * c
    res["split"] = s(lam, X + Z) == rhs

    lhs = SymPoly(alphabet)
    for (a, b), c in coeffs.items():
        lhs = lhs + s(a, X + Z) * s(transpose(b), Z) * (c * (-1) ** b.size)
    res["cancel"] = lhs == s(lam, X)

    def supersum(A, B):
        out = SymPoly(alphabet)
        for (a, b), c in coeffs.items():
            out = out + s(a, A) * s(transpose(b), B) * (c * (-1) ** b.size)
        return out

    res["super"] = supersum(X, Y) == supersum(X + Z, Y + Z)
    if bound is not None:
        res["box"] = box_sum(bound, X, Y, alphabet) == box_sum(bound, X + Z, Y + Z, alphabet)
    return res if detail else all(res.values())


def _lr_splits(lam):
    """c^lam_{ab} for all a, b contained in lam."""
    out = {}
    subs = [nu for n in range(lam.size + 1) for nu in partitions_of(n) if lam.contains(nu)]
    for a in subs:
        for b in subs:
            if a.size + b.size != lam.size:
                continue
            c = lr_coeffs(a, b).get(lam, 0)
            if c:
                out[(a, b)] = c
    return out


def box_sum(bound, X, Y, alphabet=None):
    """sum over al in T(a, b) of (-1)^|dual al| s_al(X) s_{dual al}(Y)."""
    alphabet = tuple(alphabet or (tuple(X) + tuple(Y)))
    out = SymPoly(alphabet)
    for al in partitions_in_box(*bound):
        d = dual(al, bound)
        out = out + (schur_tableaux(al, X).extend(alphabet)
                     * schur_tableaux(d, Y).extend(alphabet) * (-1) ** d.size)
    return out


def random_instance(rng, max_size=4, max_alpha=3):
    n = rng.randint(0, max_size)
    parts = partitions_of(n)
    lam = rng.choice(parts)
    sizes = [rng.randint(0, max_alpha) for _ in range(3)]
    names = iter("abcdefghijklmnop")
    X, Y, Z = ([next(names) for _ in range(s)] for s in sizes)
    return lam, X, Y, Z
