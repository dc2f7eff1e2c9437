"""Univariate Laurent polynomials in q over Q or a prime field F_p.

An element is stored densely as ``q**low * (c0 + c1 q + ... + cd q**d)``
with ``c0`` and ``cd`` nonzero.  The zero polynomial has no coefficients.
Coefficients are ints or Fractions over Q, and reduced ints when ``p > 0``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["LaurentPoly", "laurent_normalize", "laurent_gcd", "Q", "qpow"]


def _inv(c, p):
    if p:
        return pow(c, -1, p)
    return Fraction(1) / c


def _clean(c):
    # keep integral Fractions as ints so that hashes and printing stay tidy
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    __slots__ = ("low", "coeffs", "p", "_hash")

    def __init__(self, coeffs=(), low=0, p=0):
        if isinstance(coeffs, dict):
            if not coeffs:
                coeffs, low = (), 0
            else:
                lo, hi = min(coeffs), max(coeffs)
                coeffs, low = [coeffs.get(e, 0) for e in range(lo, hi + 1)], lo
        cs = [(_clean(c) % p if p else _clean(c)) for c in coeffs]
        i, j = 0, len(cs)
        while i < j and not cs[i]:
            i += 1
        while j > i and not cs[j - 1]:
            j -= 1
        self.coeffs = tuple(cs[i:j])
        self.low = low + i if self.coeffs else 0
        self.p = p
        self._hash = None

    @classmethod
    def _raw(cls, coeffs, low, p):
        # coeffs already trimmed and reduced
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.low = low if coeffs else 0
        obj.p = p
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, p=0):
        return cls((c,), 0, p)

    @classmethod
    def monomial(cls, c, e, p=0):
        return cls((c,), e, p)

    # ---- basic queries -------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_unit(self):
        return len(self.coeffs) == 1

    def norm(self):
        """Euclidean norm: the span of exponents (``-1`` for zero)."""
        return len(self.coeffs) - 1

    def valuation(self):
        return self.low

    def degree(self):
        return self.low + len(self.coeffs) - 1

    def terms(self):
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def lead(self):
        return self.coeffs[-1]

    # ---- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly((other,), 0, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        p = self.p
        lo = min(self.low, other.low)
        hi = max(self.degree(), other.degree())
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs, self.low - lo):
            out[i] = c
        for i, c in enumerate(other.coeffs, other.low - lo):
            out[i] += c
        return LaurentPoly(out, lo, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        if p:
            return LaurentPoly._raw(tuple((-c) % p for c in self.coeffs), self.low, p)
        return LaurentPoly._raw(tuple(-c for c in self.coeffs), self.low, p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentPoly._raw((), 0, self.p)
        p = self.p
        low = self.low + other.low
        if len(b) == 1:
            a, b = b, a
        if len(a) == 1:
            c = a[0]
            if p:
                return LaurentPoly._raw(tuple(c * x % p for x in b), low, p)
            return LaurentPoly._raw(tuple(_clean(c * x) for x in b), low, p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return LaurentPoly(out, low, p)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            return LaurentPoly((_inv(self.coeffs[0], self.p) ** -n,), self.low * n, self.p)
        out = LaurentPoly.const(1, self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, j):
        """Multiply by q**j."""
        return LaurentPoly._raw(self.coeffs, self.low + j, self.p)

    def scale(self, c):
        return self * c

    def inverse_unit(self):
        if not self.is_unit():
            raise ZeroDivisionError("not a unit: %s" % self)
        return LaurentPoly._raw((_clean(_inv(self.coeffs[0], self.p)),), -self.low, self.p)

    def divmod(self, other):
        """Euclidean division: ``self = quo*other + rem`` with ``rem.norm() < other.norm()``."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        p = self.p
        if not self.coeffs:
            return self, self
        if len(other.coeffs) == 1:
            return self * other.inverse_unit(), LaurentPoly._raw((), 0, p)
        # work with honest polynomials A = q^-low(self), B = q^-low(other)
        rem = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv_lead = _inv(b[-1], p)
        nq = len(rem) - db
        if nq <= 0:
            return LaurentPoly._raw((), 0, p), self
        quo = [0] * nq
        for i in range(nq - 1, -1, -1):
            c = rem[i + db]
            if not c:
                continue
            c = c * inv_lead
            if p:
                c %= p
            quo[i] = c
            for j in range(db + 1):
                rem[i + j] -= c * b[j]
                if p:
                    rem[i + j] %= p
        q = LaurentPoly(quo, self.low - other.low, p)
        r = LaurentPoly(rem[:db], self.low, p)
        return q, r

    def __floordiv__(self, other):
        other = self._coerce(other)
        return self.divmod(other)[0]

    def __mod__(self, other):
        other = self._coerce(other)
        return self.divmod(other)[1]

    def divexact(self, other):
        other = self._coerce(other)
        quo, rem = self.divmod(other)
        if rem:
            raise ArithmeticError("%s does not divide %s" % (other, self))
        return quo

    def divides(self, other):
        """True if self divides other."""
        if not self.coeffs:
            return not other.coeffs
        return not other.divmod(self)[1]

    def __truediv__(self, c):
        if isinstance(c, LaurentPoly):
            return self.divexact(c)
        return self * _inv(c, self.p)

    # ---- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs and self.low == other.low
        if isinstance(other, (int, Rational)):
            if not other:
                return not self.coeffs
            return self.low == 0 and len(self.coeffs) == 1 and self.coeffs[0] == (other % self.p if self.p else other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.low == 0 and len(self.coeffs) <= 1:
                self._hash = hash(self.coeffs[0] if self.coeffs else 0)
            else:
                self._hash = hash((self.low, self.coeffs))
        return self._hash

    # ---- evaluation and transforms ------------------------------------
    def at_one(self):
        s = sum(self.coeffs)
        return _clean(s % self.p if self.p else s)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low:
            acc = acc * (Fraction(x) ** self.low if not self.p else pow(x, self.low, self.p))
        return _clean(acc % self.p if self.p else acc)

    def bar(self):
        """The involution q -> q^-1."""
        return LaurentPoly._raw(tuple(reversed(self.coeffs)), -self.degree(), self.p) if self.coeffs else self

    def val_at_one(self):
        """Multiplicity of the root q = 1 (the (q-1)-adic valuation)."""
        if not self.coeffs:
            raise ValueError("valuation of zero")
        cs = list(self.coeffs)
        v = 0
        p = self.p
        while True:
            # synthetic division by (q - 1)
            acc, out = 0, []
            for c in reversed(cs):
                acc = acc + c
                if p:
                    acc %= p
                out.append(acc)
            if acc:
                return v
            out.pop()
            cs = list(reversed(out))
            v += 1

    def normalize(self):
        """Return ``(unit, monic)`` with ``self == unit * monic`` and monic having low exponent 0."""
        if not self.coeffs:
            return LaurentPoly.const(1, self.p), self
        lead = self.coeffs[-1]
        inv = _inv(lead, self.p)
        if self.p:
            cs = tuple(c * inv % self.p for c in self.coeffs)
        else:
            cs = tuple(_clean(c * inv) for c in self.coeffs)
        return LaurentPoly._raw((lead,), self.low, self.p), LaurentPoly._raw(cs, 0, self.p)

    # ---- printing ------------------------------------------------------
    def __repr__(self):
        return "LaurentPoly(%s)" % self

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.degree(), self.low - 1, -1):
            c = self.coeffs[e - self.low]
            if not c:
                continue
            sign = "-" if (not self.p and c < 0) else "+"
            a = -c if sign == "-" else c
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else "q^%d" % e
                body = mono if a == 1 else "%s*%s" % (a, mono)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += " %s %s" % (sign, body)
        return s


def Q(p=0):
    """The generator q."""
    return LaurentPoly._raw((1,), 1, p)


def qpow(j, c=1, p=0):
    return LaurentPoly((c,), j, p)


def laurent_normalize(f):
    """The associate of ``f`` that is monic with lowest exponent 0."""
    return f.normalize()[1]


def laurent_gcd(a, b):
    while b:
        a, b = b, a.divmod(b)[1]
    return laurent_normalize(a)
