"""State spaces of annular webs from colorings and evaluations, over Q.

This is an independent route to the gl1 and gl0 state spaces.  Nothing here
uses relations: a decoration is paired with another by summing rational
functions over omnichrome colorings, and a state space is a Gram-matrix
rank.  It is slow but transparent, and the presentation-based spaces in
``gilmore`` are checked against it at q = 1.

Closed-web conventions.  The two thin edges meeting at a trace vertex form
a single edge of the closed annular web, so they share a variable and a
color.  At a split vertex the lower out-edge counts as the left one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from .exactalg import field_rank
from .symfunc import SymPoly

__all__ = [
    "Coloring", "Decoration", "GradedDims", "closed_edges", "omnichrome_colorings",
    "eval_coloring", "eval_infty", "eval_gl1", "gl1_dims", "gl0_dims", "pigments",
    "check_coloring", "brute_force_colorings",
]

GradedDims = dict  # quantum degree -> dimension


def pigments(k):
    return tuple("X%d" % i for i in range(1, k + 1))


@dataclass(frozen=True)
class Coloring:
    """Pigment of every thin edge; thick edges get the union of their ends."""

    thin: tuple          # edge index -> pigment index (0-based)
    k: int

    def of_edge(self, e):
        return frozenset((self.thin[e],))

    def of_dumbbell(self, d):
        return frozenset((self.thin[d.in_lo], self.thin[d.in_hi]))


@dataclass
class Decoration:
    """Monomial on thin edges plus optional symmetric polynomials on thick ones.

    ``thin`` maps an edge index to an exponent; ``thick`` maps a dumbbell
    level to a SymPoly in two variables named ("a", "b").
    """

    thin: dict
    thick: dict = None

    def __post_init__(self):
        self.thin = {e: x for e, x in self.thin.items() if x}
        self.thick = dict(self.thick or {})
        for lvl, f in self.thick.items():
            if not f.is_symmetric():
                raise ValueError("thick-edge decoration at level %d is not symmetric" % lvl)

    @property
    def degree(self):
        d = sum(self.thin.values())
        for f in self.thick.values():
            d += f.degree()
        return d

    def __mul__(self, other):
        thin = dict(self.thin)
        for e, x in other.thin.items():
            thin[e] = thin.get(e, 0) + x
        thick = dict(self.thick)
        for lvl, f in other.thick.items():
            thick[lvl] = thick[lvl] * f if lvl in thick else f
        return Decoration(thin, thick)


def closed_edges(w):
    """Map each thin edge to its representative in the closed web."""
    rep = {e.index: e.index for e in w.edges}
    for h, (ein, eout) in w.trace.items():
        rep[ein] = eout
    return rep


def check_coloring(w, c):
    rep = closed_edges(w)
    k = w.k
    for e, r in rep.items():
        if c.thin[e] != c.thin[r]:
            return False
    for d in w.dumbbells:
        if {c.thin[d.in_lo], c.thin[d.in_hi]} != {c.thin[d.out_lo], c.thin[d.out_hi]}:
            return False
        if c.thin[d.in_lo] == c.thin[d.in_hi]:
            return False
    # every generic section meets each pigment once
    for t in range(w.n + 1):
        cols = [c.thin[w.edge_covering(h, t)] for h in range(1, k + 1)]
        if sorted(cols) != list(range(k)):
            return False
    return True


def omnichrome_colorings(w):
    """All omnichrome colorings, by walking a starting permutation around."""
    k = w.k
    by_level = {d.level: d for d in w.dumbbells}
    out = []
    for perm in permutations(range(k)):
        # perm[h-1] is the pigment of strand h just after the trace section
        states = [(dict(), list(perm))]
        for h in range(1, k + 1):
            states[0][0][w.trace[h][1]] = perm[h - 1]
        for lvl in range(w.n):
            d = by_level.get(lvl)
            if d is None:
                continue
            nxt = []
            for assign, cur in states:
                lo, hi = cur[d.height - 1], cur[d.height]
                for a, b in ((lo, hi), (hi, lo)):
                    na = dict(assign)
                    na[d.out_lo], na[d.out_hi] = a, b
                    nc = list(cur)
                    nc[d.height - 1], nc[d.height] = a, b
                    nxt.append((na, nc))
            states = nxt
        for assign, cur in states:
            if cur != list(perm):
                continue
            thin = [None] * w.nedges
            for e in w.edges:
                # an edge is determined by its strand and the level it starts at
                if e.start == w.n:
                    thin[e.index] = perm[e.height - 1]
                else:
                    thin[e.index] = assign[e.index]
            for h, (ein, eout) in w.trace.items():
                thin[ein] = thin[eout]
            c = Coloring(tuple(thin), k)
            assert check_coloring(w, c)
            out.append(c)
    return out


def brute_force_colorings(w):
    """Exhaustive oracle: try every pigment for every thin edge."""
    from itertools import product
    out = []
    for thin in product(range(w.k), repeat=w.nedges):
        c = Coloring(tuple(thin), w.k)
        if check_coloring(w, c):
            out.append(c)
    return out


def _q_factors(w, c):
    """Q as (sign, {(i, j): multiplicity}) with i < j, over pigment indices."""
    sign, mult = 1, {}
    for d in w.dumbbells:
        left, right = c.thin[d.out_lo], c.thin[d.out_hi]
        i, j = left, right
        if i > j:
            i, j = j, i
            sign = -sign
        mult[(i, j)] = mult.get((i, j), 0) + 1
    return sign, mult


def _p_value(w, T, c, alphabet):
    xs = [SymPoly.var(alphabet, a) for a in alphabet]
    P = SymPoly.const(alphabet, 1)
    for e, x in T.thin.items():
        P = P * xs[c.thin[e]] ** x
    for lvl, f in T.thick.items():
        d = w.dumbbell_at(lvl)
        a, b = sorted(c.of_dumbbell(d))
        P = P * f.rename({"a": alphabet[a], "b": alphabet[b]}, alphabet)
    return P


def eval_coloring(w, T, c):
    """(P, Q) as SymPolys in X1..Xk; the evaluation is P / Q."""
    alphabet = pigments(w.k)
    if not isinstance(T, Decoration):
        T = Decoration(dict(T))
    P = _p_value(w, T, c, alphabet)
    Q = SymPoly.const(alphabet, 1)
    for d in w.dumbbells:
        Q = Q * (SymPoly.var(alphabet, alphabet[c.thin[d.out_lo]])
                 - SymPoly.var(alphabet, alphabet[c.thin[d.out_hi]]))
    return P, Q


def eval_infty(w, T, colorings=None):
    """Sum of P/Q over colorings, as a polynomial; raises if it is not one."""
    alphabet = pigments(w.k)
    if not isinstance(T, Decoration):
        T = Decoration(dict(T))
    if colorings is None:
        colorings = omnichrome_colorings(w)
    data = [(c, _q_factors(w, c)) for c in colorings]
    top = {}
    for _, (_, mult) in data:
        for ij, m in mult.items():
            top[ij] = max(top.get(ij, 0), m)
    num = SymPoly(alphabet)
    xs = [SymPoly.var(alphabet, a) for a in alphabet]
    for c, (sign, mult) in data:
        term = _p_value(w, T, c, alphabet) * sign
        for (i, j), m in top.items():
            extra = m - mult.get((i, j), 0)
            if extra:
                term = term * (xs[i] - xs[j]) ** extra
        num = num + term
    for (i, j), m in top.items():
        for _ in range(m):
            try:
                num = num.divide_linear(i, j)
            except ArithmeticError as exc:
                raise ArithmeticError("infinity-evaluation left a denominator") from exc
    return num


class _Pairing:
    """Cached gl1 evaluations of thin-edge monomials on one web."""

    def __init__(self, w):
        self.w = w
        self.rep = closed_edges(w)
        self.vars = sorted(set(self.rep.values()))
        self.colorings = omnichrome_colorings(w)
        k = w.k
        point = [Fraction(i + 1) for i in range(k)]
        self.terms = []
        for c in self.colorings:
            q = Fraction(1)
            for d in w.dumbbells:
                q *= point[c.thin[d.out_lo]] - point[c.thin[d.out_hi]]
            vals = tuple(point[c.thin[v]] for v in self.vars)
            self.terms.append((vals, 1 / q))
        self._cache = {}

    def value(self, expo):
        """<w, prod x_v^expo_v>_1 for an exponent tuple over ``self.vars``."""
        if sum(expo) != self.w.s:
            # the evaluation is homogeneous of degree (deg T - s)
            return Fraction(0)
        got = self._cache.get(expo)
        if got is None:
            got = Fraction(0)
            for vals, qinv in self.terms:
                t = qinv
                for v, x in zip(vals, expo):
                    if x:
                        t *= v ** x
                got += t
            self._cache[expo] = got
        return got


def eval_gl1(w, T):
    """Constant term of the infinity-evaluation."""
    if not isinstance(T, Decoration):
        T = Decoration(dict(T))
    if T.thick:
        return eval_infty(w, T).constant()
    pr = _Pairing(w)
    expo = [0] * len(pr.vars)
    pos = {v: i for i, v in enumerate(pr.vars)}
    for e, x in T.thin.items():
        expo[pos[pr.rep[e]]] += x
    return pr.value(tuple(expo))


def _monomials(nvars, p):
    out = []
    for combo in combinations_with_replacement(range(nvars), p):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return out


def _gram_ranks(pr, shift_vec, top):
    """Rank of <shift * S; w; T>_1 per degree of S, T ranging over complements."""
    n = len(pr.vars)
    ranks = {}
    for p in range(0, top + 1):
        rest = top - p
        if rest < 0:
            break
        rows = []
        Ts = _monomials(n, rest)
        for S in _monomials(n, p):
            base = tuple(a + b for a, b in zip(S, shift_vec))
            rows.append([pr.value(tuple(a + b for a, b in zip(base, T))) for T in Ts])
        r = field_rank(rows)
        if r:
            ranks[p] = r
    return ranks


def gl1_dims(w, degree_bound=None):
    """Graded dimension of the gl1 state space of a web.

    The key is the quantum degree 2p - s - hdeg of a degree-p decoration.
    """
    pr = _Pairing(w)
    ranks = _gram_ranks(pr, (0,) * len(pr.vars), w.s)
    return {2 * p - w.s - w.hdeg: r for p, r in ranks.items()
            if degree_bound is None or p <= degree_bound}


def gl0_dims(w, degree_bound=None, phi="marked"):
    """Graded dimension of the gl0 state space of a marked web.

    ``phi`` selects the marking endomorphism: ``"marked"`` puts k-1 dots on
    the marked edge, ``"below"`` one dot on each trace edge of strands
    1..k-1.  Keys are quantum degrees 2p - s + (k-1) - hdeg.
    """
    pr = _Pairing(w)
    pos = {v: i for i, v in enumerate(pr.vars)}
    shift = [0] * len(pr.vars)
    if phi == "marked":
        shift[pos[w.trace[w.k][1]]] = w.k - 1
    elif phi == "below":
        for h in range(1, w.k):
            shift[pos[w.trace[h][1]]] += 1
    else:
        raise ValueError("phi must be 'marked' or 'below'")
    ranks = _gram_ranks(pr, tuple(shift), w.s - (w.k - 1))
    return {w.qdeg(p): r for p, r in ranks.items()
            if degree_bound is None or p <= degree_bound}
