"""Gilmore spaces of annular webs and their torsion-free quotients.

A polynomial in the thin-edge variables is a dict mapping exponent tuples
to Laurent coefficients.  The presentation has local relations at trace
vertices, at the marking and at dumbbells, plus one non-local relation per
coherent cycle.

Computation goes in two stages.  Linear relations with a unit coefficient
are solved for one variable and substituted everywhere; that is a ring
isomorphism, so nothing is lost.  The remaining relations are expanded
degree by degree into sparse presentation matrices whose cokernels are the
graded pieces.  Over a field K the kernel of the map to Laurent series is
exactly the torsion, so qAG in each degree is the free part.  Since the
quotient tensored with K(q) is generated in degree one, the first degree
whose free part vanishes ends the computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .exactalg import LaurentPoly, LaurentRing, MatrixL, SparseCokernel
from .exactalg.cokernel import _content
from .webs import AnnularWeb, coherent_cycles

__all__ = [
    "Relation", "RelationSet", "local_relations", "nonlocal_relations", "all_relations",
    "GradedModulePresentation", "graded_presentation", "QagSpace", "qag_space", "ag_at_q1",
    "unzip_matrix", "zip_matrix", "edge_map", "clear_cache",
]


# ---- polynomials in edge variables ---------------------------------------

def _unit_vec(n, i):
    v = [0] * n
    v[i] = 1
    return tuple(v)


def var(n, i, ring):
    return {_unit_vec(n, i): ring.one}


def padd(a, b, c=None):
    """a + c*b (in place on a copy)."""
    out = dict(a)
    for m, v in b.items():
        if c is not None:
            v = v * c
        w = out.get(m)
        w = v if w is None else w + v
        if w:
            out[m] = w
        else:
            out.pop(m, None)
    return out


def pmul(a, b):
    out = {}
    for m1, v1 in a.items():
        for m2, v2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            w = out.get(m)
            w = v1 * v2 if w is None else w + v1 * v2
            if w:
                out[m] = w
            else:
                del out[m]
    return out


def pdeg(a):
    degs = {sum(m) for m in a}
    if len(degs) > 1:
        raise ValueError("inhomogeneous polynomial")
    return degs.pop() if degs else None


def monomial_poly(n, idxs, coeff):
    v = [0] * n
    for i in idxs:
        v[i] += 1
    return {tuple(v): coeff}


# ---- relations -------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    kind: str       # trace, marking, dumbbell-linear, dumbbell-quadratic, nonlocal
    poly: dict = field(compare=False, hash=False)
    label: tuple = ()

    @property
    def degree(self):
        return pdeg(self.poly)


@dataclass
class RelationSet:
    nvars: int
    relations: list

    def by_kind(self, kind):
        return [r for r in self.relations if r.kind == kind]

    def __len__(self):
        return len(self.relations)


def local_relations(w, ring=LaurentRing(0)):
    n = w.nedges
    q2 = LaurentPoly((1,), 2, ring.p)
    rels = []
    for h in range(1, w.k + 1):
        e_in, e_out = w.trace[h]
        if h == w.marking:
            rels.append(Relation("marking", var(n, e_out, ring), (h,)))
        else:
            rels.append(Relation("trace", padd(var(n, e_out, ring), var(n, e_in, ring), -q2), (h,)))
    for d in w.dumbbells:
        lin = {}
        for e, c in ((d.out_lo, 1), (d.out_hi, 1), (d.in_lo, -1), (d.in_hi, -1)):
            lin = padd(lin, var(n, e, ring), ring.coerce(c))
        rels.append(Relation("dumbbell-linear", lin, (d.level,)))
        quad = padd(monomial_poly(n, (d.out_lo, d.out_hi), ring.one),
                    monomial_poly(n, (d.in_lo, d.in_hi), ring.one), -ring.one)
        rels.append(Relation("dumbbell-quadratic", quad, (d.level,)))
    return RelationSet(n, rels)


def nonlocal_relations(w, cycles=None, ring=LaurentRing(0)):
    n = w.nedges
    if cycles is None:
        cycles = coherent_cycles(w)
    rels = []
    for z in cycles:
        coeff = LaurentPoly((1,), 2 * z.enclosed, ring.p)
        poly = padd(monomial_poly(n, z.crossed_out, ring.one),
                    monomial_poly(n, z.crossed_in, ring.one), -coeff)
        if poly:
            rels.append(Relation("nonlocal", poly, (z.height, z.path)))
    return RelationSet(n, rels)


def all_relations(w, ring=LaurentRing(0)):
    loc = local_relations(w, ring)
    nl = nonlocal_relations(w, ring=ring)
    return RelationSet(w.nedges, loc.relations + nl.relations)


# ---- linear elimination --------------------------------------------------------

class _Reduced:
    """Relations after solving unit-coefficient linear relations.

    With ``saturate`` every relation is first divided by the gcd of its
    coefficients.  If c*f lies in the ideal then f is torsion, so this keeps
    the torsion-free quotient intact while discarding torsion early.

    ``subst[v]`` expresses original variable v as a linear form
    ``{remaining index: coeff}`` in the remaining variables.
    """

    def __init__(self, relset, ring, saturate=True):
        self.ring = ring
        n = relset.nvars
        linear = []
        others = []
        for r in relset.relations:
            if r.degree == 1:
                linear.append({m.index(1): c for m, c in r.poly.items()})
            else:
                others.append(r.poly)
        solved = {}   # var -> linear form in other vars (not yet fully resolved)
        pending = linear
        while True:
            progress = False
            rest = []
            for form in pending:
                form = self._resolve(form, solved)
                if not form:
                    continue
                unit = [v for v, c in form.items() if c.is_unit()]
                if not unit and saturate:
                    g = _content(form.values())
                    form = {v: c.divexact(g) for v, c in form.items()}
                    unit = [v for v, c in form.items() if c.is_unit()]
                if not unit:
                    rest.append(form)
                    continue
                v0 = min(unit)
                inv = form[v0].inverse_unit()
                sol = {v: -(c * inv) for v, c in form.items() if v != v0}
                # keep solved forms fully resolved
                for v, f in list(solved.items()):
                    if v0 in f:
                        solved[v] = self._resolve(f, {v0: sol})
                solved[v0] = sol
                progress = True
            pending = rest
            if not progress:
                break
        self.remaining = [v for v in range(n) if v not in solved]
        pos = {v: i for i, v in enumerate(self.remaining)}
        self.pos = pos
        r = len(self.remaining)
        self.nvars = r
        self.subst = {}
        for v in range(n):
            if v in solved:
                self.subst[v] = {pos[u]: c for u, c in solved[v].items()}
            else:
                self.subst[v] = {pos[v]: ring.one}
        self.relations = []
        seen = set()
        for form in pending:
            poly = self.linear_poly(self._resolve(form, solved), original=True)
            self._add(poly, seen)
        for poly in others:
            poly = self.substitute(poly)
            if saturate and poly:
                g = _content(poly.values())
                poly = {m: c.divexact(g) for m, c in poly.items()}
            self._add(poly, seen)

    @staticmethod
    def _resolve(form, solved):
        out = {}
        for v, c in form.items():
            if v in solved:
                for u, d in solved[v].items():
                    w = out.get(u)
                    w = c * d if w is None else w + c * d
                    if w:
                        out[u] = w
                    else:
                        del out[u]
            else:
                w = out.get(v)
                w = c if w is None else w + c
                if w:
                    out[v] = w
                else:
                    del out[v]
        return out

    def _add(self, poly, seen):
        if not poly:
            return
        key = tuple(sorted((m, v.low, v.coeffs) for m, v in poly.items()))
        if key in seen:
            return
        seen.add(key)
        self.relations.append(poly)

    def linear_poly(self, form, original=False):
        out = {}
        r = self.nvars
        for v, c in form.items():
            i = self.pos[v] if original else v
            out[_unit_vec(r, i)] = c
        return out

    def substitute(self, poly):
        """Rewrite a polynomial in original variables in the remaining ones."""
        out = {}
        cache = {}
        for m, c in poly.items():
            term = {tuple([0] * self.nvars): c}
            for v, e in enumerate(m):
                for _ in range(e):
                    lin = cache.get(v)
                    if lin is None:
                        lin = cache[v] = self.linear_poly(self.subst[v])
                    term = pmul(term, lin)
            out = padd(out, term)
        return out


# ---- graded presentation and qAG ----------------------------------------------

def monomials(nvars, p):
    out = []
    for combo in combinations_with_replacement(range(nvars), p):
        v = [0] * nvars
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return out


@dataclass
class GradedModulePresentation:
    web: AnnularWeb
    nvars: int
    basis: dict          # p -> list of monomials in the remaining variables
    columns: dict        # p -> list of sparse columns {row: coeff}
    reduced: object = field(repr=False, default=None)

    def qdeg(self, p):
        return self.web.qdeg(p)

    def matrix(self, p):
        rows = len(self.basis[p])
        cols = self.columns[p]
        M = MatrixL(rows, len(cols), self.reduced.ring)
        for j, col in enumerate(cols):
            for i, v in col.items():
                M.a[i][j] = v
        return M


def _degree_columns(red, p, basis_index):
    cols = []
    for g in red.relations:
        e = pdeg(g)
        if e > p:
            continue
        for m in monomials(red.nvars, p - e):
            col = {}
            for gm, c in g.items():
                row = basis_index[tuple(a + b for a, b in zip(m, gm))]
                col[row] = c
            cols.append(col)
    return cols


def graded_presentation(w, degree_bound, ring=LaurentRing(0)):
    """Presentation matrices in polynomial degrees 0..degree_bound."""
    red = _Reduced(all_relations(w, ring), ring, saturate=False)
    basis, columns = {}, {}
    for p in range(degree_bound + 1):
        basis[p] = monomials(red.nvars, p)
        index = {m: i for i, m in enumerate(basis[p])}
        columns[p] = _degree_columns(red, p, index)
    return GradedModulePresentation(w, red.nvars, basis, columns, red)


@dataclass
class QagDegree:
    p: int
    basis: list              # monomials (rows)
    index: dict
    cok: SparseCokernel

    @property
    def rank(self):
        return self.cok.free_rank


class QagSpace:
    """Free parts of the graded pieces of the Gilmore space of a web."""

    def __init__(self, w, degree_bound=None, ring=LaurentRing(0)):
        self.web = w
        self.ring = ring
        if degree_bound is None:
            degree_bound = 2 * w.nedges
        self.degree_bound = degree_bound
        self.connected = _connected(w)
        self.reduced = _Reduced(all_relations(w, ring), ring) if self.connected else None
        self.degrees = {}
        self.truncated = False
        if not self.connected:
            return
        red = self.reduced
        for p in range(degree_bound + 1):
            basis = monomials(red.nvars, p)
            index = {m: i for i, m in enumerate(basis)}
            cok = SparseCokernel(len(basis), _degree_columns(red, p, index), ring, saturate=True)
            if cok.free_rank == 0:
                break
            self.degrees[p] = QagDegree(p, basis, index, cok)
        else:
            self.truncated = True

    def rank(self, p):
        d = self.degrees.get(p)
        return d.rank if d else 0

    def ranks(self):
        return {p: d.rank for p, d in self.degrees.items()}

    def total_rank(self):
        return sum(self.ranks().values())

    def graded_dims(self):
        return {self.web.qdeg(p): r for p, r in self.ranks().items() if r}

    @property
    def torsion(self):
        return {p: d.cok.torsion for p, d in self.degrees.items()}

    def project(self, poly):
        """Free coordinates of a homogeneous polynomial in the remaining variables."""
        p = pdeg(poly)
        d = self.degrees.get(p)
        if d is None or p is None:
            return None, []
        vec = {d.index[m]: c for m, c in poly.items()}
        return p, d.cok.project(vec)

    def lift(self, p, i):
        d = self.degrees[p]
        return {d.basis[r]: c for r, c in d.cok.lifts[i].items()}


def _connected(w):
    from .webs import components
    return components(w) == 1


_CACHE = {}


def clear_cache():
    _CACHE.clear()


def qag_space(w, degree_bound=None, ring=LaurentRing(0)):
    """Cached by web shape: webs with equal keys share edge indexing."""
    key = (w.key, degree_bound, ring.p)
    space = _CACHE.get(key)
    if space is None:
        space = QagSpace(w, degree_bound, ring)
        _CACHE[key] = space
    if space.web is not w:
        view = object.__new__(QagSpace)
        view.__dict__.update(space.__dict__)
        view.web = w
        return view
    return space


def ag_at_q1(w, degree_bound=None, ring=LaurentRing(0)):
    """Graded dimensions of qAG tensored down to q = 1 (quantum degree -> dim)."""
    return qag_space(w, degree_bound, ring).graded_dims()


# ---- maps between webs ------------------------------------------------------------

def edge_map(src, dst):
    """Send each thin edge of src to the thin edge of dst running through the same place.

    Used for both unzip (dst has fewer vertices, edges merge) and zip (dst has
    more; any piece works modulo the relations once multiplied by the zip factor).
    """
    out = {}
    for e in src.edges:
        t = min(e.cover, key=lambda t: (t - e.start) % (src.n + 1))
        out[e.index] = dst.edge_covering(e.height, t)
    return out


class _Transport:
    """Image of a polynomial under a variable map followed by dst substitution."""

    def __init__(self, src_space, dst_space, emap, factor=None):
        self.src = src_space
        self.dst = dst_space
        ring = dst_space.ring
        dred = dst_space.reduced
        sred = src_space.reduced
        # original src variable -> polynomial in dst remaining vars
        self.orig = {v: dred.linear_poly(dred.subst[emap[v]]) for v in emap}
        # src remaining variable index -> image
        self.rem = {i: self.orig[v] for v, i in sred.pos.items()} if sred else {}
        self.factor = factor
        self.memo = {tuple([0] * (sred.nvars if sred else 0)): {tuple([0] * dred.nvars): ring.one}}

    def image_monomial(self, m):
        got = self.memo.get(m)
        if got is not None:
            return got
        j = max(i for i, e in enumerate(m) if e)
        prev = list(m)
        prev[j] -= 1
        got = pmul(self.image_monomial(tuple(prev)), self.rem[j])
        self.memo[m] = got
        return got

    def image(self, poly, original=False):
        out = {}
        for m, c in poly.items():
            if original:
                term = {tuple([0] * self.dst.reduced.nvars): c}
                for v, e in enumerate(m):
                    for _ in range(e):
                        term = pmul(term, self.orig[v])
            else:
                term = {mm: c * v for mm, v in self.image_monomial(m).items()}
            out = padd(out, term)
        if self.factor is not None:
            out = pmul(out, self.factor)
        return out


def _map_matrices(src_space, dst_space, emap, factor, check=True):
    """Matrices per source degree p of the induced map on free parts."""
    ring = src_space.ring
    mats = {}
    if not src_space.connected or not dst_space.connected:
        for p, d in src_space.degrees.items():
            pd = p + (1 if factor is not None else 0)
            mats[p] = MatrixL(dst_space.rank(pd), d.rank, ring)
        return mats
    tr = _Transport(src_space, dst_space, emap, factor)
    if check:
        rels = all_relations(src_space.web, ring).relations
        for r in rels:
            img = tr.image(r.poly, original=True)
            if not img:
                continue
            _, coords = dst_space.project(img)
            if any(coords):
                raise ArithmeticError("relation %s of %r does not map into the relations of %r"
                                      % (r.kind, src_space.web, dst_space.web))
    for p, d in src_space.degrees.items():
        pd = p + (1 if factor is not None else 0)
        rows = dst_space.rank(pd)
        M = MatrixL(rows, d.rank, ring)
        if rows:
            for i in range(d.rank):
                img = tr.image(src_space.lift(p, i))
                if not img:
                    continue
                _, coords = dst_space.project(img)
                for r, c in enumerate(coords):
                    M.a[r][i] = c
        mats[p] = M
    return mats


def unzip_matrix(src, dst, degree_bound=None, ring=LaurentRing(0), check=True):
    """Unzip along a crossing: the dumbbell of src is smoothed in dst."""
    S = qag_space(src, degree_bound, ring)
    D = qag_space(dst, degree_bound, ring)
    return _map_matrices(S, D, edge_map(src, dst), None, check)


def zip_factor(space, level):
    d = space.web.dumbbell_at(level)
    red = space.reduced
    ring = space.ring
    a = red.linear_poly(red.subst[d.out_hi])
    b = red.linear_poly(red.subst[d.in_lo])
    return padd(a, b, -ring.one)


def zip_matrix(src, dst, level, degree_bound=None, ring=LaurentRing(0), check=True):
    """Zip at ``level``: multiply by (x_a - x_d) on the new dumbbell of dst."""
    S = qag_space(src, degree_bound, ring)
    D = qag_space(dst, degree_bound, ring)
    fac = zip_factor(D, level) if D.connected else {}
    return _map_matrices(S, D, edge_map(src, dst), fac, check)
