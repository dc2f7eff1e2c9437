"""Braid words, the cube of resolutions, and annular elementary webs.

Layout conventions.  Strands are numbered 1 (innermost) to k (outermost).
Crossing number j of the word sits at level j, and the trace section sits
at level n.  In a resolution every strand keeps its height, so a web is k
concentric circles joined by thick edges ("dumbbells"); a dumbbell at
level l with height h joins strands h and h+1.  Thin edges are the arcs
between consecutive vertices of a strand, where the vertices are the
dumbbell ends and the trace vertex.  The marking sits on the trace vertex
of strand k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

__all__ = [
    "BraidWord", "parse_braid", "Resolution", "ThinEdge", "Dumbbell", "AnnularWeb",
    "resolve", "CubeEdge", "CubeVertex", "cube", "components", "CoherentCycle",
    "coherent_cycles", "web_from_heights",
]


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise BraidParseError("need at least one strand")
        for a in self.letters:
            if a == 0 or abs(a) >= self.strands:
                raise BraidParseError("letter %d out of range for %d strands" % (a, self.strands))

    @property
    def n(self):
        return len(self.letters)

    @property
    def n_pos(self):
        return sum(1 for a in self.letters if a > 0)

    @property
    def n_neg(self):
        return sum(1 for a in self.letters if a < 0)

    def permutation(self):
        """Where each strand position ends up after the braid."""
        perm = list(range(self.strands))
        for a in self.letters:
            i = abs(a) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return perm

    def num_components(self):
        perm = self.permutation()
        seen, count = set(), 0
        for s in range(self.strands):
            if s in seen:
                continue
            count += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
        return count

    def is_knot(self):
        return self.num_components() == 1

    def mirror(self):
        return BraidWord(self.strands, tuple(-a for a in self.letters))

    def __str__(self):
        return " ".join(str(a) for a in self.letters)


def parse_braid(text, strands):
    """Parse whitespace-separated signed integers into a BraidWord."""
    try:
        letters = tuple(int(tok) for tok in str(text).replace(",", " ").split())
    except ValueError as exc:
        raise BraidParseError("braid word must be whitespace-separated integers: %r" % text) from exc
    return BraidWord(int(strands), letters)


@dataclass(frozen=True)
class Resolution:
    bits: tuple

    @property
    def size(self):
        return sum(self.bits)

    def hdeg(self, braid):
        return self.size - braid.n_neg


def is_singular(letter, bit):
    """Positive crossings singularize at 0, negative ones at 1."""
    return (bit == 0) if letter > 0 else (bit == 1)


@dataclass(frozen=True)
class ThinEdge:
    index: int
    height: int
    start: int      # level of the source vertex
    end: int        # level of the target vertex
    cover: frozenset  # half-levels t (meaning t + 1/2) that the arc runs through

    @property
    def name(self):
        return "x%d_%d_%d" % (self.height, self.start, self.end)


@dataclass(frozen=True)
class Dumbbell:
    level: int
    height: int
    in_lo: int
    in_hi: int
    out_lo: int
    out_hi: int


class AnnularWeb:
    """An annular elementary web coming from a braid resolution."""

    def __init__(self, strands, nlevels, dumbbells, hdeg=0):
        self.k = strands
        self.n = nlevels
        self.hdeg = hdeg
        db = sorted(dumbbells)
        if len({l for l, _ in db}) != len(db):
            raise ValueError("at most one dumbbell per level")
        for l, h in db:
            if not (0 <= l < nlevels and 1 <= h < strands):
                raise ValueError("bad dumbbell (%d, %d)" % (l, h))
        n = nlevels
        raw = []
        for h in range(1, strands + 1):
            events = [l for l, hh in db if hh == h or hh + 1 == h] + [n]
            m = len(events)
            for i in range(m):
                a, b = events[i - 1], events[i]
                if m == 1:
                    cover = range(n + 1)
                elif a == n:
                    cover = [n] + list(range(b))
                else:
                    cover = range(a, b)
                raw.append((h, a, b, frozenset(cover)))
        raw.sort(key=lambda e: (e[0], e[1], e[2]))
        self.edges = [ThinEdge(i, h, a, b, c) for i, (h, a, b, c) in enumerate(raw)]
        ends, starts = {}, {}
        for e in self.edges:
            ends[(e.height, e.end)] = e.index
            starts[(e.height, e.start)] = e.index
        self.dumbbells = [
            Dumbbell(l, h, ends[(h, l)], ends[(h + 1, l)], starts[(h, l)], starts[(h + 1, l)])
            for l, h in db
        ]
        self.trace = {h: (ends[(h, n)], starts[(h, n)]) for h in range(1, strands + 1)}

    # -- basic data ------------------------------------------------------
    @property
    def s(self):
        return len(self.dumbbells)

    @property
    def nedges(self):
        return len(self.edges)

    @property
    def marking(self):
        return self.k

    @property
    def heights(self):
        return tuple(d.height for d in self.dumbbells)

    @property
    def key(self):
        """Isomorphism key: edge indices agree for webs with equal keys."""
        return (self.k, self.heights)

    def dumbbell_at(self, level):
        for d in self.dumbbells:
            if d.level == level:
                return d
        return None

    def edge_covering(self, h, t):
        for e in self.edges:
            if e.height == h and t in e.cover:
                return e.index
        raise KeyError((h, t))

    def qdeg(self, p):
        """Quantum degree of a polynomial-degree-p element."""
        return 2 * p - self.s + (self.k - 1) - self.hdeg

    def vertex_of(self, e, side):
        """Graph vertex at the source ('out' side) or target of thin edge e."""
        edge = self.edges[e]
        lvl = edge.start if side == "src" else edge.end
        if lvl == self.n:
            return ("T", edge.height)
        return ("S", lvl) if side == "src" else ("M", lvl)

    def graph(self):
        """Directed adjacency: vertex -> list of (vertex, label)."""
        adj = {}
        for e in self.edges:
            adj.setdefault(self.vertex_of(e.index, "src"), []).append((self.vertex_of(e.index, "dst"), ("thin", e.index)))
        for d in self.dumbbells:
            adj.setdefault(("M", d.level), []).append((("S", d.level), ("thick", d.level)))
        return adj

    def dump(self):
        """Deterministic text description, one line per edge or vertex."""
        lines = ["web k=%d levels=%d hdeg=%d dumbbells=%d" % (self.k, self.n, self.hdeg, self.s)]
        for e in self.edges:
            lines.append("edge %d %s height=%d %d->%d" % (e.index, e.name, e.height, e.start, e.end))
        for d in self.dumbbells:
            lines.append("dumbbell level=%d h=%d in=(%d,%d) out=(%d,%d)"
                         % (d.level, d.height, d.in_lo, d.in_hi, d.out_lo, d.out_hi))
        for h, (a, b) in sorted(self.trace.items()):
            mark = " marked" if h == self.k else ""
            lines.append("trace h=%d in=%d out=%d%s" % (h, a, b, mark))
        return "\n".join(lines)

    def __repr__(self):
        return "AnnularWeb(k=%d, n=%d, dumbbells=%s, hdeg=%d)" % (
            self.k, self.n, [(d.level, d.height) for d in self.dumbbells], self.hdeg)


def web_from_heights(strands, heights, hdeg=0):
    """The web with one dumbbell per level, at the given heights."""
    return AnnularWeb(strands, len(heights), list(enumerate(heights)), hdeg)


def resolve(braid, I):
    bits = I.bits if isinstance(I, Resolution) else tuple(I)
    if len(bits) != braid.n:
        raise ValueError("resolution length does not match the braid")
    dbs = [(j, abs(a)) for j, (a, b) in enumerate(zip(braid.letters, bits)) if is_singular(a, b)]
    return AnnularWeb(braid.strands, braid.n, dbs, sum(bits) - braid.n_neg)


# ---- cube --------------------------------------------------------------

@dataclass(frozen=True)
class CubeEdge:
    source: tuple
    target: tuple
    crossing: int
    sign: int
    kind: str   # "unzip" at positive crossings, "zip" at negative ones


@dataclass
class CubeVertex:
    bits: tuple
    hdeg: int
    qshift: int
    edges: list = field(default_factory=list)


def edge_sign(bits, c):
    return -1 if sum(bits[:c]) % 2 else 1


def cube(braid):
    verts = []
    for bits in product((0, 1), repeat=braid.n):
        h = sum(bits) - braid.n_neg
        v = CubeVertex(bits, h, -h)
        for c in range(braid.n):
            if bits[c] == 0:
                tgt = bits[:c] + (1,) + bits[c + 1:]
                kind = "unzip" if braid.letters[c] > 0 else "zip"
                v.edges.append(CubeEdge(bits, tgt, c, edge_sign(bits, c), kind))
        verts.append(v)
    return verts


def components(w):
    parent = list(range(w.k + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in w.dumbbells:
        parent[find(d.height)] = find(d.height + 1)
    return len({find(h) for h in range(1, w.k + 1)})


# ---- coherent cycles ---------------------------------------------------

@dataclass(frozen=True)
class CoherentCycle:
    height: int           # strand where the cycle crosses the trace section
    path: tuple           # ("thin", e) / ("thick", level) in walking order
    crossed_in: tuple
    crossed_out: tuple
    enclosed: int         # trace vertices inside the region bounded by the push-off

    @property
    def vertices(self):
        return self.path


def coherent_cycles(w):
    """All simple directed cycles avoiding the marking.

    In a planar annular web a vertex-simple cycle is a simple closed curve,
    so it either bounds a disk or winds once.  Disks are impossible because
    every vertex moves forward in level, so each cycle crosses the trace
    section exactly once, at some height below the marked strand.  We walk
    forward from each such trace vertex, branching at every dumbbell met.
    """
    out = []
    by_level = {d.level: d for d in w.dumbbells}
    for h0 in range(1, w.k):
        start_edge = w.trace[h0][1]
        stack = [(0, h0, (("thin", start_edge),), (), ())]
        while stack:
            lvl, cur, path, cin, cout = stack.pop()
            if lvl == w.n:
                if cur == h0:
                    out.append(CoherentCycle(h0, path, tuple(sorted(cin)), tuple(sorted(cout)), h0))
                continue
            d = by_level.get(lvl)
            if d is None or cur not in (d.height, d.height + 1):
                stack.append((lvl + 1, cur, path, cin, cout))
                continue
            entered_low = cur == d.height
            nin = cin + ((d.in_hi,) if entered_low else ())
            for exit_low in (False, True):
                e_out = d.out_lo if exit_low else d.out_hi
                nout = cout + ((d.out_hi,) if exit_low else ())
                ncur = d.height if exit_low else d.height + 1
                npath = path + (("thick", lvl), ("thin", e_out))
                stack.append((lvl + 1, ncur, npath, nin, nout))
    # the first element of each path repeats as the last thin edge on the last strand;
    # drop the duplicated closing edge so each cycle lists every edge once
    cleaned = []
    for z in out:
        path = z.path
        if len(path) > 1 and path[-1] == path[0]:
            path = path[:-1]
        cleaned.append(CoherentCycle(z.height, path, z.crossed_in, z.crossed_out, z.enclosed))
    cleaned.sort(key=lambda z: (z.height, z.path))
    return cleaned
