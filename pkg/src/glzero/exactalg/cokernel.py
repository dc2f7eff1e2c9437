"""Cokernels of large sparse presentation matrices over K[q, q^-1].

The relation matrices met in practice are huge but almost every column has
a unit entry (a monomial c*q^j).  Pivoting on those is an exact change of
generators, so we first run a sparse Schur-complement elimination on unit
pivots and only hand the small leftover block to the dense Smith normal form.

The elimination is recorded so that any generator (row) can be written in
the coordinates of the free part of the cokernel, and so that free basis
vectors can be lifted back to combinations of generators.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .laurent import laurent_gcd, laurent_normalize
from .matrix import LaurentRing, MatrixL, smith_normal_form

__all__ = ["SparseCokernel", "field_rank"]


class SparseCokernel:
    """Free part of ``coker(M)`` for ``M`` given by sparse columns.

    ``columns`` is an iterable of dicts ``{row: LaurentPoly}``; rows are
    integers ``0..nrows-1``.  With ``saturate`` a column without unit
    entries is divided by the gcd of its entries.  That leaves the free part
    unchanged (it depends only on the saturation of the column span) but
    makes ``torsion`` incomplete; the removed factors are kept in ``content``.
    """

    def __init__(self, nrows, columns, ring, saturate=False):
        self.nrows = nrows
        self.ring = ring
        self.saturate = saturate
        self.content = []
        cols = {}
        rowidx = [set() for _ in range(nrows)]
        for cid, col in enumerate(columns):
            col = {r: v for r, v in col.items() if v}
            if not col:
                continue
            cols[cid] = col
            for r in col:
                rowidx[r].add(cid)
        self._eliminate(cols, rowidx)

    def _eliminate(self, cols, rowidx):
        ring = self.ring
        alive = [True] * self.nrows
        order = []          # eliminated rows, in order
        expr = {}           # row -> {row': coeff}: e_row = sum coeff * e_row'
        heap = [(len(c), cid) for cid, c in cols.items()]
        heapq.heapify(heap)
        stale_len = {cid: len(c) for cid, c in cols.items()}
        while heap:
            ln, cid = heapq.heappop(heap)
            col = cols.get(cid)
            if col is None or stale_len.get(cid) != ln:
                continue
            units = [r for r, v in col.items() if len(v.coeffs) == 1]
            if not units and self.saturate:
                g = _content(col.values())
                if not g.is_unit():
                    # only the saturation of the column span matters for the free part
                    self.content.append(g)
                    for r in col:
                        col[r] = col[r].divexact(g)
                    units = [r for r, v in col.items() if len(v.coeffs) == 1]
            if not units:
                continue
            r0 = min(units, key=lambda r: (len(rowidx[r]), r))
            u = col[r0]
            uinv = u.inverse_unit()
            # e_r0 = -uinv * sum_{r != r0} col[r] e_r
            e = {r: -(v * uinv) for r, v in col.items() if r != r0}
            expr[r0] = e
            order.append(r0)
            alive[r0] = False
            del cols[cid]
            del stale_len[cid]
            for r in col:
                rowidx[r].discard(cid)
            for cid2 in list(rowidx[r0]):
                c2 = cols[cid2]
                f = c2.pop(r0) * uinv
                rowidx[r0].discard(cid2)
                # Schur step: c2 -= f * col, which clears row r0
                for r, v in col.items():
                    if r == r0:
                        continue
                    old = c2.get(r)
                    new = (old - f * v) if old is not None else -(f * v)
                    if new:
                        c2[r] = new
                        rowidx[r].add(cid2)
                    elif old is not None:
                        del c2[r]
                        rowidx[r].discard(cid2)
                if c2:
                    stale_len[cid2] = len(c2)
                    heapq.heappush(heap, (len(c2), cid2))
                else:
                    del cols[cid2]
                    del stale_len[cid2]
            rowidx[r0] = set()
        self.order = order
        self.expr = expr
        self.alive = [r for r in range(self.nrows) if alive[r]]
        self._finish(cols)

    def _finish(self, cols):
        ring = self.ring
        alive = self.alive
        pos = {r: i for i, r in enumerate(alive)}
        rest = list(cols.values())
        M = MatrixL(len(alive), len(rest), ring)
        for j, col in enumerate(rest):
            for r, v in col.items():
                M.a[pos[r]][j] = v
        snf = smith_normal_form(M, transforms=True)
        rho = snf.rank
        self.torsion = [d for d in snf.divisors if not ring.is_unit(d)]
        self.free_rank = len(alive) - rho
        f = self.free_rank
        Ufree = snf.U.a[rho:]
        # projection of every row to free coordinates
        proj = {}
        for r, i in pos.items():
            proj[r] = tuple(Ufree[k][i] for k in range(f))
        zero = ring.zero
        for r0 in reversed(self.order):
            acc = [zero] * f
            for r, c in self.expr[r0].items():
                pr = proj[r]
                for k in range(f):
                    if pr[k]:
                        acc[k] = acc[k] + c * pr[k]
            proj[r0] = tuple(acc)
        self.proj = proj
        # lifts: column rho+k of U^-1, as combination of alive rows
        self.lifts = []
        for k in range(f):
            col = {}
            for i, r in enumerate(alive):
                v = snf.Uinv.a[i][rho + k]
                if v:
                    col[r] = v
            self.lifts.append(col)
        self.U_rows = Ufree
        self.pos = pos

    def project(self, vec):
        """Free coordinates of ``sum vec[r] e_r`` (``vec`` a dict)."""
        zero = self.ring.zero
        acc = [zero] * self.free_rank
        for r, c in vec.items():
            pr = self.proj[r]
            for k in range(self.free_rank):
                if pr[k]:
                    acc[k] = acc[k] + c * pr[k]
        return acc


def _content(values):
    g = None
    for v in values:
        g = v if g is None else laurent_gcd(g, v)
        if g.is_unit():
            break
    return laurent_normalize(g)


def field_rank(rows, p=0):
    """Rank of a matrix over Q (p = 0) or F_p; rows are lists or dicts."""
    work = []
    for r in rows:
        d = dict(enumerate(r)) if not isinstance(r, dict) else dict(r)
        d = {j: (v % p if p else v) for j, v in d.items() if (v % p if p else v)}
        if d:
            work.append(d)
    rank = 0
    pivots = {}
    for d in work:
        # reduce against existing pivots
        while d:
            j = min(d)
            if j not in pivots:
                break
            prow = pivots[j]
            c = d[j]
            for jj, v in prow.items():
                nv = d.get(jj, 0) - c * v
                if p:
                    nv %= p
                if nv:
                    d[jj] = nv
                else:
                    d.pop(jj, None)
        if not d:
            continue
        j = min(d)
        inv = pow(d[j], -1, p) if p else Fraction(1) / d[j]
        prow = {jj: (v * inv % p if p else v * inv) for jj, v in d.items()}
        pivots[j] = prow
        rank += 1
    return rank
