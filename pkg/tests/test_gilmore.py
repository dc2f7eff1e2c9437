from itertools import product

from glzero.exactalg import ZZ, LaurentPoly, MatrixL, cokernel_decompose, laurent_normalize, smith_normal_form
from glzero.gilmore import (ag_at_q1, all_relations, graded_presentation, local_relations, nonlocal_relations,
                            padd, pdeg, pmul, qag_space, unzip_matrix, zip_matrix)
from glzero.webs import parse_braid, resolve, web_from_heights

q = LaurentPoly((1,), 1)
one = LaurentPoly((1,), 0)


def _by_kind(w):
    kinds = {}
    for r in local_relations(w).relations:
        kinds[r.kind] = kinds.get(r.kind, 0) + 1
    return kinds


def test_local_relation_tables():
    assert _by_kind(web_from_heights(1, ())) == {"marking": 1}
    assert _by_kind(web_from_heights(2, (1,))) == {"trace": 1, "marking": 1, "dumbbell-linear": 1,
                                                   "dumbbell-quadratic": 1}
    assert _by_kind(web_from_heights(2, ())) == {"trace": 1, "marking": 1}


def test_trace_relation_carries_q_squared():
    w = web_from_heights(2, ())
    (tr,) = [r for r in local_relations(w).relations if r.kind == "trace"]
    ((m, c),) = tr.poly.items()
    assert sum(m) == 1 and c == 1 - q ** 2


def test_relations_are_homogeneous():
    for heights in product((1, 2), repeat=3):
        w = web_from_heights(3, heights)
        for r in all_relations(w).relations:
            degs = {sum(m) for m in r.poly}
            assert len(degs) == 1


def test_disconnected_web_is_torsion():
    w = web_from_heights(2, ())
    (nl,) = nonlocal_relations(w).relations
    assert pdeg(nl.poly) == 0
    assert laurent_normalize(list(nl.poly.values())[0]) == q ** 2 - 1
    G = graded_presentation(w, 2)
    for p in range(3):
        free, tors = cokernel_decompose(G.matrix(p))
        assert free == 0 and tors == [q ** 2 - 1] * len(G.basis[p])
    assert qag_space(w).total_rank() == 0
    assert ag_at_q1(w) == {}


def test_unknot_and_chains():
    S = qag_space(web_from_heights(1, ()))
    assert S.ranks() == {0: 1}
    for k in (2, 3, 4):
        w = web_from_heights(k, tuple(range(1, k)))
        S = qag_space(w)
        assert S.total_rank() == 1 and S.ranks() == {0: 1}
        # generated by the constant polynomial
        assert S.lift(0, 0) == {(): one} or list(S.lift(0, 0)) == [()]


def test_trefoil_vertex_ranks():
    b = parse_braid("1 1 1", 2)
    per_h = {}
    for bits in product((0, 1), repeat=3):
        w = resolve(b, bits)
        dims = ag_at_q1(w)
        per_h.setdefault(w.hdeg, []).append(dims)
    assert per_h[0] == [{2: 1, 0: 2, -2: 1}]
    assert per_h[1] == [{0: 1, -2: 1}] * 3
    assert per_h[2] == [{-2: 1}] * 3
    assert per_h[3] == [{}]


def test_figure_eight_ranks():
    b = parse_braid("1 -2 1 -2", 3)
    totals = {}
    for bits in product((0, 1), repeat=4):
        w = resolve(b, bits)
        for j, d in ag_at_q1(w).items():
            totals.setdefault(w.hdeg, {})
            totals[w.hdeg][j] = totals[w.hdeg].get(j, 0) + d
    assert totals[-1] == {0: 2, 2: 2}
    assert totals[0] == {-2: 1, 0: 7, 2: 1}
    assert totals[1] == {0: 2, -2: 2}


def test_degree_cutoff_is_safe():
    # the free part stays zero beyond the first vanishing degree
    for heights in [(1, 1, 1), (1, 2, 1, 2), (2, 1, 1)]:
        w = web_from_heights(3 if 2 in heights else 2, heights)
        S = qag_space(w)
        top = max(S.ranks()) + 3
        G = graded_presentation(w, top)
        for p in range(top + 1):
            assert cokernel_decompose(G.matrix(p))[0] == S.rank(p)


def test_zip_witness():
    # (x_a - x_d)(x_a - x_c) vanishes at every dumbbell, (x_a - x_d) x_a need not
    w = web_from_heights(3, (1, 2, 1, 2))
    S = qag_space(w)
    assert S.ranks() == {0: 1, 1: 3, 2: 1}
    red = S.reduced

    def x(e):
        return red.linear_poly(red.subst[e])

    nonzero = 0
    for d in w.dumbbells:
        f = pmul(padd(x(d.out_hi), x(d.in_lo), -one), padd(x(d.out_hi), x(d.in_hi), -one))
        assert all(c.is_zero() for c in S.project(f)[1])
        g = pmul(padd(x(d.out_hi), x(d.in_lo), -one), x(d.out_hi))
        if g and any(not c.is_zero() for c in S.project(g)[1]):
            nonzero += 1
    assert nonzero > 0


def test_maps_are_well_defined_and_send_unit_to_unit():
    b = parse_braid("1 -2 1", 3)
    for bits in product((0, 1), repeat=3):
        src = resolve(b, bits)
        for c in range(3):
            if bits[c]:
                continue
            tgt_bits = bits[:c] + (1,) + bits[c + 1:]
            dst = resolve(b, tgt_bits)
            if b.letters[c] > 0:
                mats = unzip_matrix(src, dst, check=True)
                if 0 in mats and qag_space(src).rank(0) and qag_space(dst).rank(0):
                    assert not mats[0].is_zero()
            else:
                mats = zip_matrix(src, dst, c, check=True)
                for p, M in mats.items():
                    assert M.cols == qag_space(src).rank(p)
                    assert M.rows == qag_space(dst).rank(p + 1)
