from itertools import product

import pytest

from glzero.webs import (AnnularWeb, BraidParseError, coherent_cycles, components, cube, edge_sign,
                         parse_braid, resolve, web_from_heights)


def test_parse_examples():
    b = parse_braid("1 1 1", 2)
    assert (b.n_pos, b.n_neg, b.n) == (3, 0, 3) and b.is_knot()
    f8 = parse_braid("1 -2 1 -2", 3)
    assert f8.letters == (1, -2, 1, -2) and f8.is_knot()
    u = parse_braid("", 1)
    assert u.n == 0 and u.is_knot()
    assert not parse_braid("1 1", 2).is_knot()


@pytest.mark.parametrize("text,k", [("0", 2), ("2", 2), ("-3", 3), ("1 a", 2), ("1", 0)])
def test_parse_errors(text, k):
    with pytest.raises(BraidParseError):
        parse_braid(text, k)


def test_resolve_examples():
    b = parse_braid("1 1 1", 2)
    w = resolve(b, (0, 0, 0))
    assert w.s == 3 and components(w) == 1 and w.hdeg == 0
    w = resolve(b, (1, 1, 1))
    assert w.s == 0 and components(w) == 2 and w.hdeg == 3
    w = resolve(parse_braid("1", 2), (0,))
    assert w.s == 1 and components(w) == 1
    # negative crossings singularize at 1
    w = resolve(parse_braid("-1", 2), (1,))
    assert w.s == 1 and w.hdeg == 0
    f8 = parse_braid("1 -2 1 -2", 3)
    assert components(resolve(f8, (0, 1, 0, 1))) == 1


def test_web_structure_invariants():
    for heights in product((1, 2), repeat=4):
        w = web_from_heights(3, heights)
        assert w.nedges == 3 + 2 * w.s
        for d in w.dumbbells:
            ins = {w.edges[d.in_lo].height, w.edges[d.in_hi].height}
            outs = {w.edges[d.out_lo].height, w.edges[d.out_hi].height}
            assert ins == outs == {d.height, d.height + 1}
        # each level's section meets every strand exactly once
        for t in range(w.n + 1):
            assert sorted(w.edges[w.edge_covering(h, t)].height for h in range(1, 4)) == [1, 2, 3]


def test_resolve_is_deterministic():
    b = parse_braid("1 -2 1 -2", 3)
    for bits in product((0, 1), repeat=4):
        assert resolve(b, bits).dump() == resolve(b, bits).dump()


def test_cube_examples():
    verts = cube(parse_braid("1 1 1", 2))
    assert len(verts) == 8 and {v.hdeg for v in verts} == {0, 1, 2, 3}
    assert all(v.qshift == -v.hdeg for v in verts)
    assert all(e.kind == "unzip" for v in verts for e in v.edges)
    verts = cube(parse_braid("-1", 2))
    assert sorted(v.hdeg for v in verts) == [-1, 0]
    assert verts[0].edges[0].kind == "zip"


def test_sign_identity_on_all_two_faces():
    for n in range(1, 9):
        for bits in product((0, 1), repeat=n):
            zeros = [c for c in range(n) if bits[c] == 0]
            for i, c in enumerate(zeros):
                for c2 in zeros[i + 1:]:
                    b1 = bits[:c] + (1,) + bits[c + 1:]
                    b2 = bits[:c2] + (1,) + bits[c2 + 1:]
                    s = edge_sign(bits, c) * edge_sign(b1, c2) + edge_sign(bits, c2) * edge_sign(b2, c)
                    assert s == 0


# ---- coherent cycles against a brute-force walk oracle ---------------------------

def _oracle_cycles(w):
    adj = w.graph()
    marked = ("T", w.k)
    found = set()
    for start in adj:
        if start == marked:
            continue

        def dfs(v, seen, labels):
            for nxt, lab in adj.get(v, ()):
                if nxt == start:
                    found.add(frozenset(labels + [lab]))
                elif nxt not in seen and nxt != marked:
                    dfs(nxt, seen | {nxt}, labels + [lab])

        dfs(start, {start}, [])
    return found


def _labels(z):
    return frozenset(z.path)


def _all_small_webs():
    for k in (1, 2, 3):
        for n in range(5):
            for dbs in product([None] + list(range(1, k)), repeat=n):
                yield AnnularWeb(k, n, [(l, h) for l, h in enumerate(dbs) if h])


def test_cycles_match_oracle():
    count = 0
    for w in _all_small_webs():
        ours = [_labels(z) for z in coherent_cycles(w)]
        assert len(ours) == len(set(ours))
        assert set(ours) == _oracle_cycles(w), w
        count += 1
    assert count >= 100


def test_cycle_examples():
    assert coherent_cycles(web_from_heights(1, ())) == []
    # one dumbbell on two strands: only the cycle through the lower arcs closes up
    zs = coherent_cycles(web_from_heights(2, (1,)))
    assert len(zs) == 1
    w3 = web_from_heights(2, (1, 1, 1))
    assert len(coherent_cycles(w3)) == len(_oracle_cycles(w3))


def test_crossed_edges_are_thin_and_off_the_cycle():
    for w in _all_small_webs():
        for z in coherent_cycles(w):
            on = {e for kind, e in z.path if kind == "thin"}
            for e in z.crossed_in + z.crossed_out:
                assert 0 <= e < w.nedges
                assert e not in on
