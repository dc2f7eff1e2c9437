import random
from itertools import product

import pytest

from glzero.exactalg import LL, ZZ, LaurentPoly, MatrixL, smith_normal_form
from glzero.homology import (CubeComplex, DifferentialError, NotAKnotError, alexander_burau, assemble,
                             bockstein_pages, euler_vs_burau, gl0_poincare, homology_table, q1_homology,
                             reduce_complex)
from glzero.reference import REFERENCE
from glzero.webs import parse_braid

q = LaurentPoly((1,), 1)
one = LaurentPoly((1,), 0)


def _chain_ranks(C):
    out = {}
    for (h, _), g in C.gens.items():
        out[h] = out.get(h, 0) + len(g)
    return {h: r for h, r in out.items() if r}


def test_d_squared_vanishes():
    for text, k in [("1 1 1", 2), ("-1 -1 -1", 2), ("1 -2 1 -2", 3), ("1 2 -1 2", 3), ("1 1 -2 1 -2", 3)]:
        assert assemble(parse_braid(text, k), check=False).check_d2()


def test_trefoil_chain_groups_and_blocks():
    C = assemble(parse_braid("1 1 1", 2))
    assert _chain_ranks(C) == {0: 4, 1: 6, 2: 3}
    H = homology_table(C, reduce=False)
    by_h = {}
    for (h, _), ds in H.divisors.items():
        by_h.setdefault(h, []).extend(ds)
    assert len(by_h[0]) == 3 and len(by_h[1]) == 2
    assert all(d == one for ds in by_h.values() for d in ds)
    # the hand-written integer matrices of the two differentials have the same ranks
    d0 = MatrixL.from_rows([[1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0],
                            [0, 0, 1, 0], [0, 1, 1, 0], [0, 1, 0, 0]], ZZ)
    d1 = MatrixL.from_rows([[-1, 1, 0, 0, 0, 0], [-1, 0, 1, 0, 0, 0], [0, -1, 1, 0, 0, 0]], ZZ)
    assert smith_normal_form(d0).divisors == [1, 1, 1]
    assert smith_normal_form(d1).divisors == [1, 1]
    assert d1 @ d0 == MatrixL(3, 4, ZZ)
    mirror = assemble(parse_braid("-1 -1 -1", 2))
    assert _chain_ranks(mirror) == {-2: 3, -1: 6, 0: 4}


@pytest.mark.parametrize("name", ["3_1", "3_1bar", "4_1", "5_1"])
def test_reference_poincare(name):
    e = REFERENCE[name]
    assert gl0_poincare(parse_braid(e.braid, e.strands)) == e.gl0
    assert sum(e.gl0.values()) == e.hfk_total


def test_unknot_and_mirror():
    assert gl0_poincare(parse_braid("", 1)) == {(0, 0): 1}
    assert gl0_poincare(parse_braid("1", 2)) == {(0, 0): 1}
    P = gl0_poincare(parse_braid("1 1 1 1 1", 2))
    Pm = gl0_poincare(parse_braid("-1 -1 -1 -1 -1", 2))
    assert Pm == {(-t, -j): v for (t, j), v in P.items()}


def test_links_are_rejected():
    with pytest.raises(NotAKnotError):
        gl0_poincare(parse_braid("1 1", 2))


def _random_knot_braids(rng, count):
    out = []
    while len(out) < count:
        k = rng.randint(2, 3)
        n = rng.randint(1, 8)
        letters = [rng.choice([1, -1]) * rng.randint(1, k - 1) for _ in range(n)]
        b = parse_braid(" ".join(map(str, letters)), k)
        if b.is_knot():
            out.append(b)
    return out


def test_euler_characteristic_is_alexander():
    for text, k in [("1 1 1", 2), ("1 -2 1 -2", 3), ("", 1)]:
        assert euler_vs_burau(parse_braid(text, k))[0]
    for b in _random_knot_braids(random.Random(17), 10):
        ok, euler, burau, _ = euler_vs_burau(b)
        assert ok, (str(b), euler, burau)


def test_alexander_of_trefoil():
    # Delta = t - 1 + t^-1 with t = q^2, up to units
    a = alexander_burau(parse_braid("1 1 1", 2))
    assert a.terms() == {-2: 1, 0: -1, 2: 1}


# ---- Bockstein pages --------------------------------------------------------

def _two_term(ring, entries, rows, cols):
    gens = {(0, 0): list(range(cols)), (1, 0): list(range(rows))}
    d = {(0, 0): {}}
    for (r, c), v in entries.items():
        if v:
            d[(0, 0)].setdefault(c, {})[r] = v
    return CubeComplex(ring, gens, d)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bockstein_toy_laurent(k):
    C = _two_term(LL, {(0, 0): (q - 1) ** k * (q + 2)}, 1, 1)
    rep = bockstein_pages(C)
    assert [sum(p.values()) for p in rep.pages] == [2] * k + [0]
    assert rep.stabilization == k + 1 and rep.einf == {}


@pytest.mark.parametrize("prime,k", [(2, 1), (2, 3), (3, 2)])
def test_bockstein_toy_integers(prime, k):
    C = _two_term(ZZ, {(0, 0): prime ** k * 5}, 1, 1)
    rep = bockstein_pages(C, prime)
    assert [sum(p.values()) for p in rep.pages] == [2] * k + [0]
    with pytest.raises(ValueError):
        bockstein_pages(C)


def _vec_mod(v, m):
    return tuple(x % m for x in v)


def _apply(M, x):
    return [sum(M[i][j] * x[j] for j in range(len(x))) for i in range(len(M))]


def _oracle_pages(mats, dims, prime, rmax):
    """E_r dims per degree by brute force over Z/p^r.

    ``mats[h]`` is the integer matrix of d: C_h -> C_{h+1}.
    """
    pages = []
    for r in range(1, rmax + 1):
        mod = prime ** r
        page = {}
        for h, n in enumerate(dims):
            Z = set()
            for x in product(range(mod), repeat=n):
                dx = _apply(mats[h], x) if h < len(mats) else []
                if all(v % mod == 0 for v in dx):
                    Z.add(_vec_mod(x, prime))
            B = set()
            if h > 0:
                m = dims[h - 1]
                for y in product(range(mod), repeat=m):
                    dy = _apply(mats[h - 1], y)
                    if all(v % prime ** (r - 1) == 0 for v in dy):
                        B.add(tuple((v // prime ** (r - 1)) % prime for v in dy))
            else:
                B.add(tuple([0] * n))
            size = len(Z) // len(B)
            dim = 0
            while size > 1:
                size //= prime
                dim += 1
            if dim:
                page[h] = dim
        pages.append(page)
    return pages


def _complex_from_mats(mats, dims):
    gens = {(h, 0): list(range(n)) for h, n in enumerate(dims)}
    d = {}
    for h, M in enumerate(mats):
        cols = {}
        for i, row in enumerate(M):
            for j, v in enumerate(row):
                if v:
                    cols.setdefault(j, {})[i] = v
        d[(h, 0)] = cols
    return CubeComplex(ZZ, gens, d)


def _random_toy(rng, prime):
    # d1 d0 = 0 is arranged by a block form conjugated with a unimodular matrix
    a, b = rng.randint(0, 2), rng.randint(0, 2)
    dims = [rng.randint(1, 2), a + b, rng.randint(0, 2)]
    vals = [1, prime, prime ** 2, prime * 3, 2 * prime ** 2]
    d0 = [[rng.choice(vals) if i < a and rng.random() < 0.7 else 0 for j in range(dims[0])]
          for i in range(a + b)]
    d1 = [[rng.choice(vals) if j >= a and rng.random() < 0.7 else 0 for j in range(a + b)]
          for i in range(dims[2])]
    n = a + b
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Uinv = [row[:] for row in U]
    for _ in range(3):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        # U <- E U,  Uinv <- Uinv E^-1, with E = I + c e_ij
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for row in Uinv:
            row[j] -= c * row[i]
    d0 = [[sum(U[i][t] * d0[t][j] for t in range(n)) for j in range(dims[0])] for i in range(n)]
    d1 = [[sum(d1[i][t] * Uinv[t][j] for t in range(n)) for j in range(n)] for i in range(dims[2])]
    return [d0, d1], dims


def test_bockstein_matches_literal_oracle():
    rng = random.Random(4)
    checked = 0
    for _ in range(25):
        prime = rng.choice([2, 3])
        mats, dims = _random_toy(rng, prime)
        C = _complex_from_mats(mats, dims)
        C.check_d2()
        rep = bockstein_pages(C, prime)
        rmax = min(rep.stabilization + 1, 3 if prime == 2 else 2)
        oracle = _oracle_pages(mats, dims, prime, rmax)
        for r in range(1, rmax + 1):
            ours = {}
            page = rep.pages[r - 1] if r <= len(rep.pages) else rep.einf
            for (h, _), v in page.items():
                ours[h] = ours.get(h, 0) + v
            assert ours == oracle[r - 1], (mats, r)
        checked += 1
    assert checked == 25


def test_pages_are_monotone_and_drop_in_pairs():
    for text, k in [("1 1 1", 2), ("1 -2 1 -2", 3), ("1 1 1 1 1", 2)]:
        C = assemble(parse_braid(text, k))
        rep = bockstein_pages(C)
        totals = [sum(p.values()) for p in rep.pages]
        assert totals == sorted(totals, reverse=True)
        assert all((a - b) % 2 == 0 for a, b in zip(totals, totals[1:]))
        assert rep.e1 == q1_homology(C)
        assert rep.pages[-1] == rep.einf


def test_homology_table_torsion():
    C = _two_term(LL, {(0, 0): q - 1, (1, 1): one}, 2, 2)
    H = homology_table(C)
    assert H.free == {(0, 0): 0, (1, 0): 0}
    assert H.torsion[(1, 0)] == [q - 1]


def test_reduction_preserves_homology():
    C = assemble(parse_braid("1 -2 1 -2", 3))
    R = reduce_complex(C)
    assert R.total_rank() <= C.total_rank()
    assert q1_homology(R) == q1_homology(C)
    assert R.euler() == C.euler()


def test_bad_differential_is_reported():
    gens = {(0, 0): [0], (1, 0): [0], (2, 0): [0]}
    d = {(0, 0): {0: {0: one}}, (1, 0): {0: {0: one}}}
    with pytest.raises(DifferentialError):
        CubeComplex(LL, gens, d).check_d2()
