"""Command line interface.

Exit codes: 0 success, 1 bad input (unparsable braid, unknown knot),
2 the closure is not a knot, 3 a verification suite failed.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .webs import BraidParseError, parse_braid, AnnularWeb
from .homology import (NotAKnotError, assemble, bockstein_pages, euler_vs_burau, gl0_poincare,
                       poincare_str)
from .exactalg import LaurentRing
from .reference import REFERENCE, lookup
from . import report

log = logging.getLogger("glzero")

EXIT_INPUT, EXIT_NOT_KNOT, EXIT_VERIFY = 1, 2, 3


def _dims_json(P):
    return [{"t": t, "q": q, "dim": d} for t, q, d in report.bigraded_rows(P)]


def _braid_from_args(args):
    if args.knot:
        try:
            entry = lookup(args.knot)
        except KeyError as exc:
            raise BraidParseError(exc.args[0]) from None
        return entry.name, parse_braid(entry.braid, entry.strands)
    if args.braid is None or args.strands is None:
        raise BraidParseError("give --knot NAME or both --braid and --strands")
    b = parse_braid(args.braid, args.strands)
    return str(b) or "unknot", b


def _hfk_line(einf):
    # stated convention: Alexander grading A = -qdeg / 2
    parts = ["(M=%d, A=%d)" % (t, -q // 2) + ("x%d" % d if d > 1 else "")
             for t, q, d in report.bigraded_rows(einf)]
    return " ".join(parts)


# ---- commands -------------------------------------------------------------

def cmd_gl0(args):
    name, b = _braid_from_args(args)
    P = gl0_poincare(b, args.degree_bound, args.char)
    if args.format == "json":
        print(json.dumps({"knot": name, "poincare": _dims_json(P)}))
    else:
        print("knot: %s  (braid on %d strands: %s)" % (name, b.strands, str(b) or "empty"))
        print("gl0 Poincare polynomial: %s" % poincare_str(P))
        print("total dimension: %d" % sum(P.values()))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        report.write_tsv({"gl0": P}, os.path.join(args.out, "gl0.tsv"))
    return 0


def cmd_bockstein(args):
    name, b = _braid_from_args(args)
    if not b.is_knot():
        raise NotAKnotError("closure has %d components; the invariant is defined for knots"
                            % b.num_components())
    C = assemble(b, LaurentRing(args.char), args.degree_bound)
    rep = bockstein_pages(C)
    if args.format == "json":
        print(json.dumps({
            "knot": name,
            "pages": [{"r": r + 1, "dims": _dims_json(P)} for r, P in enumerate(rep.pages)],
            "stabilization": rep.stabilization,
            "einf": _dims_json(rep.einf),
        }))
    else:
        print("knot: %s  (braid on %d strands: %s)" % (name, b.strands, str(b) or "empty"))
        for r, P in enumerate(rep.pages, 1):
            print("E_%d  total %d: %s" % (r, sum(P.values()), poincare_str(P)))
        print("E_inf total %d: %s" % (sum(rep.einf.values()), poincare_str(rep.einf)))
        print("stabilizes at r* = %d" % rep.stabilization)
        print("HFK gradings (qdeg = -2A): %s" % _hfk_line(rep.einf))
    pages = {"E1": rep.e1, "Einf": rep.einf}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        tables = {"E%d" % (r + 1): P for r, P in enumerate(rep.pages)}
        tables["Einf"] = rep.einf
        report.write_tsv(tables, os.path.join(args.out, "bockstein.tsv"))
    if args.plot:
        report.plot_pages(pages, args.plot, title=name)
    return 0


# ---- verification suites ------------------------------------------------------

def _check(ok, label, detail=""):
    print("%s  %s%s" % ("PASS" if ok else "FAIL", label, ("  " + detail) if detail else ""))
    return ok


def verify_reference(degree_bound=None, extended=False):
    ok = True
    for entry in REFERENCE.values():
        if not entry.standard and not extended:
            continue
        b = parse_braid(entry.braid, entry.strands)
        t0 = time.time()
        P = gl0_poincare(b, degree_bound)
        ok &= _check(P == entry.gl0, "gl0 %s" % entry.name,
                     "%s (%.1fs)" % (poincare_str(P), time.time() - t0))
        rep = bockstein_pages(assemble(b, LaurentRing(0), degree_bound))
        ok &= _check(sum(rep.einf.values()) == entry.hfk_total, "E_inf total %s" % entry.name,
                     "E1=%d Einf=%d" % (sum(rep.e1.values()), sum(rep.einf.values())))
        same, eu, bu, _ = euler_vs_burau(b, degree_bound)
        ok &= _check(same, "Euler = Burau %s" % entry.name, str(eu))
    return ok


def small_webs(max_strands=3, max_levels=4):
    """Every distinct web arising from a resolution of a braid with k, n bounded."""
    seen = {}
    for k in range(1, max_strands + 1):
        letters = [a for a in range(-(k - 1), k) if a]
        for n in range(max_levels + 1):
            for word in itertools.product(letters, repeat=n):
                nneg = sum(1 for a in word if a < 0)
                for bits in itertools.product((0, 1), repeat=n):
                    dbs = tuple((j, abs(a)) for j, (a, x) in enumerate(zip(word, bits))
                                if (x == 0) == (a > 0))
                    seen.setdefault((k, n, dbs, sum(bits) - nneg), None)
    return list(seen)


def _oracle_one(key):
    from .evalspaces import gl0_dims
    from .gilmore import ag_at_q1
    k, n, dbs, hdeg = key
    w = AnnularWeb(k, n, list(dbs), hdeg)
    a, b = ag_at_q1(w), gl0_dims(w)
    return key, a, b


def verify_oracle(jobs=1, max_strands=3, max_levels=4):
    keys = small_webs(max_strands, max_levels)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_oracle_one, keys, chunksize=16))
    else:
        results = [_oracle_one(k) for k in keys]
    bad = [(k, a, b) for k, a, b in results if a != b]
    for k, a, b in bad[:10]:
        print("  mismatch %r: AG %r vs S0 %r" % (k, a, b))
    return _check(not bad, "AG(q=1) = S0 on %d webs (k <= %d, n <= %d)" % (len(keys), max_strands, max_levels))


def verify_identities(count=100, seed=0):
    from .symfunc import identity_check_2_1_to_2_3, random_instance
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        lam, X, Y, Z = random_instance(rng)
        bound = (rng.randint(0, 2), rng.randint(0, 2))
        if not identity_check_2_1_to_2_3(lam, X, Y, Z, bound=bound):
            failures += 1
    return _check(failures == 0, "Schur identities on %d random instances" % count)


def cmd_verify(args):
    suites = ["appendixC", "oracle", "identities"] if args.suite == "all" else [args.suite]
    ok = True
    for s in suites:
        if s == "appendixC":
            ok &= verify_reference(args.degree_bound, args.extended)
        elif s == "oracle":
            ok &= verify_oracle(args.jobs)
        elif s == "identities":
            ok &= verify_identities()
    return 0 if ok else EXIT_VERIFY


# ---- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; keep 2 for "not a knot"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    ap = _Parser(prog="glzero", description="gl0 homology of braid closures and its Bockstein sequence")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--braid", help='whitespace-separated signed generators, e.g. "1 1 1"')
        p.add_argument("--strands", type=int)
        p.add_argument("--knot", help="name from the reference table: %s" % ", ".join(REFERENCE))
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--degree-bound", type=int, default=None)
        p.add_argument("--char", type=int, default=0, help="characteristic of the base field (0 = Q)")
        p.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; only verify runs in parallel")
        p.add_argument("--out", help="directory for tab-separated tables")

    p = sub.add_parser("gl0", help="Poincare polynomial of gl0 homology")
    common(p)
    p.set_defaults(func=cmd_gl0)
    p = sub.add_parser("bockstein", help="pages of the (q -> 1) Bockstein sequence")
    common(p)
    p.add_argument("--plot", help="PNG file for the E1 and E_inf grids")
    p.set_defaults(func=cmd_bockstein)
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("appendixC", "oracle", "identities", "all"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--degree-bound", type=int, default=None)
    p.add_argument("--extended", action="store_true", help="also check T(3,4) in the reference suite")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BraidParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except NotAKnotError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_NOT_KNOT


if __name__ == "__main__":
    sys.exit(main())
