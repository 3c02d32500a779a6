"""Command-line front end.

Data goes to stdout and diagnostics to stderr.  Exit status is 0 on
success, 1 when an input fails validation and 2 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from pathlib import Path

from . import bounds as bnd
from .disc_catalog import (
    FAMILIES,
    enumerate_twisted_discs,
    family_of,
    is_new,
    max_common_arc_count,
    truncation,
)
from .hilbert import DEFAULT_CAP, HilbertCapExceeded, hilbert_basis
from .matching import build_matching_system, read_system, write_system
from .moves import NotADisc, collapse_certificate, read_certificate, read_disc, validate_certificate, write_certificate
from .surface_vectors import search_spanning_disc
from .triangulation import MarkingError, ParseError, TetrahedronType, parse_triangulation

# Published counts, in table row order.
REFERENCE_TABLE1 = {
    TetrahedronType.UNMARKED: (7,),
    TetrahedronType.ONE_VERTEX: (10,),
    TetrahedronType.TWO_VERTICES: (16,),
    TetrahedronType.THREE_VERTICES: (29,),
    TetrahedronType.FOUR_VERTICES: (59,),
    TetrahedronType.ONE_EDGE: (30,),
    TetrahedronType.ONE_EDGE_ONE_VERTEX: (47,),
    TetrahedronType.ONE_EDGE_TWO_VERTICES: (93,),
    # the total and the sum of the sub-counts disagree; either is accepted
    TetrahedronType.TWO_EDGES: (148, 149),
}
REFERENCE_TABLE2 = {
    TetrahedronType.UNMARKED: (7, 2),
    TetrahedronType.ONE_VERTEX: (10, 3),
    TetrahedronType.TWO_VERTICES: (16, 3),
    TetrahedronType.THREE_VERTICES: (29, 3),
    TetrahedronType.FOUR_VERTICES: (59, 3),
    TetrahedronType.ONE_EDGE: (15, 3),
    TetrahedronType.TWO_EDGES: (17, 6),
    TetrahedronType.ONE_EDGE_ONE_VERTEX: (22, 3),
    TetrahedronType.ONE_EDGE_TWO_VERTICES: (40, 6),
}
# Sub-counts behind the two-edge total: inherited from one edge, from one
# edge with one vertex, and types using both edges.
REFERENCE_TWO_EDGE_PARTS = (21, 62, 66)

FORMATS_HELP = """\
file formats
  triangulation (UTF-8, '#' starts a comment):
    tets <t>                       tetrahedron count, first statement
    glue <i> <f> <j> <g> <a> <b> <c>
                                   face f of tet i onto face g of tet j; the
                                   vertices of f in ascending order go to a, b, c
    mark edge <i> <u> <v>          edge uv of tet i lies on the link
    mark vertex <i> <u>            isolated marked vertex
    knot <i1> <u1> <v1> ...        explicit link cycle as (tet, u, v) triples
  matching system:
    vars <n>, then 'var <tet> <encoding>' per variable,
    'eq <c1> ... <cn>' per equation and 'incompat <i> <j>' per pair
  disc:
    triangles <w>, then 'tri <a> <b> <c>' per triangle
  move certificate:
    initial <cycle>, then 'move slide a c b' | 'move unslide a b c' |
    'move insert a b m' | 'move remove v', then final <cycle>

exit status: 0 success, 1 invalid input or failed check, 2 resource cap hit
"""


class _Usage(Exception):
    pass


def _emit(rows: list[list], header: list[str], fmt: str, out):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    table = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        out.write("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() + "\n")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


# -- commands -----------------------------------------------------------------


def cmd_tables(args, out, err) -> int:
    rows1, failures = [], 0
    for t, ref in REFERENCE_TABLE1.items():
        n = len(enumerate_twisted_discs(t))
        ok = n in ref
        failures += not ok
        rows1.append([t.value, n, "/".join(map(str, ref)), "PASS" if ok else "FAIL"])
    _emit(rows1, ["type", "twisted", "reference", "status"], args.format, out)
    out.write("\n")
    rows2 = []
    for t, (ref_n, ref_arc) in REFERENCE_TABLE2.items():
        n, arc = len(truncation(t).normal), max_common_arc_count(t)
        ok = (n, arc) == (ref_n, ref_arc)
        failures += not ok
        rows2.append([t.value, n, ref_n, arc, ref_arc, "PASS" if ok else "FAIL"])
    _emit(rows2, ["type", "normal", "reference", "max_arc", "reference", "status"], args.format, out)
    two = enumerate_twisted_discs(TetrahedronType.TWO_EDGES)
    both = sum(1 for d in two if is_new(d))
    print(
        f"two-edges: {len(two)} types, {both} use both edges; reference parts "
        f"{'+'.join(map(str, REFERENCE_TWO_EDGE_PARTS))}={sum(REFERENCE_TWO_EDGE_PARTS)} "
        f"against a stated total of 148",
        file=err,
    )
    if failures:
        print(f"{failures} row(s) differ from the reference values", file=err)
    return 1 if failures and args.strict else 0


def cmd_enumerate(args, out, err) -> int:
    t = TetrahedronType.parse(args.type)
    pred = family_of(args.family) if args.family else None
    tr = truncation(t)
    rows = []
    for i, d in enumerate(enumerate_twisted_discs(t)):
        if pred and not pred(d):
            continue
        if args.new and not is_new(d):
            continue
        rows.append([i, d.encoding, len(d.segments), tr.image[i]])
    _emit(rows, ["index", "encoding", "sides", "normal"], args.format, out)
    if t is TetrahedronType.TWO_EDGES and not (pred or args.new):
        print(
            f"note: {len(rows)} two-edge types; the reference total is 148 while its "
            f"sub-counts sum to {sum(REFERENCE_TWO_EDGE_PARTS)}",
            file=err,
        )
    return 0


def cmd_matching(args, out, err) -> int:
    sys_ = build_matching_system(parse_triangulation(_read(args.file)))
    out.write(write_system(sys_))
    print(f"{sys_.n} variables, {len(sys_.equations)} equations, max |coeff| sum {sys_.max_abs_sum()}", file=err)
    return 0


def cmd_hilbert(args, out, err) -> int:
    system = read_system(_read(args.file))
    basis = hilbert_basis(system.equations, system.n, cap=args.cap)
    for v in basis:
        out.write(" ".join(map(str, v)) + "\n")
    print(f"{len(basis)} basis vectors", file=err)
    return 0


def cmd_search(args, out, err) -> int:
    tri = parse_triangulation(_read(args.file))
    found = search_spanning_disc(tri, cap=args.cap)
    rows = []
    for rank, c in enumerate(found):
        support = " ".join(f"{k}:{x}" for k, x in enumerate(c.coords) if x)
        flags = [c.boundary_restricted, c.spans, c.fundamental, c.compatible]
        rows.append([rank, c.weight, c.euler, *("yes" if f else "no" for f in flags), support])
    header = ["rank", "weight", "euler", "restricted", "spans", "fundamental", "compatible", "support"]
    _emit(rows, header, args.format, out)
    if not found:
        print("no spanning disc among the Hilbert basis elements", file=err)
        return 1
    if args.emit_vector:
        Path(args.emit_vector).write_text(" ".join(map(str, found[0].coords)) + "\n", encoding="utf-8")
    return 0


def cmd_collapse(args, out, err) -> int:
    disc = read_disc(_read(args.file))
    if args.validate:
        cert = read_certificate(_read(args.validate))
        result = validate_certificate(cert, disc)
        if not result:
            print(f"invalid: {result.reason}", file=err)
            return 1
        out.write(f"valid moves {result.moves} budget {result.budget}\n")
        return 0
    cert = collapse_certificate(disc)
    out.write(write_certificate(cert))
    print(f"{len(cert.moves)} moves for {disc.w} triangles", file=err)
    return 0


def _power(base: int, exp: int, coeff: int = 1) -> str:
    head = f"{coeff}*" if coeff != 1 else ""
    return f"{head}{base}^{exp}"


# Decimal output is kept below the interpreter's default digit limit.
DECIMAL_BIT_LIMIT = 12_000


def _show(value: int, symbolic: str, force: bool) -> str:
    return symbolic if force or value.bit_length() > DECIMAL_BIT_LIMIT else str(value)


def cmd_bounds(args, out, err) -> int:
    if (args.tetrahedra is None) == (args.crossings is None):
        raise _Usage("give exactly one of --tetrahedra and --crossings")
    sym = args.symbolic
    if args.tetrahedra is not None:
        t = args.tetrahedra
        raw, relaxed, final = bnd.disc_count_bound(t)
        moves = bnd.elementary_move_bound(t)
        n = bnd.DISC_TYPES_PER_TET * t
        rows = [
            ["disc_count_raw", _show(raw, _power(12, -(-(n - 1) // 2), n), sym)],
            ["disc_count_relaxed", _show(relaxed, _power(2, 118 * t - 2, n), sym)],
            ["disc_count_final", _show(final, bnd.format_power(final), sym)],
            ["elementary_moves", _show(moves, bnd.format_power(moves), sym)],
        ]
    else:
        r = bnd.reidemeister_bound(args.crossings)
        shown = f"2^{r.final_exponent}"
        if not sym and r.final_exponent <= DECIMAL_BIT_LIMIT:
            shown = str(r.final)
        rows = [
            ["tetrahedra", r.t],
            ["q_bits", r.q_bits],
            ["reidemeister_moves", shown],
            ["status", r.status],
        ]
    if args.format == "csv":
        _emit(rows, ["quantity", "value"], "csv", out)
    else:
        for k, v in rows:
            out.write(f"{k} {v}\n")
    return 0


# -- entry point --------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twistnf",
        description="Twisted normal discs, matching systems and unknotting bounds.",
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "csv"), default="text")

    sp = sub.add_parser("tables", help="disc type counts per marked tetrahedron type")
    fmt(sp)
    sp.add_argument("--strict", action="store_true", help="exit 1 if any row differs from the reference")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("enumerate", help="list the twisted disc types of one tetrahedron type")
    sp.add_argument("--type", required=True, help="e.g. one-edge, OneEdgeTwoVertices")
    sp.add_argument("--family", help=f"one of {', '.join(FAMILIES)}, optionally with /<sides>")
    sp.add_argument("--new", action="store_true", help="only types that use every marking feature")
    fmt(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("matching", help="write the matching system of a triangulation")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_matching)

    sp = sub.add_parser("hilbert", help="Hilbert basis of a matching-system file")
    sp.add_argument("file")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="candidate vector limit")
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("search", help="least-weight spanning disc candidates")
    sp.add_argument("file")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="candidate vector limit")
    sp.add_argument("--emit-vector", metavar="FILE", help="write the winning vector here")
    fmt(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("collapse", help="collapse certificate for a triangulated disc")
    sp.add_argument("file")
    sp.add_argument("--validate", metavar="CERT", help="replay a certificate instead of building one")
    sp.set_defaults(func=cmd_collapse)

    sp = sub.add_parser("bounds", help="evaluate and check the move-count bounds")
    sp.add_argument("--tetrahedra", type=int, metavar="T")
    sp.add_argument("--crossings", type=int, metavar="N")
    sp.add_argument(
        "--symbolic", action="store_true", help="print powers as base^exponent (always done past 12000 bits)"
    )
    fmt(sp)
    sp.set_defaults(func=cmd_bounds)
    return p


def main(argv: list[str] | None = None, *, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out, err)
    except BrokenPipeError:
        # downstream reader went away (e.g. `| head`); silence the final flush
        if out is sys.stdout:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except HilbertCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=err)
        return 2
    except _Usage as exc:
        print(f"usage error: {exc}", file=err)
        return 1
    except (ParseError, MarkingError, NotADisc, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run the CLI in-process and capture its output."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
