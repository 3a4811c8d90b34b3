"""Command-line interface: ``grs {matrix,seq,dfao,corr,fibre,image} ...``.

Exit status is 0 on success, 1 when a validation or guard check fails and
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from grs import automaton, correlation
from grs.field import build_field_difference_matrix
from grs.fileio import read_weights, serialize_weights, write_csv, write_pgm, WeightFileError
from grs.groups import GroupSpec
from grs.sequence import ResourceGuardError, evaluate_index, grid, prefix
from grs.weights import (
    CATALOG_NAMES,
    catalog_matrix,
    multiplicative_matrix,
    search_difference_matrices,
    validate_difference_condition,
)


class CommandFailed(Exception):
    """Validation failure; reported with exit status 1."""


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--catalog", choices=CATALOG_NAMES, help="named matrix from the catalog")
    src.add_argument("--weights", metavar="FILE", help="weight-function file")
    src.add_argument("--field", nargs=3, type=int, metavar=("P", "M", "N"), help="finite-field construction over GF(P^N) truncated to (Z_P)^M")
    src.add_argument("--multiplicative", type=int, metavar="P", help="f(i, j) = ij mod P")


def _load(args):
    if args.catalog:
        return catalog_matrix(args.catalog)
    if args.weights:
        return read_weights(args.weights)
    if args.field:
        return build_field_difference_matrix(*args.field)
    if args.multiplicative is not None:
        return multiplicative_matrix(args.multiplicative)
    return None


def _vector(values: list[int], dim: int, flag: str) -> tuple[int, ...] | int:
    if len(values) != dim:
        raise argparse.ArgumentTypeError(f"{flag} needs {dim} value(s), got {len(values)}")
    return values[0] if dim == 1 else tuple(values)


def _out(args):
    return open(args.output, "w", newline="") if getattr(args, "output", None) else sys.stdout


# --- subcommands ---------------------------------------------------------------


def cmd_matrix(args) -> int:
    if args.search:
        k, = args.search
        group = GroupSpec.parse(args.group)
        found = search_difference_matrices(k, group, limit=args.limit, normalized=not args.unnormalized)
        print(f"found {len(found)} difference matrices of size {k} over {group}")
        for w in found:
            print(serialize_weights(w), end="")
        return 0
    w = _load(args)
    if w is None:
        raise argparse.ArgumentTypeError("matrix needs a source or --search")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(serialize_weights(w))
    else:
        print(serialize_weights(w), end="")
    report = validate_difference_condition(w)
    if report.is_difference:
        print("difference condition: yes")
        return 0
    v = report.first_violation
    print(
        f"difference condition: no ({v.reason}: i={v.i} j={v.j} context={list(v.context)} "
        f"g={v.g} observed={v.observed} expected={v.expected:g})"
    )
    raise CommandFailed("not a difference matrix")


def cmd_seq(args) -> int:
    w = _load(args)
    out = _out(args)
    if w.dim == 1:
        if args.N is None:
            raise argparse.ArgumentTypeError("seq needs -N for one-dimensional sequences")
        for v in prefix(w, args.N):
            out.write(f"{int(v)}\n")
    else:
        if args.extent is None:
            raise argparse.ArgumentTypeError("seq needs --extent for d-dimensional sequences")
        extent = _vector(args.extent, w.dim, "--extent")
        values = grid(w, extent)
        for n in np.ndindex(*values.shape):
            out.write(" ".join(map(str, n)) + f" {int(values[n])}\n")
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_dfao(args) -> int:
    w = _load(args)
    a = automaton.build_dfao(w)
    text = automaton.export_dot(a) if args.format == "dot" else automaton.export_json(a)
    out = _out(args)
    out.write(text)
    if out is not sys.stdout:
        out.close()
    return 0


def _corr_rows(w, args):
    mode = args.mode
    order = w.group.order
    if w.dim > 1:
        r = _vector(args.r, w.dim, "-r")
        N = _vector(args.N, w.dim, "-N")
        rep = correlation.ddim_correlation(w, r, N)
        total = rep.pairs.total
        if mode == "diff":
            for g in range(order):
                yield dict(r=r, N=N, key=g, count=int(rep.diff[g]), normalized=rep.diff[g] / total)
        elif mode == "pair":
            for i in range(order):
                for j in range(order):
                    c = int(rep.pairs.counts[i, j])
                    yield dict(r=r, N=N, key=(i, j), count=c, normalized=c / total)
        else:
            raise argparse.ArgumentTypeError(f"mode {mode} is one-dimensional only")
        return
    N = _vector(args.N, 1, "-N")
    if mode == "freq":
        counts = correlation.letter_frequencies(w, N, workers=args.workers)
        for g in range(order):
            yield dict(N=N, key=g, count=int(counts[g]), normalized=counts[g] / N)
        return
    if mode == "order":
        if not args.shifts:
            raise argparse.ArgumentTypeError("mode order needs --shifts")
        counts = correlation.order_l_correlation(w, args.shifts, N, workers=args.workers)
        for key in np.ndindex(*counts.shape):
            c = int(counts[key])
            yield dict(r=tuple(args.shifts), N=N, key=key, count=c, normalized=c / N)
        return
    r = _vector(args.r, 1, "-r")
    if mode == "diff":
        rep = correlation.diff_correlation(w, r, N, workers=args.workers)
        bound = rep.bound
        for g in range(order):
            ok = rep.deviation(g) <= Fraction(np.nextafter(bound, np.inf))
            yield dict(r=r, N=N, key=g, count=int(rep.counts[g]), normalized=rep.counts[g] / N, bound=bound, **{"pass": ok})
    elif mode == "pair":
        rep = correlation.pair_correlation(w, r, N, workers=args.workers)
        diagonal_bound = correlation.diagonal_bound(w, r, N) if validate_difference_condition(w) else None
        for i in range(order):
            for j in range(order):
                c = int(rep.counts[i, j])
                ok = None
                if diagonal_bound is not None:
                    ok = correlation.shifted_diagonal_sum(rep, i, j) >= Fraction(np.nextafter(diagonal_bound, -np.inf))
                yield dict(r=r, N=N, key=(i, j), count=c, normalized=c / N, bound=diagonal_bound, **{"pass": ok})


def cmd_corr(args) -> int:
    w = _load(args)
    rows = list(_corr_rows(w, args))
    out = _out(args)
    write_csv(rows, out)
    if out is not sys.stdout:
        out.close()
    if any(row.get("pass") is False for row in rows):
        raise CommandFailed("bound check failed")
    return 0


def cmd_fibre(args) -> int:
    w = _load(args)
    n = _vector(args.n, w.dim, "-n")
    r = _vector(args.r, w.dim, "-r")
    if w.dim == 1:
        fib = correlation.fibre(n, r, w.k)
    else:
        fib = correlation.fibre_ddim(n, r, w.k)
    print(f"carry_length {fib.carry_length}")
    for m in fib.members:
        label = " ".join(map(str, m)) if isinstance(m, tuple) else str(m)
        print(f"member {label} nabla {correlation.nabla_index(w, m, r)}")
    counts = correlation.fibre_equidistribution_check(w, n, r)
    print("counts " + " ".join(f"{g}:{int(c)}" for g, c in enumerate(counts)))
    return 0


def cmd_image(args) -> int:
    w = _load(args)
    write_pgm(w, tuple(args.extent), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grs", description="Generalised Rudin-Shapiro sequences")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="build, validate or search weight matrices")
    _add_source(p, required=False)
    p.add_argument("--search", nargs=1, type=int, metavar="K", help="exhaustive search for size-K matrices")
    p.add_argument("--group", default="Z2", help="group for --search, e.g. Z3 or Z2xZ2")
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--unnormalized", action="store_true", help="do not fix row 0 and column 0 to zero")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("seq", help="print sequence terms as element indices")
    _add_source(p)
    p.add_argument("-N", type=int)
    p.add_argument("--extent", nargs="+", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("dfao", help="export the automaton")
    _add_source(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dfao)

    p = sub.add_parser("corr", help="exact correlation counts as CSV")
    _add_source(p)
    p.add_argument("-r", nargs="+", type=int, default=[1])
    p.add_argument("-N", nargs="+", type=int, required=True)
    p.add_argument("--mode", choices=("diff", "pair", "order", "freq"), default="diff")
    p.add_argument("--shifts", nargs="+", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("fibre", help="fibre members and difference values")
    _add_source(p)
    p.add_argument("-n", nargs="+", type=int, required=True)
    p.add_argument("-r", nargs="+", type=int, required=True)
    p.set_defaults(func=cmd_fibre)

    p = sub.add_parser("image", help="render a 2-dimensional sequence as PGM")
    _add_source(p)
    p.add_argument("--extent", nargs=2, type=int, required=True, metavar=("N1", "N2"))
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_image)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"grs: usage error: {exc}", file=sys.stderr)
        return 2
    except (CommandFailed, ResourceGuardError, correlation.BoundViolation) as exc:
        print(f"grs: {exc}", file=sys.stderr)
        return 1
    except (WeightFileError, ValueError, KeyError, OSError) as exc:
        print(f"grs: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
