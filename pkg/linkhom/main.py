import sys
import argparse

from .arith import format_poly, parse_poly
from .chain import check_chain, counterexample_chain
from .chainfile import parse_chain_file, dump_chain
from .diagnostics import Reporter, warning_code, now_iso
from .errors import (LinkHomError, ParseError, ShapeMismatch, ComplementarityFailure,
                     FullRankFailure, Infeasible, ZeroDenominator)
from .generator import GenParams, gen_valid_chain, gen_broken_chain, TARGETS
from .linalg import FiberPoint, parse_point
from .solver import (constraint_matrix, vector_bundle_check, structure_decomposition,
                     check_decomposition, oracle_equivalence)
from . import report

EXIT_OK = 0
EXIT_CONDITION = 1
EXIT_NOT_BUNDLE = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to the input-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _emit(args, text, payload):
    stamp = now_iso() if args.timestamps else None
    if args.format == 'json':
        print(report.dump_json(payload, stamp))
    else:
        if stamp:
            print(f"generated: {stamp}")
        print(text)


def _point_arg(text):
    try:
        return parse_point(text)
    except (ValueError, ZeroDenominator) as e:
        raise argparse.ArgumentTypeError(str(e))


def _poly_arg(text):
    try:
        return parse_poly(text)
    except (ValueError, ZeroDenominator) as e:
        raise argparse.ArgumentTypeError(str(e))


def _load(args, rep):
    rep.note(f"reading {args.file}")
    chain, extra = parse_chain_file(args.file)
    rep.note(f"chain r={chain.r} m={chain.m} n={chain.n} s={format_poly(chain.s)}")
    return chain, [FiberPoint(a) for a in extra]


def _reporter_for(args):
    source = None
    if getattr(args, 'file', None):
        try:
            with open(args.file, encoding='utf-8') as f:
                source = f.read()
        except (OSError, ValueError):
            source = None
    return Reporter(getattr(args, 'file', None) or "<demo>", source,
                    verbose=args.verbose, timestamps=args.timestamps)


def cmd_check(args, rep):
    chain, extra = _load(args, rep)
    reports, warnings = check_chain(chain, extra + list(args.point or []))
    for w in warnings:
        rep.add_warning(warning_code(w), w)
    _emit(args, report.check_text(reports, warnings), report.check_json(reports, warnings))
    return EXIT_OK if report.check_passed(reports) else EXIT_CONDITION


def _cross_check(chain, solved, rep):
    results = {}
    M = constraint_matrix(chain)
    mismatch = False
    for x in sorted(solved.fiber_dims, key=lambda p: p.sort_key()):
        rep.note(f"cross-checking fiber at {x}")
        try:
            ok, structural, kernel = oracle_equivalence(chain, x, M)
        except (ComplementarityFailure, FullRankFailure) as e:
            results[x] = f"no decomposition ({e.code}: {e})"
            continue
        if ok:
            results[x] = f"agree (dim {kernel})"
        else:
            results[x] = f"MISMATCH (structural rank {structural}, kernel dim {kernel})"
            rep.add_warning("W003", f"at {x}: structural rank {structural}, kernel dim {kernel}")
            mismatch = True
    return results, mismatch


def cmd_solve(args, rep):
    chain, extra = _load(args, rep)
    rep.note(f"constraint matrix {2 * (chain.n - 1) * chain.rm}x{chain.n * chain.rm} over QQ[t]")
    solved = vector_bundle_check(chain, extra + list(args.point or []), with_basis=args.basis)
    for w in solved.warnings:
        rep.add_warning(warning_code(w), w)
    cross, mismatch = (None, False)
    if args.cross_check:
        cross, mismatch = _cross_check(chain, solved, rep)
    _emit(args, report.solve_text(solved, cross), report.solve_json(solved, cross))
    if mismatch:
        return EXIT_INTERNAL
    if args.expect_failure:
        return EXIT_OK if not solved.is_vector_bundle else EXIT_NOT_BUNDLE
    return EXIT_OK if solved.is_vector_bundle else EXIT_NOT_BUNDLE


def cmd_structure(args, rep):
    chain, _ = _load(args, rep)
    x = args.point
    try:
        decomp = structure_decomposition(chain, x)
    except (ComplementarityFailure, FullRankFailure) as e:
        rep.report_exception(e)
        _emit(args, f"structure at {x}: FAILED\n  {e.__class__.__name__} ({e.code}): {e}",
              report.structure_failure_json(x, e))
        return EXIT_CONDITION
    problems = check_decomposition(chain, decomp)
    _emit(args, report.structure_text(decomp, problems), report.structure_json(decomp, problems))
    return EXIT_OK if not problems else EXIT_INTERNAL


def cmd_gen(args, rep):
    params = GenParams(args.r, args.m, args.n, args.m1, args.s, entry_bound=args.entry_bound,
                       seed=args.seed, conjugate=not args.no_conjugate)
    rep.note(f"generating {params}" + (f", breaking {args.break_}" if args.break_ else ""))
    if args.break_:
        chain = gen_broken_chain(params, args.break_)
        expect = "check=1"
    else:
        chain = gen_valid_chain(params)
        expect = "check=0 solve=0"
    header = (f"generated by linkhom gen: r={params.r} m={params.m} m1={params.m1} n={params.n} "
              f"s={format_poly(params.s)} seed={params.seed}" + (f" break={args.break_}" if args.break_ else "")
              + f"\nexpect: {expect}")
    text = dump_chain(chain, header=header)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
        rep.note(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_demo(args, rep):
    chain = counterexample_chain()
    reports, warnings = check_chain(chain)
    solved = vector_bundle_check(chain)
    zero = FiberPoint(0)
    if solved.fiber_dims.get(zero) != 4 or solved.generic_dim != 3 or solved.rm != 3:
        rep.add_error("E000", f"counterexample dims are {solved.fiber_dims.get(zero)}/{solved.generic_dim}, "
                              f"expected 4/3")
        return EXIT_INTERNAL
    failed = [r for r in reports if not r.passed]
    if [(r.condition, r.point) for r in failed] != [('III', zero)] or failed[0].failures[0].index != 1:
        rep.add_error("E000", "counterexample should fail exactly condition III at t=0, i=1")
        return EXIT_INTERNAL
    text = ("counterexample: r=1, m=3, n=3, s=t^2\n" + report.check_text(reports, warnings)
            + "\n" + report.solve_text(solved))
    payload = {'command': 'demo', 'check': report.check_json(reports, warnings),
               'solve': report.solve_json(solved)}
    _emit(args, text, payload)
    return EXIT_OK


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--format", choices=['text', 'json'], default='text', help="Report format")
    common.add_argument("--timestamps", action="store_true", help="Stamp reports and progress notes with UTC time")
    common.add_argument("-v", "--verbose", action="store_true", help="Print progress notes to stderr")

    parser = ArgumentParser(prog="linkhom", description="Linked Hom spaces of chains over Q[t]")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="Check conditions I, II and III")
    p.add_argument("file", help="Chain file")
    p.add_argument("--point", action="append", type=_point_arg, help="Extra point to check (repeatable)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="Fiber dimensions of the linked Hom space")
    p.add_argument("file", help="Chain file")
    p.add_argument("--point", action="append", type=_point_arg, help="Extra fiber to compute (repeatable)")
    p.add_argument("--basis", action="store_true", help="Print a free QQ[t]-basis of the solution module")
    p.add_argument("--expect-failure", action="store_true", help="Exit 0 when it is NOT a vector bundle")
    p.add_argument("--cross-check", action="store_true",
                   help="Compare with the structural basis at every checked fiber")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("structure", parents=[common], help="Local decomposition of the G-chain at a point")
    p.add_argument("file", help="Chain file")
    p.add_argument("--point", required=True, type=_point_arg, help="Point t=a, or 'generic'")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("gen", parents=[common], help="Generate a chain file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--m1", type=int, required=True, help="Rank of the invertible block of the G model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=_poly_arg, required=True, help="Base scalar, e.g. 't^2' or 't^2 - t'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-bound", type=int, default=3)
    p.add_argument("--no-conjugate", action="store_true", help="Emit the block model unconjugated")
    p.add_argument("--break", dest="break_", choices=TARGETS, help="Violate this condition")
    p.add_argument("--out", help="Output path (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("demo", parents=[common], help="Built-in examples")
    p.add_argument("name", choices=['counterexample'])
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    rep = _reporter_for(args)
    try:
        return args.func(args, rep)
    except (ParseError, ShapeMismatch, Infeasible, ZeroDenominator) as e:
        rep.report_exception(e)
        return EXIT_INPUT
    except OSError as e:
        rep.add_error("E301", f"{e.strerror or e}: {e.filename or ''}".rstrip(': '))
        return EXIT_INPUT
    except LinkHomError as e:
        rep.report_exception(e)
        return EXIT_INTERNAL
    except AssertionError as e:
        rep.add_error("E000", str(e) or "assertion failed")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
