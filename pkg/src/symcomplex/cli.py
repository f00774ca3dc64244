"""Command-line interface: ``symcomplex <command> <op> ...``.

An ``<op>`` is a catalog spec such as ``grad:d=3,m=2`` or the path of an
operator definition file.  Exit codes: 0 success, 1 usage error, 2 parse
error, 3 mathematical failure, 4 undecided rank verdict.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import CatalogError, from_spec, names
from .core.sampling import default_seed, sample_points
from .core.serialize import SCHEMA, matrix_to_json, matrix_to_text
from .dsl import ParseError, parse_operator
from .homology import (RankInconsistencyError, build_annihilator, build_elliptic_augmentation,
                       build_potential, simplify_with_provenance, verify_exact_pair)
from .pseudoinverse import pseudoinverse_report, pseudoinverse_symbol
from .rank import CONSTANT, NOT_CONSTANT, analyze, generic_rank
from .rank.intervals import DEFAULT_BUDGET
from .rank.analysis import DEFAULT_BOX_RADIUS
from .torus import (FieldFormatError, SolvabilityError, apply_operator, kernel_projection, load_field,
                    solve_potential_torus)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MATH, EXIT_UNKNOWN = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_operator(ref: str, complex_: bool = False):
    if os.path.isfile(ref):
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
        try:
            return parse_operator(text, complex_).symbol
        except ParseError as exc:
            raise InputError(f"{ref}:{exc}") from None
    try:
        return from_spec(ref)
    except CatalogError as exc:
        raise InputError(f"{exc} (and no file named {ref!r})") from None


def _load_field(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return load_field(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read field {path!r}: {exc.strerror}") from None
    except (FieldFormatError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _symbol_text(title, sym):
    lines = [f"{title}: {sym.rows}x{sym.cols}" + (f", degree {sym.degree}" if getattr(sym, "degree", None) is not None else "")]
    lines += ["  " + row for row in matrix_to_text(sym)]
    return "\n".join(lines)


def cmd_rank(args, a):
    verdict = analyze(a, args.field, box_radius=args.box, budget=args.budget, seed=args.seed)
    code = {CONSTANT: EXIT_OK, NOT_CONSTANT: EXIT_MATH}.get(verdict.outcome, EXIT_UNKNOWN)
    return verdict.to_json(), str(verdict), code


def cmd_annihilate(args, a):
    r = generic_rank(a)
    res = build_annihilator(a, r)
    if args.simplify:
        q, prov = simplify_with_provenance(res)
        res = type(res)(q, prov, r)
    out = res.to_json()
    out["simplified"] = args.simplify
    return out, f"generic rank {r}\n" + _symbol_text("annihilator Q", res.Q), EXIT_OK


def cmd_potential(args, a):
    r = generic_rank(a)
    res = build_potential(a, r, simplify=args.simplify)
    out = res.to_json()
    out["simplified"] = args.simplify
    return out, f"generic rank {r}\n" + _symbol_text("potential B", res.B), EXIT_OK


def cmd_pinv(args, a):
    r = generic_rank(a)
    out = pseudoinverse_report(a, r)
    p = pseudoinverse_symbol(a, r)
    text = _symbol_text(f"pseudoinverse numerator (degree {p.degree} overall)", p.numerator) + \
        f"\ndenominator: {p.denominator.format()}"
    return out, text, EXIT_OK


def cmd_augment(args, a):
    r = generic_rank(a)
    h = build_elliptic_augmentation(a, r)
    out = {"schema": SCHEMA, "kind": "augmentation", "r": r, "symbol": matrix_to_json(h)}
    return out, _symbol_text(f"elliptic augmentation (r = {r})", h), EXIT_OK


def cmd_verify(args, a):
    q = load_operator(args.opq, args.complex)
    pts = sample_points(a.nvars, args.points, seed=args.seed)
    rep = verify_exact_pair(a, q, pts)
    text = f"{'Verified' if rep.ok else 'Failed'}: identity {rep.identity}, {rep.points} points, " \
           f"{len(rep.failures)} failures"
    return rep.to_json(), text, EXIT_OK if rep.ok else EXIT_MATH


def cmd_solve(args, b):
    v = _load_field(args.field_file)
    a = load_operator(args.check_kernel, args.complex) if args.check_kernel else None
    if a is not None and not apply_operator(a, v).is_zero():
        raise SolvabilityError(next(iter(sorted(apply_operator(a, v).coeffs))))
    u = solve_potential_torus(b, v, a)
    return u.to_json(), u.to_text().rstrip("\n") or "zero field", EXIT_OK


def cmd_project(args, a):
    v = _load_field(args.field_file)
    p = kernel_projection(a, v)
    return p.to_json(), p.to_text().rstrip("\n") or "zero field", EXIT_OK


def build_parser():
    p = _Parser(prog="symcomplex", description="Exact symbol calculus for constant-rank operators.")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: $SYMCOMPLEX_SEED or 0)")
    p.add_argument("--out", help="write the result to a file")
    p.add_argument("--complex", action="store_true", help="allow 'i' in operator files")
    sub = p.add_subparsers(dest="command", metavar="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("op", help=f"catalog spec ({', '.join(names())}) or operator file")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("rank", cmd_rank, "decide constant rank")
    sp.add_argument("--field", choices=["real", "complex", "integer"], default="real")
    sp.add_argument("--box", type=int, default=DEFAULT_BOX_RADIUS)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add("annihilate", cmd_annihilate, "exact annihilator").add_argument("--simplify", action="store_true")
    add("potential", cmd_potential, "exact potential").add_argument("--simplify", action="store_true")
    add("pinv", cmd_pinv, "rational pseudoinverse symbol")
    add("augment", cmd_augment, "elliptic augmentation")
    sp = add("verify", cmd_verify, "check that <opQ> is an exact annihilator of <op>")
    sp.add_argument("opq")
    sp.add_argument("--points", type=int, default=20)
    sp = add("solve", cmd_solve, "solve B(D)u = v on the torus")
    sp.add_argument("--field", dest="field_file", required=True)
    sp.add_argument("--check-kernel", dest="check_kernel")
    sp = add("project", cmd_project, "project a field onto ker A(D)")
    sp.add_argument("--field", dest="field_file", required=True)
    return p


def _global_flags_anywhere(argv):
    """Allow global flags after the subcommand as well as before it."""
    front, rest = [], []
    it = iter(argv)
    for tok in it:
        if tok in ("--json", "--complex"):
            front.append(tok)
        elif tok in ("--seed", "--out"):
            front.append(tok)
            front.append(next(it, ""))
        elif tok.startswith(("--seed=", "--out=")):
            front.append(tok)
        else:
            rest.append(tok)
    return front + rest


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_global_flags_anywhere(argv))
        if not args.command:
            raise UsageError("missing command")
        if args.seed is None:
            args.seed = default_seed()
        if getattr(args, "points", 1) < 1 or getattr(args, "box", 1) < 1 or getattr(args, "budget", 1) < 1:
            raise UsageError("--points, --box and --budget must be positive")
        op = load_operator(args.op, args.complex)
        out, text, code = args.fn(args, op)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"symcomplex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"symcomplex: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SolvabilityError as exc:
        print(f"symcomplex: {exc}", file=sys.stderr)
        if args.json:
            _emit(args, json.dumps({"schema": SCHEMA, "kind": "error", "error": "solvability",
                                    "m": list(exc.m)}))
        return EXIT_MATH
    except (RankInconsistencyError, ValueError, ZeroDivisionError) as exc:
        print(f"symcomplex: {exc}", file=sys.stderr)
        return EXIT_MATH
    out = {"schema": SCHEMA, "command": args.command, **{k: v for k, v in out.items() if k != "schema"}}
    _emit(args, json.dumps(out) if args.json else text)
    return code


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


if __name__ == "__main__":
    sys.exit(main())
