"""``leontief`` command-line tool.

Exit codes: 0 ok, 2 invalid input, 3 not gainfree, 4 verification failure.
Certificates go to stdout as JSON; everything meant for humans goes to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .certify import InternalError, outcome_violations, solve_traced
from .formats import ParseError, emit_certificate, emit_instance, read_certificate, read_instance
from .generators import gen_dc, gen_expfamily, gen_integral_horn, gen_random_gainfree
from .model import InvalidInstance, NotGainfree, build_hypergraph, check_gainfree, max_gain_cycle, normalize, require_valid
from .numerics import format_rational

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_GAINFREE = 3
EXIT_VERIFY = 4

INSTANCE_SUFFIX = ".leontief"
CERT_SUFFIX = ".cert.json"


def _err(*parts) -> None:
    print(*parts, file=sys.stderr)


def _load(path):
    """Read and validate an instance, or return an exit code after reporting."""
    try:
        inst = read_instance(path)
        require_valid(inst)
    except OSError as exc:
        _err(f"{path}: {exc.strerror}")
        return None, EXIT_INVALID
    except ParseError as exc:
        _err(f"{path}: parse error: {exc}")
        return None, EXIT_INVALID
    except InvalidInstance as exc:
        _err(f"{path}: invalid instance: {'; '.join(exc.violations)}")
        return None, EXIT_INVALID
    except ValueError as exc:
        _err(f"{path}: invalid instance: {exc}")
        return None, EXIT_INVALID
    return inst, EXIT_OK


def _dump_trace(trace) -> None:
    for k in range(trace.m + 1):
        ys = ", ".join(str(v) for v in trace.y[k])
        _err(f"k={k} y=({ys})")
        for v in range(trace.m):
            if trace.change[k][v]:
                r = ", ".join(format_rational(x) for x in trace.r_dense(k, v))
                _err(f"    r[v{v + 1}]=({r}) via E{trace.p[k][v] + 1}")
    _err(f"value={trace.value}")


def _solve_one(path, gainfree_check: bool, trace: bool = False, quiet: bool = False):
    """Returns (exit code, certificate text or None)."""
    inst, code = _load(path)
    if inst is None:
        return code, None
    try:
        result = solve_traced(inst, check_gainfree_first=gainfree_check)
    except NotGainfree as exc:
        w = exc.witness
        _err(f"{path}: not gainfree: cycle {w} has gain {format_rational(w.gain)}")
        return EXIT_NOT_GAINFREE, None
    except (InternalError, AssertionError) as exc:
        _err(f"{path}: certificate failed verification: {exc}")
        return EXIT_VERIFY, None
    if trace:
        _dump_trace(result.trace)
    if not quiet:
        _err(f"{path}: {result.outcome.tag} (certificate verified)")
    return EXIT_OK, emit_certificate(result.outcome, inst)


def _write_atomic(target: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".tmp-", suffix=target.name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _batch_job(args):
    path, gainfree_check = args
    code, cert = _solve_one(path, gainfree_check, quiet=True)
    if cert is not None:
        _write_atomic(Path(str(path)[: -len(INSTANCE_SUFFIX)] + CERT_SUFFIX), cert)
    return str(path), code


def cmd_solve(args) -> int:
    if args.batch:
        directory = Path(args.path)
        if not directory.is_dir():
            _err(f"{directory}: not a directory")
            return EXIT_INVALID
        files = sorted(directory.glob("*" + INSTANCE_SUFFIX))
        jobs = [(p, not args.no_gainfree_check) for p in files]
        worst = EXIT_OK
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for name, code in pool.map(_batch_job, jobs):
                worst = max(worst, code)
                if not args.json:
                    _err(f"{name}: exit {code}")
        return worst
    code, cert = _solve_one(args.path, not args.no_gainfree_check, trace=args.trace, quiet=args.json)
    if cert is not None:
        sys.stdout.write(cert)
    return code


def cmd_verify(args) -> int:
    inst, code = _load(args.instance)
    if inst is None:
        return code
    try:
        outcome = read_certificate(args.certificate, inst)
    except OSError as exc:
        _err(f"{args.certificate}: {exc.strerror}")
        return EXIT_INVALID
    except ParseError as exc:
        _err(f"{args.certificate}: {exc}")
        return EXIT_INVALID
    problems = outcome_violations(inst, outcome)
    if problems:
        print(f"invalid {outcome.tag} certificate: {problems[0]}")
        return EXIT_VERIFY
    print(f"valid {outcome.tag} certificate")
    return EXIT_OK


def cmd_gainfree(args) -> int:
    inst, code = _load(args.path)
    if inst is None:
        return code
    h = build_hypergraph(normalize(inst)[0])
    bad = check_gainfree(h)
    if bad is not None:
        print(f"not gainfree: cycle {bad} has gain {format_rational(bad.gain)}")
        return EXIT_NOT_GAINFREE
    worst = max_gain_cycle(h)
    if worst is None:
        print("gainfree")
    else:
        print(f"gainfree (max cycle gain found: {format_rational(worst.gain)})")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "dc":
        inst = gen_dc(args.vars, args.constraints, (args.wmin, args.wmax), args.seed)
        note = f"dc vars={args.vars} constraints={args.constraints} w=[{args.wmin},{args.wmax}] seed={args.seed}"
    elif args.family == "exp":
        inst = gen_expfamily(args.a)
        note = f"exp a={args.a}"
    elif args.family == "random":
        inst = gen_random_gainfree(args.m, args.n, args.seed, args.density)
        note = f"random m={args.m} n={args.n} seed={args.seed} density={args.density}"
    else:
        inst = gen_integral_horn(args.m, args.n, args.seed, args.density)
        note = f"horn m={args.m} n={args.n} seed={args.seed} density={args.density}"
    text = emit_instance(inst, comment=note)
    if args.output:
        _write_atomic(Path(args.output), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leontief", description="Certifying LP solver for gainfree Leontief systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance and print its certificate")
    p.add_argument("path", help="instance file, or a directory with --batch")
    p.add_argument("--no-gainfree-check", action="store_true", help="skip the cycle-gain check")
    p.add_argument("--json", action="store_true", help="machine output only")
    p.add_argument("--trace", action="store_true", help="dump the value-iteration history to stderr")
    p.add_argument("--batch", action="store_true", help=f"solve every *{INSTANCE_SUFFIX} file in a directory")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gainfree", help="report the largest cycle gain")
    p.add_argument("path")
    p.set_defaults(func=cmd_gainfree)

    p = sub.add_parser("gen", help="write a generated instance")
    gsub = p.add_subparsers(dest="family", required=True)
    g = gsub.add_parser("dc", help="difference constraints")
    g.add_argument("--vars", type=int, default=5)
    g.add_argument("--constraints", type=int, default=10)
    g.add_argument("--wmin", type=int, default=-5)
    g.add_argument("--wmax", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("exp", help="two-variable family with parameter a")
    g.add_argument("--a", type=int, default=10)
    for name, helptext in (("random", "random gainfree instance"), ("horn", "integral Horn instance")):
        g = gsub.add_parser(name, help=helptext)
        g.add_argument("--m", type=int, default=5)
        g.add_argument("--n", type=int, default=10)
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--density", type=float, default=0.35)
    for g in gsub.choices.values():
        g.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
