"""Command-line frontend for the reduction pipeline.

Exit codes: 0 success, 2 parse error, 3 class-validation error,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import random
import sys as _sys

from .matrix import MatrixClass, validate_class
from .mio import MatrixFormatError, load_system, save_system
from .oracle import OracleContext
from .pairreplace import reduce_gz2_to_mc2, save_trace
from .rowstats import NEG, POS, all_row_stats
from .stages import reduce_g_to_gz, reduce_gz_to_gz2
from . import verify as _verify

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_MISMATCH = 4

_STAGES = ("g", "gz", "gz2", "mc2")
_STAGE_CLASS = {
    "g": MatrixClass.G,
    "gz": MatrixClass.GZ,
    "gz2": MatrixClass.GZ2,
    "mc2": MatrixClass.MC2,
}


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_validated(path: str, stage: str):
    try:
        system = load_system(path)
    except MatrixFormatError as exc:
        raise _CliError(EXIT_PARSE, f"parse error in {path}: {exc}") from exc
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc
    diag = validate_class(system, _STAGE_CLASS[stage])
    if diag is not None:
        raise _CliError(EXIT_VALIDATION, diag)
    return system.with_tag(_STAGE_CLASS[stage])


def cmd_reduce(args: argparse.Namespace) -> int:
    src = args.from_stage
    dst = args.to_stage
    if _STAGES.index(src) >= _STAGES.index(dst):
        raise _CliError(EXIT_PARSE, f"--from {src} does not precede --to {dst}")
    system = _load_validated(args.input, src)
    out_path = args.output or f"{args.input}.{dst}"
    certs = []
    trace = None
    stage = src
    while stage != dst:
        if stage == "g":
            system, cert = reduce_g_to_gz(system)
            certs.append(cert)
            stage = "gz"
        elif stage == "gz":
            system, cert = reduce_gz_to_gz2(system)
            certs.append(cert)
            stage = "gz2"
        else:
            system, trace = reduce_gz2_to_mc2(system)
            stage = "mc2"
    save_system(out_path, system, certs)
    print(f"wrote {out_path} ({system.m}x{system.n} {system.class_tag})")
    if trace is not None:
        trace_path = f"{out_path}.trace"
        save_trace(trace_path, trace)
        print(f"wrote {trace_path} ({trace.n_repl} gadgets)")
    return EXIT_OK


def cmd_entry(args: argparse.Namespace) -> int:
    system = _load_validated(args.input, "gz2")
    ctx = OracleContext(system)
    print(ctx.entry(args.i, args.j))
    return EXIT_OK


def cmd_dims(args: argparse.Namespace) -> int:
    system = _load_validated(args.input, "gz2")
    m_final, n_final = OracleContext(system).dims()
    print(f"{m_final} {n_final}")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    system = _load_validated(args.input, "gz2")
    stats = all_row_stats(system)
    for i, st in enumerate(stats, start=1):
        for sign in (POS, NEG):
            side = st.side(sign)
            cb = ", ".join(str(v) for v in side.count_bit)
            ng = ", ".join(str(v) for v in side.num_gadget)
            print(
                f"row {i} sign {sign}: Len = {side.len_bits}, "
                f"CountBit = ({cb}), NumGadget = ({ng}), SumNumG = {side.sum_num_g}"
            )
    m_final, n_final = OracleContext(system).dims()
    print(f"m' = {m_final}, n' = {n_final}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    system = _load_validated(args.input, "gz2")
    report = _verify.oracle_equivalence_check(system)
    print(report.render())
    code = EXIT_OK if report.passed else EXIT_MISMATCH
    if args.against:
        try:
            candidate = load_system(args.against)
        except MatrixFormatError as exc:
            raise _CliError(EXIT_PARSE, f"parse error in {args.against}: {exc}") from exc
        cmp_report = _verify.compare_against_oracle(system, candidate)
        print(cmp_report.render())
        if not cmp_report.passed:
            code = EXIT_MISMATCH
    # a Gz2 system is also a valid class-G input, so the full pipeline applies
    seed_rng = random.Random(0)
    diag = validate_class(system, MatrixClass.G)
    if diag is None:
        x_seed = tuple(seed_rng.randint(-9, 9) for _ in range(system.n))
        rt = _verify.pipeline_roundtrip(system.with_tag(MatrixClass.G), x_seed)
        print(rt.render())
        if not rt.passed:
            code = EXIT_MISMATCH
    else:
        print(f"pipeline-roundtrip: skipped ({diag})")
    return code


def cmd_selftest(args: argparse.Namespace) -> int:
    ok = run_selftest(args.seed, args.count)
    return EXIT_OK if ok else EXIT_MISMATCH


def run_selftest(seed: int, count: int, log=print) -> bool:
    """Golden checks plus seeded randomized suites; True when everything passed."""
    from .matrix import system_from_dense

    ok = True

    def check(name: str, passed: bool) -> None:
        nonlocal ok
        log(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok = ok and passed

    golden = system_from_dense([[3, 5, 1, 7, -16]], [0], MatrixClass.GZ2)
    report = _verify.oracle_equivalence_check(golden)
    check("golden row: oracle equals builder", report.passed)
    built, trace = reduce_gz2_to_mc2(golden)
    check("golden row: dims 57x80", (built.m, built.n) == (57, 80))
    relations = [(g.t, g.j1, g.j2) for g in trace.gadgets]
    check(
        "golden row: gadget relations",
        relations
        == [(6, 1, 2), (7, 3, 4), (8, 1, 4), (9, 6, 7), (10, 2, 4), (11, 8, 9), (12, 10, 11)],
    )

    rng = random.Random(seed)
    equiv_fail = 0
    for _ in range(count):
        inst = _verify.random_gz2_system(rng)
        if not _verify.oracle_equivalence_check(inst).passed:
            equiv_fail += 1
    check(f"{count} random Gz2 instances: oracle equals builder", equiv_fail == 0)

    rt_fail = 0
    trips = max(1, count // 4)
    for _ in range(trips):
        inst = _verify.random_g_system(rng)
        x_seed = tuple(rng.randint(-9, 9) for _ in range(inst.n))
        if not _verify.pipeline_roundtrip(inst, x_seed).passed:
            rt_fail += 1
    check(f"{trips} random G instances: planted round trip", rt_fail == 0)

    uns_fail = 0
    trips = max(1, count // 10)
    for _ in range(trips):
        inst = _verify.random_unsolvable_g(rng)
        statuses = _verify.stage_solvability(inst)
        if any(status != _verify.UNSOLVABLE for _, status in statuses):
            uns_fail += 1
    check(f"{trips} unsolvable G instances: unsolvable at every stage", uns_fail == 0)
    return ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mc2reduce",
        description="Reduce integer linear systems to 2-commodity form, "
        "probe single entries of the reduced matrix, and verify the result.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="run one or more reduction stages on a file")
    p.add_argument("--from", dest="from_stage", choices=_STAGES[:3], required=True)
    p.add_argument("--to", dest="to_stage", choices=_STAGES[1:], required=True)
    p.add_argument("-o", "--output", help="output path (default: INPUT.TO)")
    p.add_argument("input")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("entry", help="print one entry of the reduced matrix")
    p.add_argument("input")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_entry)

    p = sub.add_parser("dims", help="print the reduced dimensions m' n'")
    p.add_argument("input")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("stats", help="print per-row counting tables")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="cross-check builder, oracle, and round trip")
    p.add_argument("input")
    p.add_argument("--against", help="reduced file to compare against the oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run golden and seeded randomized suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=25)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
