"""Command-line surface.

Machine-readable results go to stdout, diagnostics to stderr.  Exit codes:
0 success, 1 no synchronizing sequence, 2 usage or input error,
3 infrastructure (solver process) error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from syncword import aspenc, bench, satenc
from syncword.automaton import (
    generate_cerny,
    generate_random,
    parse_fa,
    parse_kiss2,
    serialize_fa,
    word_to_letters,
)
from syncword.driver import METHODS, SearchConfig, find_shortest
from syncword.errors import DecodeError, ParseError, SolverError, SoundnessError
from syncword.exact import check_synchronizable, greedy_sync

EXIT_OK = 0
EXIT_NO_SYNC = 1
EXIT_USAGE = 2
EXIT_INFRA = 3


def _load_fa(path: str):
    return parse_fa(Path(path).read_text())


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syncword",
        description="Shortest synchronizing sequences for finite automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="is the automaton synchronizable?")
    p.add_argument("fa")

    p = sub.add_parser("shortest", help="find a shortest synchronizing sequence")
    p.add_argument("fa")
    p.add_argument("--method", choices=METHODS, default="bfs")
    p.add_argument("--solver-cmd", help="external solver command with a {file} placeholder")
    p.add_argument("--initial-c", type=int, help="starting bound (default: ceil(2*sqrt(n)))")
    p.add_argument("--time-budget", type=float, help="seconds per solver call")
    p.add_argument("--legacy-syntax", action="store_true")

    p = sub.add_parser("greedy", help="greedy upper-bound synchronizing sequence")
    p.add_argument("fa")

    p = sub.add_parser("encode", help="emit a SAT or ASP encoding")
    enc_sub = p.add_subparsers(dest="target", required=True)
    q = enc_sub.add_parser("sat")
    q.add_argument("fa")
    q.add_argument("-c", type=int, required=True, dest="bound")
    q.add_argument("-o", dest="out", default="-")
    q = enc_sub.add_parser("asp")
    q.add_argument("fa")
    q.add_argument("--formulation", choices=aspenc.FORMULATIONS, required=True)
    q.add_argument("-c", type=int, required=True, dest="bound")
    q.add_argument("-o", dest="out", default="-")
    q.add_argument("--legacy-syntax", action="store_true")

    p = sub.add_parser("decode", help="decode an external solver model")
    dec_sub = p.add_subparsers(dest="target", required=True)
    q = dec_sub.add_parser("sat")
    q.add_argument("fa")
    q.add_argument("-c", type=int, required=True, dest="bound")
    q.add_argument("--model", required=True, help="file of signed literals (v-line payload)")

    p = sub.add_parser("gen", help="generate an automaton")
    gen_sub = p.add_subparsers(dest="family", required=True)
    q = gen_sub.add_parser("random")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--require-sync", action="store_true",
                   help="redraw with successive seeds until synchronizable")
    q = gen_sub.add_parser("cerny")
    q.add_argument("-n", type=int, required=True)

    p = sub.add_parser("import", help="import a KISS2 machine as native format")
    imp_sub = p.add_subparsers(dest="format", required=True)
    q = imp_sub.add_parser("kiss")
    q.add_argument("file")

    p = sub.add_parser("bench", help="seeded benchmark sweep")
    p.add_argument("--spec", required=True, help="n:k:count[,n:k:count...]")
    p.add_argument("--methods", required=True, help="comma-separated method list")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", default="-", help="output path (default stdout)")
    p.add_argument("--solver-cmd")
    p.add_argument("--time-budget", type=float)
    p.add_argument("--table", action="store_true", help="also print an aligned table to stderr")

    return parser


def _cmd_check(args) -> int:
    a = _load_fa(args.fa)
    if check_synchronizable(a):
        print("synchronizable")
        return EXIT_OK
    print("not synchronizable")
    return EXIT_NO_SYNC


def _cmd_shortest(args) -> int:
    a = _load_fa(args.fa)
    cfg = SearchConfig(
        method=args.method,
        initial_c=args.initial_c,
        solver_cmd=args.solver_cmd,
        time_budget=args.time_budget,
        legacy_syntax=args.legacy_syntax,
    )
    outcome = find_shortest(a, cfg)
    if outcome is None:
        print("not synchronizable")
        return EXIT_NO_SYNC
    print(f"length {outcome.length}")
    print(f"witness {word_to_letters(outcome.witness)}")
    for rec in outcome.calls:
        print(f"probe c={rec.c} {rec.verdict} {rec.wall_time * 1000:.1f}ms", file=sys.stderr)
    return EXIT_OK


def _cmd_greedy(args) -> int:
    a = _load_fa(args.fa)
    word = greedy_sync(a)
    if word is None:
        print("not synchronizable")
        return EXIT_NO_SYNC
    print(f"length {len(word)}")
    print(f"witness {word_to_letters(word)}")
    return EXIT_OK


def _cmd_encode(args) -> int:
    a = _load_fa(args.fa)
    if args.target == "sat":
        text = satenc.write_dimacs(satenc.encode_sat(a, args.bound))
    else:
        text = aspenc.emit(a, args.formulation, args.bound, args.legacy_syntax).text
    _emit(text, args.out)
    return EXIT_OK


def _cmd_decode(args) -> int:
    a = _load_fa(args.fa)
    model = satenc.parse_model_literals(Path(args.model).read_text())
    word = satenc.decode_model(a, args.bound, model)
    print(f"witness {word_to_letters(word)}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.family == "cerny":
        sys.stdout.write(serialize_fa(generate_cerny(args.n)))
        return EXIT_OK
    seed = args.seed
    a = generate_random(args.n, args.k, seed)
    if args.require_sync:
        while not check_synchronizable(a):
            seed += 1
            a = generate_random(args.n, args.k, seed)
        if seed != args.seed:
            print(f"# drew seed {seed} after discarding non-synchronizable draws",
                  file=sys.stderr)
    sys.stdout.write(serialize_fa(a))
    return EXIT_OK


def _cmd_import(args) -> int:
    a = parse_kiss2(Path(args.file).read_text())
    sys.stdout.write(serialize_fa(a))
    return EXIT_OK


def _parse_bench_spec(text: str) -> list[bench.BenchCell]:
    cells = []
    for chunk in text.split(","):
        parts = chunk.split(":")
        if len(parts) == 2 and parts[0] == "cerny":
            cells.append(bench.BenchCell(int(parts[1]), 2, 1, family="cerny"))
        elif len(parts) == 3:
            cells.append(bench.BenchCell(int(parts[0]), int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"bad bench spec cell {chunk!r}, expected n:k:count or cerny:n")
    return cells


def _cmd_bench(args) -> int:
    cells = _parse_bench_spec(args.spec)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    csv_text = bench.bench_run(cells, methods, args.seed,
                               solver_cmd=args.solver_cmd, time_budget=args.time_budget)
    _emit(csv_text, args.csv)
    if args.table:
        print(bench.render_table(csv_text), file=sys.stderr)
    return EXIT_OK


_HANDLERS = {
    "check": _cmd_check,
    "shortest": _cmd_shortest,
    "greedy": _cmd_greedy,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "gen": _cmd_gen,
    "import": _cmd_import,
    "bench": _cmd_bench,
}


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except (ParseError, DecodeError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, SoundnessError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFRA


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
