"""Command-line surface: simplify / gendb / check / gen / convert.

Exit codes: 0 success, 1 usage or IO error, 2 post-simplify verification
failure, 3 counterexample found by `check`, 4 inconclusive `check`.
"""

from __future__ import annotations

import argparse
import sys

from . import benchgen, equiv, fundb
from .core import Circuit, CircuitError
from .formats import read_aiger, read_bench, write_aiger_ascii, write_bench
from .rewrite import RewriteConfig, simplify

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAIL = 2
EXIT_NOT_EQUIV = 3
EXIT_INCONCLUSIVE = 4


# ---------------------------------------------------------------- file IO

def detect_basis(path: str) -> str:
    """Basis from extension, falling back to content sniffing."""
    low = path.lower()
    if low.endswith(".bench"):
        return "BENCH"
    if low.endswith((".aag", ".aig")):
        return "AIG"
    try:
        with open(path, "rb") as fh:
            head = fh.read(4)
    except OSError:
        return "BENCH"
    return "AIG" if head[:3] in (b"aag", b"aig") else "BENCH"


def read_circuit(path: str) -> Circuit:
    if detect_basis(path) == "AIG":
        with open(path, "rb") as fh:
            c = read_aiger(fh.read())
    else:
        with open(path, "r") as fh:
            c = read_bench(fh.read())
    if not c.name:
        c.name = path
    return c


def write_circuit(circuit: Circuit, path: str) -> None:
    low = path.lower()
    if low.endswith(".aig"):
        raise CircuitError("binary AIGER output is not supported; use .aag")
    if low.endswith(".aag"):
        if circuit.basis != "AIG":
            circuit = equiv.convert(circuit, "AIG")
        text = write_aiger_ascii(circuit)
    else:
        if circuit.basis != "BENCH":
            circuit = equiv.convert(circuit, "BENCH")
        text = write_bench(circuit)
    with open(path, "w") as fh:
        fh.write(text)


def _target_basis(path: str, override: str) -> str:
    if override and override != "auto":
        return override.upper()
    return detect_basis(path)


# ------------------------------------------------------------- subcommands

def cmd_simplify(args) -> int:
    with open(args.db, "rb") as fh:
        db = fundb.load_db(fh)
    circuit = read_circuit(getattr(args, "in"))
    basis = args.basis.upper() if args.basis != "auto" else circuit.basis
    if basis != db.basis:
        raise CircuitError(
            f"database basis {db.basis} does not match circuit basis {basis}")
    if circuit.basis != basis:
        circuit = equiv.convert(circuit, basis)
    original = circuit.copy()
    config = RewriteConfig(database=db, iterations=args.iterations,
                           seed=args.seed)
    report = simplify(circuit, config)
    write_circuit(circuit, args.out)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.format() + "\n")
    print(f"{getattr(args, 'in')}: size {report.initial_size}"
          f" -> {report.final_size}")
    if args.verify != "off":
        verdict = equiv.check_equiv(original, circuit, mode=args.verify,
                                    seed=args.seed)
        if verdict.status == "counterexample":
            print(f"VERIFICATION FAILED: {verdict.counterexample}",
                  file=sys.stderr)
            return EXIT_VERIFY_FAIL
        print(f"verified ({args.verify}): {verdict.status}")
    return EXIT_OK


def cmd_gendb(args) -> int:
    db = fundb.build_database(args.basis.upper(), args.max_size,
                              time_budget=args.time_budget)
    with open(args.out, "wb") as fh:
        fundb.save_db(db, fh)
    if args.stats:
        for size, row in fundb.db_stats(db).items():
            print(f"{size}: {row['classes']:,} classes,"
                  f" {row['functions']:,} functions")
    return EXIT_OK


def cmd_check(args) -> int:
    c1 = read_circuit(args.a)
    c2 = read_circuit(args.b)
    if args.cnf:
        with open(args.cnf, "w") as fh:
            fh.write(equiv.export_cnf(equiv.miter(c1, c2)))
    verdict = equiv.check_equiv(c1, c2, mode=args.mode,
                                vectors=args.vectors, seed=args.seed)
    if verdict.status == "equal":
        print("equal")
        return EXIT_OK
    if verdict.status == "counterexample":
        print("counterexample " + "".join(map(str, verdict.counterexample)))
        return EXIT_NOT_EQUIV
    print("inconclusive")
    return EXIT_INCONCLUSIVE


def _read_edges(path: str) -> str:
    with open(path, "r") as fh:
        return fh.read()


def _build_family(args) -> Circuit:
    fam = args.family.replace("-", "_")
    p = args.params
    if fam == "sum":
        return benchgen.gen_sum(int(p[0]))
    if fam == "atleast":
        return benchgen.gen_atleast(int(p[0]), int(p[1]))
    if fam == "atmost":
        return benchgen.gen_atmost(int(p[0]), int(p[1]))
    if fam == "pigeonhole":
        return benchgen.gen_pigeonhole(int(p[0]), int(p[1]), int(p[2]))
    if fam == "clique":
        nv = int(p[2]) if len(p) > 2 else None
        return benchgen.gen_clique(_read_edges(p[0]), int(p[1]),
                                   n_vertices=nv)
    if fam == "even_colouring":
        return benchgen.gen_even_colouring(_read_edges(p[0]))
    if fam == "multiplier":
        return benchgen.gen_multiplier(int(p[0]), args.method)
    if fam == "factorization":
        return benchgen.gen_factorization(int(p[0]))
    if fam == "miter":
        return benchgen.gen_miter_family(p[0], int(p[1]))
    raise CircuitError(f"unknown family {args.family!r}")


def cmd_gen(args) -> int:
    circuit = _build_family(args)
    if args.basis != "auto" and circuit.basis != args.basis.upper():
        circuit = equiv.convert(circuit, args.basis.upper())
    write_circuit(circuit, args.out)
    print(f"{args.out}: {len(circuit.inputs)} inputs,"
          f" {len(circuit.outputs)} outputs, {circuit.size} gates")
    return EXIT_OK


def cmd_convert(args) -> int:
    circuit = read_circuit(getattr(args, "in"))
    basis = _target_basis(args.out, args.basis)
    if circuit.basis != basis:
        circuit = equiv.convert(circuit, basis)
    write_circuit(circuit, args.out)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gatesimp",
        description="Boolean circuit simplification via a database of"
                    " (nearly) optimal small subcircuits.")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker cap (currently single-threaded)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simplify", help="reduce the gate count of a circuit")
    p.add_argument("--in", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--db", required=True, metavar="PATH")
    p.add_argument("--iterations", type=int, default=5)
    p.add_argument("--basis", choices=["auto", "aig", "bench", "AIG", "BENCH"],
                   default="auto")
    p.add_argument("--report", metavar="PATH")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", choices=["exhaustive", "random", "off"],
                   default="off")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("gendb", help="build the replacement database")
    p.add_argument("--basis", required=True,
                   choices=["bench", "aig", "BENCH", "AIG"])
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--time-budget", type=float, default=None,
                   metavar="SECONDS")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_gendb)

    p = sub.add_parser("check", help="equivalence-check two circuit files")
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    p.add_argument("--mode", choices=["exhaustive", "random"],
                   default="exhaustive")
    p.add_argument("--vectors", type=int, default=equiv.DEFAULT_RANDOM_VECTORS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cnf", metavar="PATH",
                   help="also dump the miter as DIMACS CNF")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a benchmark circuit")
    p.add_argument("family",
                   choices=["sum", "atleast", "atmost", "pigeonhole",
                            "clique", "even-colouring", "multiplier",
                            "factorization", "miter"])
    p.add_argument("params", nargs="*")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--basis", choices=["auto", "aig", "bench", "AIG", "BENCH"],
                   default="auto")
    p.add_argument("--method", choices=["schoolbook", "karatsuba"],
                   default="schoolbook")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("convert", help="convert between BENCH and AIGER")
    p.add_argument("--in", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--basis", choices=["auto", "aig", "bench", "AIG", "BENCH"],
                   default="auto")
    p.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (CircuitError, OSError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
