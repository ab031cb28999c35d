"""``qapsp`` command line: gen | run | fit | verify.

Every flag can also come from an environment variable named ``QAPSP_`` plus
the flag name in upper case with dashes as underscores (``--omega-model`` is
``QAPSP_OMEGA_MODEL``). A flag given on the command line wins.

Exit codes: 0 ok, 1 failed check (acceptance criterion or oracle mismatch),
2 usage, input or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import math
import os
import sys
from pathlib import Path

from .apsp import AlgoConfig
from .fit import InsufficientPointsError, fit_power_law
from .graph import KINDS, InstanceError, WeightedGraph, generate_instance
from .matmul import KERNELS
from .qmodel import GroverConfig
from .runner import ALGORITHMS, DEFAULT_ORACLE_CAP, IncompatibleError, dump_record, run_experiment

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env(name: str, cast, default):
    raw = os.environ.get("QAPSP_" + name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise UsageError(f"QAPSP_{name}={raw!r}: {exc}") from None


def _flag(raw: str) -> bool:
    if raw.lower() in ("1", "true", "yes", "on"):
        return True
    if raw.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean")


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=_env("SEED", int, 0))
    p.add_argument("--omega-model", type=float, default=_env("OMEGA_MODEL", float, 2.373))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qapsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a seeded random instance as JSON")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=_env("SEED", int, 0))
    g.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE",
                   help="instance parameter, e.g. L=2, c=4, density=0.3, undirected=true")
    g.add_argument("--out", help="output path (default: stdout)")

    r = sub.add_parser("run", help="run one algorithm on an instance file")
    r.add_argument("algorithm", choices=sorted(ALGORITHMS))
    r.add_argument("instance", help="instance JSON written by 'gen'")
    _common(r)
    r.add_argument("--kappa", type=int, default=_env("KAPPA", int, None))
    r.add_argument("--grover-constant", type=float, default=_env("GROVER_CONSTANT", float, 1.0))
    r.add_argument("--delta", type=float, default=_env("DELTA", float, 0.0))
    r.add_argument("--repetitions", type=int, default=_env("REPETITIONS", int, 1))
    r.add_argument("--mode", choices=("analytic", "trivial"), default=_env("MODE", str, "analytic"),
                   help="how (min, <=) products are executed and charged")
    r.add_argument("--kernel", choices=KERNELS, default=_env("KERNEL", str, "naive"))
    r.add_argument("--oracle-cap", type=int, default=_env("ORACLE_CAP", int, DEFAULT_ORACLE_CAP))
    r.add_argument("--timing", action="store_true", default=_env("TIMING", _flag, False),
                   help="include wall time in the record (breaks byte-identical output)")
    for knob in ("r", "d", "s", "ell"):
        r.add_argument(f"--{knob}", type=int, default=_env(knob.upper(), int, None),
                       help=f"override the planned {knob}")
    r.add_argument("--out", help="record JSON path (default: stdout)")
    r.add_argument("--ledger-csv", help="ledger CSV path (default: record path with .csv)")

    f = sub.add_parser("fit", help="fit a power law to a counter across run records")
    f.add_argument("records", nargs="+", help="record files or glob patterns")
    f.add_argument("--counter", default=_env("COUNTER", str, "quantum_queries"))
    f.add_argument("--out", help="CSV of (n, counter, fitted) rows")

    v = sub.add_parser("verify", help="run an acceptance block")
    v.add_argument("suite", choices=("oracles", "charges", "exponents", "formulas", "all"))
    v.add_argument("--config", help="tolerance file (default: the packaged acceptance.json)")
    return parser


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def cmd_gen(args) -> int:
    G = generate_instance(args.kind, args.n, args.seed, dict(args.param))
    _write(args.out, G.to_json() + "\n")
    return EXIT_OK


def cmd_run(args) -> int:
    G = WeightedGraph.from_json(Path(args.instance).read_text())
    cfg = AlgoConfig(
        grover=GroverConfig(c_g=args.grover_constant, delta=args.delta, seed=args.seed,
                            repetitions=args.repetitions),
        omega_model=args.omega_model, kernel=args.kernel, minle_mode=args.mode, seed=args.seed,
        kappa=args.kappa, r=args.r, d=args.d, s=args.s, ell=args.ell,
    )
    record, ledger = run_experiment(args.algorithm, G, cfg, oracle_cap=args.oracle_cap, timing=args.timing)
    _write(args.out, dump_record(record))
    csv_path = args.ledger_csv or (str(Path(args.out).with_suffix(".csv")) if args.out else None)
    if csv_path:
        _write(csv_path, ledger.to_csv())
    print(f"{record['algorithm']} n={G.n}: verdict {record['verdict']}", file=sys.stderr)
    return EXIT_FAIL if record["verdict"] == "mismatch" else EXIT_OK


def _load_records(patterns) -> list:
    paths = []
    for pat in patterns:
        hits = sorted(glob.glob(pat))
        paths.extend(hits if hits else [pat])
    records = []
    for p in dict.fromkeys(paths):
        records.append(json.loads(Path(p).read_text()))
    return records


def cmd_fit(args) -> int:
    records = _load_records(args.records)
    algos = {r.get("algorithm") for r in records}
    if len(algos) > 1:
        raise UsageError(f"records mix algorithms {sorted(map(str, algos))}")
    points = {}
    for rec in records:
        ledger = rec.get("ledger", {})
        if args.counter in ledger:
            value = ledger[args.counter]
        elif args.counter in ledger.get("analytic_by_label", {}):
            value = ledger["analytic_by_label"][args.counter]
        else:
            raise UsageError(f"counter {args.counter!r} missing from a record")
        points[rec["instance"]["n"]] = value
    ns = sorted(points)
    fit = fit_power_law(ns, [points[n] for n in ns], args.counter)
    if args.out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n", args.counter, "fitted"))
        for n in ns:
            w.writerow((n, points[n], f"{math.exp(fit.intercept) * n ** fit.slope:.6g}"))
        _write(args.out, buf.getvalue())
    print(fit.summary())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import load_config, run_suite

    results = run_suite(args.suite, load_config(args.config))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"gen": cmd_gen, "run": cmd_run, "fit": cmd_fit, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, InstanceError, IncompatibleError, InsufficientPointsError, ValueError,
            OSError, json.JSONDecodeError) as exc:
        print(f"qapsp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
