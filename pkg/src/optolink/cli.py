"""``optolink`` command-line interface.

Commands::

    optolink tables
    optolink compare --channels 128
    optolink simulate -f scenario.json
    optolink sweep -f scenario.json --axis bitwidth --values 32,64,128
    optolink ntt-selftest --max-n 1024

Reports go to ``--out`` (default ``$OPTOLINK_OUT_DIR`` or ``./optolink_out``)
as CSV, JSON or both.  The first line of every CSV and the ``generated`` key
of every JSON file hold a timestamp; everything else is deterministic.

Exit codes: 0 success, 1 model or regression failure, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import report
from .errors import OptoLinkError, ScenarioError
from .link import PhotonicParams
from .scenario import load_scenario, scenario_to_config
from .sim import SWEEP_AXES, SimResult, run_config, sweep

OUT_ENV = "OPTOLINK_OUT_DIR"
DEFAULT_OUT = "optolink_out"

EXIT_OK, EXIT_MODEL, EXIT_USAGE = 0, 1, 2


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    now = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return now.isoformat(timespec="seconds")


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        fields = list(rows[0])
        for row in rows[1:]:
            fields += [k for k in row if k not in fields]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def write_report(out_dir: Path, stem: str, command: str, rows: list[dict], fmt: str, payload=None) -> list[Path]:
    """Write ``rows`` as ``stem.csv`` and/or ``stem.json``; returns the paths written.

    ``payload`` replaces ``rows`` in the JSON file when the JSON form carries
    more structure than the flat CSV rows.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    stamp = _timestamp()
    written = []
    if fmt in ("csv", "both"):
        path = out_dir / f"{stem}.csv"
        path.write_text(f"# generated: {stamp}\n" + _csv_text(rows))
        written.append(path)
    if fmt in ("json", "both"):
        path = out_dir / f"{stem}.json"
        doc = {"generated": stamp, "command": command, "payload": rows if payload is None else payload}
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written


def _params(pairs: list[str] | None) -> PhotonicParams:
    overrides = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ScenarioError(f"--set expects key=value, got {pair!r}")
        try:
            overrides[key] = float(value)
        except ValueError as exc:
            raise ScenarioError(f"--set {key}: {value!r} is not a number") from exc
    try:
        return PhotonicParams.from_dict(overrides)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc


def _out_dir(args) -> Path:
    if args.out:
        return Path(args.out)
    return Path(os.environ.get(OUT_ENV, DEFAULT_OUT))


def cmd_tables(args) -> int:
    params = _params(args.set)
    out, fmt = _out_dir(args), args.format or "both"
    t3, c3 = report.table3(params)
    t4, c4 = report.table4(params)
    area, ca = report.area_table()
    write_report(out, "table3_bitrate", "tables", t3, fmt)
    write_report(out, "table4_power", "tables", t4, fmt)
    write_report(out, "area", "tables", area, fmt)
    checks = [c.row() for c in c3 + c4 + ca]
    write_report(out, "tables_checks", "tables", checks, fmt)
    failed = [c for c in checks if not c["passed"]]
    for c in failed:
        print(f"MISMATCH {c['check']}: expected {c['expected']}, got {c['actual']} ({c['rule']})", file=sys.stderr)
    print(f"tables: {len(checks) - len(failed)}/{len(checks)} published values reproduced -> {out}")
    return EXIT_MODEL if failed else EXIT_OK


def cmd_compare(args) -> int:
    if args.channels < 1:
        raise ScenarioError("--channels must be >= 1")
    params = _params(args.set)
    rows = report.compare(args.channels, params)
    write_report(_out_dir(args), "compare", "compare", rows, args.format or "both")
    for r in rows:
        mark = "meets" if r["meets"] else "short"
        print(f"{r['name']:<11} {r['required_GBps']:>8g} GB/s  {mark:<5}  min channels {r['min_channels']}")
    return EXIT_OK


def _sim_row(result: SimResult, **extra) -> dict:
    row = dict(extra)
    row.update(
        load_time_s=result.load_time,
        compute_time_s=result.compute_time,
        store_time_s=result.store_time,
        transfer_time_s=result.transfer_time,
        total_time_s=result.total_time,
        bottleneck=result.bottleneck,
        stall_count=result.stall_count,
        num_transforms=result.num_transforms,
        bytes_moved=result.bytes_moved,
    )
    for wg, u in sorted(result.channel_utilization.items()):
        row[f"utilization_wg{wg}"] = u
    if result.perf is not None:
        p = result.perf
        row.update(
            bitwidth=p.bitwidth,
            cores=p.cores,
            optolink_bandwidth_TBps=p.aggregate_bandwidth / 1000.0,
            electrical_bitrate_GBps=p.electrical_bitrate,
            optolink_power_W=p.power["total"],
            electrical_power_uW=p.electrical_power,
            optolink_area_mm2=p.area["total"],
        )
    return row


def _scenario(args) -> dict:
    return load_scenario(args.file)


def cmd_simulate(args) -> int:
    doc = _scenario(args)
    cfg = scenario_to_config(doc)
    result = run_config(cfg)
    fmt = args.format or doc.get("output", {}).get("format", "both")
    write_report(_out_dir(args), "simulate", "simulate", [_sim_row(result)], fmt, payload=result.to_dict())
    print(
        f"simulate: load {result.load_time:.6g} s, compute {result.compute_time:.6g} s, "
        f"store {result.store_time:.6g} s, total {result.total_time:.6g} s, bottleneck={result.bottleneck}"
    )
    return EXIT_OK


def _parse_values(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ScenarioError(f"--values must be comma separated integers, got {text!r}") from exc


def cmd_sweep(args) -> int:
    doc = _scenario(args)
    cfg = scenario_to_config(doc)
    spec = doc.get("sweep", {})
    axis = args.axis or spec.get("axis")
    values = _parse_values(args.values) if args.values is not None else spec.get("values")
    if axis is None or values is None:
        raise ScenarioError("sweep needs an axis and values (scenario 'sweep' section or --axis/--values)")
    results = sweep(cfg, axis, values, max_workers=args.jobs)
    rows = [_sim_row(r, axis=axis, value=v) for v, r in zip(values, results)]
    payload = {"axis": axis, "values": values, "results": [r.to_dict() for r in results]}
    fmt = args.format or doc.get("output", {}).get("format", "both")
    write_report(_out_dir(args), "sweep", "sweep", rows, fmt, payload=payload)
    for row in rows:
        print(f"{axis}={row['value']}: total {row['total_time_s']:.6g} s, bottleneck={row['bottleneck']}")
    return EXIT_OK


def cmd_ntt_selftest(args) -> int:
    n = args.max_n
    if n < 1 or n & (n - 1):
        raise ScenarioError(f"--max-n must be a power of two, got {n}")
    rows = report.ntt_selftest(n, seed=args.seed, inject_fault=args.inject_fault)
    write_report(_out_dir(args), "ntt_selftest", "ntt-selftest", rows, args.format or "both")
    ok = all(r["passed"] for r in rows)
    for r in rows:
        print(f"n={r['n']:<6} {'pass' if r['passed'] else 'FAIL'}")
    print(f"ntt-selftest: {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_MODEL


def build_parser() -> argparse.ArgumentParser:
    def output_options(default):
        opts = argparse.ArgumentParser(add_help=False)
        opts.add_argument("--out", default=default, help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
        opts.add_argument("--format", default=default, choices=("csv", "json", "both"), help="report format (default both)")
        return opts

    # subcommands must not reset options given before the subcommand name
    common = output_options(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="optolink", description="OptoLink photonic interconnect models", parents=[output_options(None)]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[common], help="regenerate bitrate, power and area tables")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a photonic parameter")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("compare", parents=[common], help="check accelerator bandwidth requirements")
    p.add_argument("--channels", type=int, required=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a photonic parameter")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", parents=[common], help="simulate one scenario")
    p.add_argument("-f", "--file", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="sweep one scenario axis")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("--axis", choices=SWEEP_AXES)
    p.add_argument("--values", help="comma separated integers")
    p.add_argument("--jobs", type=int, default=None, help="evaluate sweep points in parallel")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ntt-selftest", parents=[common], help="run the NTT property suite")
    p.add_argument("--max-n", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help="corrupt the twiddle cache (negative control)")
    p.set_defaults(func=cmd_ntt_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"optolink: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OptoLinkError, ValueError) as exc:
        print(f"optolink: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
