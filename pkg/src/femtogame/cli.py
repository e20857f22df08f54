"""Command-line front end: ``sweep``, ``inspect`` and ``dynalloc``.

Exit codes: 0 success, 1 configuration or input error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .access import Role, fap_gate
from .dynalloc import ChannelPool, blocked, run_trace
from .experiment import COLUMNS, DEFAULT_GRIDS, SweepError, SweepSpec, generate_drop, run_sweep, summarize
from .game import NoPureEquilibrium, NonConvergence, solve, utility_table
from .model import ConfigError, ScenarioConfig, load_scenario

DYNALLOC_COLUMNS = (
    "step", "voice_demand", "data_demand", "effective_voice", "effective_data",
    "voice_lent_to_data", "data_lent_to_voice", "voice_blocked", "data_blocked",
)


class InputError(ValueError):
    pass


def scenario_hash(scenario: ScenarioConfig) -> str:
    blob = json.dumps(scenario.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError("--grid", f"bad value list {text!r}") from exc


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def cmd_sweep(args) -> int:
    scenario = load_scenario(args.config)
    grid = _parse_grid(args.grid) if args.grid else tuple(DEFAULT_GRIDS[args.kind])
    spec = SweepSpec(args.kind, grid, args.drops, args.seed)
    try:
        spec.check(scenario)
    except ValueError as exc:
        raise ConfigError("--grid/--drops/--seed", str(exc)) from exc
    rows = run_sweep(scenario, spec, workers=args.workers)
    metadata = {
        "tool": "femtogame",
        "version": __version__,
        "scenario_sha256": scenario_hash(scenario),
        "scenario": scenario.to_dict(),
        "kind": spec.kind,
        "grid": list(spec.grid),
        "n_drops": spec.n_drops,
        "seed": spec.seed,
        "columns": list(COLUMNS),
    }
    records = [[getattr(r, c) for c in COLUMNS] for r in rows]
    if args.format == "csv":
        _emit(_csv_text(COLUMNS, records), args.out)
        if args.out is not None:
            Path(args.out + ".meta.json").write_text(json.dumps(metadata, indent=2) + "\n", encoding="utf-8")
    else:
        doc = {"metadata": metadata, "rows": [asdict(r) for r in rows]}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    digest = json.dumps(summarize(rows), indent=2)
    print(digest, file=sys.stdout if args.out is not None else sys.stderr)
    return 0


def inspect_document(scenario: ScenarioConfig, seed: int, drop_index: int) -> dict:
    drop = generate_drop(scenario, seed, drop_index)
    game = scenario.game
    table = utility_table(drop, game)
    report = solve(drop, game)
    ues = []
    for u in drop.ues:
        entry = {
            "id": u.id,
            "category": u.category.value,
            "role": u.role.value,
            "x_m": u.position.x,
            "y_m": u.position.y,
            "gain_macro_db": u.gain_macro.gain_db,
            "gain_fap_db": u.gain_fap.gain_db,
            "rsp_macro_dbm": u.rsp_macro_dbm,
            "rsp_fap_dbm": u.rsp_fap_dbm,
            "in_p_set": u.in_p_set,
            "rate_bps": report.rates.ue_rates_bps[u.id],
        }
        if u.role is not Role.SUBSCRIBER:
            entry["fap_gate"] = fap_gate(u, scenario.radio).value
        ues.append(entry)
    return {
        "metadata": {
            "tool": "femtogame",
            "version": __version__,
            "scenario_sha256": scenario_hash(scenario),
            "seed": seed,
            "drop_index": drop_index,
        },
        "scenario": scenario.to_dict(),
        "counts": {"X": drop.x_count, "Z": drop.z_count, "Q": drop.q_count, "D": drop.d_count},
        "noise_dbm": drop.noise_dbm,
        "ues": ues,
        "utilities": [{"m": m, "u0_bps": table.u0[m], "u1_bps": table.u1[m]} for m in range(table.z + 1)],
        "ne_counts": list(report.ne_counts),
        "selected": {
            "m": report.selected_m,
            "profile": list(report.selected_profile.choices),
            "revenue": report.revenue,
            "rates": {k: v for k, v in asdict(report.rates).items() if k != "ue_rates_bps"},
        },
    }


def cmd_inspect(args) -> int:
    scenario = load_scenario(args.config)
    doc = inspect_document(scenario, args.seed, args.drop_index)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def read_trace(path: str) -> list[tuple[int, int]]:
    demands = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            v, d = int(parts[0]), int(parts[1])
            if v < 0 or d < 0:
                raise ValueError
        except ValueError:
            raise InputError(f"{path}:{lineno}: expected two non-negative integers, got {line!r}") from None
        demands.append((v, d))
    return demands


def cmd_dynalloc(args) -> int:
    demands = read_trace(args.trace)
    if args.total < 1 or not 0 <= args.voice_owned <= args.total:
        raise ConfigError("--total/--voice-owned", "need total >= 1 and 0 <= voice-owned <= total")
    pool = ChannelPool.split(args.total, args.voice_owned)
    rows = []
    for step, p in enumerate(run_trace(pool, demands)):
        vb, db = blocked(p)
        rows.append([
            step, p.voice_demand, p.data_demand, p.effective_voice, p.effective_data,
            p.voice_lent_to_data, p.data_lent_to_voice, vb, db,
        ])
    _emit(_csv_text(DYNALLOC_COLUMNS, rows), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="femtogame", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="run a beta, distance or price sweep")
    sw.add_argument("kind", choices=["beta", "distance", "price"])
    sw.add_argument("--config", help="JSON scenario file (missing fields take defaults)")
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--drops", type=int, default=1000)
    sw.add_argument("--grid", help="comma-separated grid values")
    sw.add_argument("--out", help="output path (default: stdout)")
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.add_argument("--workers", type=int, default=1, help="worker processes")
    sw.set_defaults(func=cmd_sweep)

    ins = sub.add_parser("inspect", help="dump one drop and its equilibrium as JSON")
    ins.add_argument("--config")
    ins.add_argument("--seed", type=int, default=0)
    ins.add_argument("--drop-index", type=int, default=0)
    ins.add_argument("--out")
    ins.set_defaults(func=cmd_inspect)

    dy = sub.add_parser("dynalloc", help="replay a voice/data demand trace")
    dy.add_argument("trace", help='text file, one "voice_demand data_demand" pair per line')
    dy.add_argument("--out")
    dy.add_argument("--total", type=int, default=30)
    dy.add_argument("--voice-owned", type=int, default=15)
    dy.set_defaults(func=cmd_dynalloc)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SweepError, NoPureEquilibrium, NonConvergence) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
