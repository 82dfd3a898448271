"""Command-line surface: alloc, worst, bounds, scenario, oracle, hilbert.

Exit codes: 0 on success, 1 on input errors (bad flags, malformed files,
capacity or representability violations), 2 on internal invariant
violations.  Exact rationals cross the JSON/CSV boundary as "p/q" strings;
phi is printed with 4 decimals in tables and 9 decimals in JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .allocator import (
    AllocationRequest,
    AllocationState,
    minimal_city_level,
    round_up_size,
)
from .curve import build_order, generate_moves
from .oracle import SEARCH_GUARD, default_boxes, optimal_town_bruteforce, optimal_town_total
from .render import allocation_svg, curve_svg, worst_plot
from .scenarios import SCENARIOS
from .worstcase import competitive_factor, enumerate_worst, worst_table


def _json_phi(value: float) -> float:
    return round(value, 9)


# ---------------------------------------------------------------- alloc

def _parse_city_size(raw) -> Fraction:
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    if isinstance(raw, str):
        return Fraction(raw)
    raise ValueError(
        "city sizes must be exact rational strings like \"1/4\" (floats lose exactness)"
    )


def _parse_town_size(raw) -> int:
    if isinstance(raw, int) and not isinstance(raw, bool):
        return raw
    if isinstance(raw, str) and raw.strip().lstrip("-").isdigit():
        return int(raw)
    raise ValueError("town sizes must be integers")


def _load_sequence(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed JSON in {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError("sequence file must be a JSON object")
    mode = data.get("mode")
    if mode not in ("city", "town"):
        raise ValueError("mode must be \"city\" or \"town\"")
    requests = data.get("requests")
    if not isinstance(requests, list):
        raise ValueError("requests must be a list")
    for entry in requests:
        if not isinstance(entry, dict) or "id" not in entry or "size" not in entry:
            raise ValueError("each request needs an id and a size")
    return data


def _cmd_alloc(args) -> int:
    data = _load_sequence(args.input)
    mode = data["mode"]
    resolution = data.get("resolution")
    if resolution is not None and (isinstance(resolution, bool) or not isinstance(resolution, int)):
        raise ValueError("resolution must be an integer")
    originals: list = []

    if mode == "city":
        sizes = [_parse_city_size(e["size"]) for e in data["requests"]]
        if args.round_up:
            if resolution is None:
                raise ValueError("round-up requires explicit resolution")
            originals = list(sizes)
            sizes = [round_up_size(size, resolution) for size in sizes]
        level = resolution if resolution is not None else minimal_city_level(sizes)
        if level < 0:
            raise ValueError("invalid level")
        state = AllocationState("city", level=level)
        capacity = 1
    else:
        if resolution is None:
            raise ValueError("town mode requires resolution (grid side N)")
        sizes = [_parse_town_size(e["size"]) for e in data["requests"]]
        state = AllocationState("town", grid=resolution)
        capacity = resolution * resolution

    if "capacity" in data and data["capacity"] != capacity:
        raise ValueError(f"capacity must be {capacity} for this mode and resolution")

    region_entries = []
    for i, (entry, size) in enumerate(zip(data["requests"], sizes)):
        region = state.allocate(AllocationRequest(str(entry["id"]), size))
        record = {
            "id": region.id,
            "start": region.start,
            "end": region.end,
            "level": region.level,
            "size": str(Fraction(size)),
            "c": str(region.total),
            "phi": _json_phi(region.phi),
        }
        if originals and originals[i] != size:
            record["requested"] = str(originals[i])
            print(
                f"round-up: request {region.id} padded from {originals[i]} to {size}",
                file=sys.stderr,
            )
        region_entries.append(record)

    result = {
        "mode": mode,
        "capacity": capacity,
        "resolution": state.level if mode == "city" else state.grid_size,
        "round_up": bool(args.round_up),
        "requests": data["requests"],
        "regions": region_entries,
        "max_phi": _json_phi(state.max_phi()) if state.regions else None,
    }
    payload = json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(allocation_svg(state.regions, state.grid_size))
    return 0


def read_allocation(path: str) -> dict:
    """Load an allocation file, reviving exact rationals."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for record in data.get("regions", []):
        record["c"] = Fraction(record["c"])
        record["size"] = Fraction(record["size"])
    return data


# ---------------------------------------------------------------- worst

def _worst_rows(mode: str, n_max: int, level, threads: int):
    if level is not None:
        records = {n: enumerate_worst(n, mode, level=level, max_n=n_max)
                   for n in range(1, n_max + 1)}
    else:
        table = worst_table(mode, max_n=n_max)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(table.record, range(1, n_max + 1)))
        records = {n: table.record(n) for n in range(1, n_max + 1)}
    rows = []
    for n in range(1, n_max + 1):
        blow = (
            2.0 * float(records[n + 2].total) / float(n) ** 2.5
            if n + 2 <= n_max
            else None
        )
        rows.append((n, records[n].total, records[n].phi, blow))
    return rows


def _cmd_worst(args) -> int:
    if args.n_max < 1:
        raise ValueError("n-max must be at least 1")
    rows = _worst_rows(args.mode, args.n_max, args.level, args.threads)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["n", "c_exact", "phi", "Phi"])
    for n, total, phi_value, blow in rows:
        writer.writerow(
            [n, str(total), f"{phi_value:.4f}", "" if blow is None else f"{blow:.4f}"]
        )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buffer.getvalue())
        print(f"wrote {len(rows)} rows to {args.csv}")
    else:
        sys.stdout.write(buffer.getvalue())
    if args.plot:
        reference = max(
            [blow for *_, blow in rows if blow is not None]
            or [phi_value for _, _, phi_value, _ in rows]
        )
        worst_plot(
            [r[0] for r in rows],
            [r[2] for r in rows],
            [r[3] for r in rows],
            args.mode,
            reference,
            args.plot,
        )
        print(f"wrote figure to {args.plot}")
    return 0


# ---------------------------------------------------------------- bounds

def _cmd_bounds(args) -> int:
    report = competitive_factor(args.mode, args.level)
    if args.json:
        payload = {
            "mode": report.mode,
            "analysis_level": report.analysis_level,
            "upper": _json_phi(report.upper),
            "lower": _json_phi(report.lower),
            "factor": _json_phi(report.factor),
            "binding": report.binding,
            "branches": [
                {"name": name, "factor": _json_phi(value)}
                for name, value in report.branches
            ],
            "variants": [
                {
                    "name": v.name,
                    "lower": _json_phi(v.lower_bound),
                    "factor": _json_phi(v.factor),
                    "note": v.note,
                }
                for v in report.variants
            ],
            "rows": [
                {
                    "n": row.n,
                    "c": str(row.total),
                    "phi": _json_phi(row.phi),
                    "Phi": None if row.blowup is None else _json_phi(row.blowup),
                    "rho": None if row.rho is None else _json_phi(row.rho),
                }
                for row in report.rows
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"upper={report.upper:.4f} lower={report.lower:.4f} factor={report.factor:.4f}")
    print(f"binding: {report.binding}")
    for name, value in report.branches:
        print(f"branch {name} = {value:.4f}")
    for variant in report.variants:
        print(
            f"variant {variant.name}: lower={variant.lower_bound:.4f} "
            f"factor={variant.factor:.4f} ({variant.note})"
        )
    return 0


# ---------------------------------------------------------------- scenario

def _cmd_scenario(args) -> int:
    report = SCENARIOS[args.name]()
    if args.json:
        payload = {
            "scenario": report.scenario,
            "phi_values": {k: _json_phi(v) for k, v in report.phi_values.items()},
            "branch_ratios": {k: _json_phi(v) for k, v in report.branch_ratios.items()},
            "ratio": _json_phi(report.ratio),
            "note": report.note,
        }
        print(json.dumps(payload, indent=2))
        return 0
    for key, value in report.phi_values.items():
        print(f"phi {key} = {value:.6f}")
    for key, value in report.branch_ratios.items():
        print(f"branch {key} = {value:.6f}")
    print(f"ratio = {report.ratio:.6f}")
    if report.note:
        print(f"note: {report.note}")
    return 0


# ---------------------------------------------------------------- oracle

def _parse_box(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ValueError("box must look like WxH, e.g. 4x5")
    return int(parts[0]), int(parts[1])


def _cmd_oracle(args) -> int:
    box = _parse_box(args.box) if args.box else None
    if box is None:
        searched = []
        skipped = []
        for candidate in default_boxes(args.n):
            area = candidate[0] * candidate[1]
            (skipped if math.comb(area, args.n) > SEARCH_GUARD else searched).append(candidate)
        print(
            "boxes:",
            " ".join(f"{w}x{h}" for w, h in searched),
            ("| skipped (guard): " + " ".join(f"{w}x{h}" for w, h in skipped))
            if skipped
            else "",
        )
    total, witness = optimal_town_bruteforce(args.n, box)
    print(f"n={args.n} c={total}")
    print("witness:", " ".join(f"({x},{y})" for x, y in sorted(witness.points)))
    try:
        reference = optimal_town_total(args.n)
    except ValueError:
        print("reference: none (n out of embedded table)")
        return 0
    print(f"reference: {reference}")
    if total != reference:
        print("MISMATCH between search and embedded table", file=sys.stderr)
        return 2
    print("match: yes")
    return 0


# ---------------------------------------------------------------- hilbert

def _cmd_hilbert(args) -> int:
    if args.format == "moves":
        text = generate_moves(args.level).moves + "\n"
    elif args.format == "coords":
        order = build_order(args.level)
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["index", "x", "y"])
        for k in range(order.count):
            writer.writerow([k, int(order.xs[k]), int(order.ys[k])])
        text = buffer.getvalue()
    else:
        text = curve_svg(build_order(args.level))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertalloc",
        description="Hilbert-curve online shape allocation and its analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_alloc = sub.add_parser("alloc", help="run the online allocator on a request file")
    p_alloc.add_argument("--input", required=True, help="sequence JSON file")
    p_alloc.add_argument("--output", help="allocation JSON file (default stdout)")
    p_alloc.add_argument("--svg", help="render the allocation to an SVG file")
    p_alloc.add_argument(
        "--round-up",
        action="store_true",
        help="pad city sizes to the next representable multiple (reported)",
    )
    p_alloc.set_defaults(handler=_cmd_alloc)

    p_worst = sub.add_parser("worst", help="enumerate worst window shapes")
    p_worst.add_argument("--mode", choices=("city", "town"), required=True)
    p_worst.add_argument("--n-max", type=int, default=65)
    p_worst.add_argument("--level", type=int, default=None,
                         help="override the per-n refinement level")
    p_worst.add_argument("--csv", help="CSV output path (default stdout)")
    p_worst.add_argument("--plot", help="save a phi/blow-up chart (png or svg)")
    p_worst.add_argument("--threads", type=int, default=1)
    p_worst.set_defaults(handler=_cmd_worst)

    p_bounds = sub.add_parser("bounds", help="competitive-factor report")
    p_bounds.add_argument("--mode", choices=("city", "town"), required=True)
    p_bounds.add_argument("--level", type=int, default=2, help="analysis level k")
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(handler=_cmd_bounds)

    p_scenario = sub.add_parser("scenario", help="adversary lower-bound scenarios")
    p_scenario.add_argument("name", choices=sorted(SCENARIOS))
    p_scenario.add_argument("--json", action="store_true")
    p_scenario.set_defaults(handler=_cmd_scenario)

    p_oracle = sub.add_parser("oracle", help="exhaustive optimal-town search")
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--box", help="restrict to one box WxH")
    p_oracle.set_defaults(handler=_cmd_oracle)

    p_hilbert = sub.add_parser("hilbert", help="emit the curve itself")
    p_hilbert.add_argument("--level", type=int, required=True)
    p_hilbert.add_argument("--format", choices=("moves", "coords", "svg"), default="moves")
    p_hilbert.add_argument("--output", help="output path (default stdout)")
    p_hilbert.set_defaults(handler=_cmd_hilbert)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; our contract reserves 2 for
        # internal invariant violations, so usage problems map to 1.
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
