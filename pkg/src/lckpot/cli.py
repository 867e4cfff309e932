"""Command-line runner: ``lckpot run <config>`` and ``lckpot diff <a> <b>``.

Exit status: 0 when every selected suite passes (or a diff shows no
verdict change), 1 on a suite failure (or verdict change), 2 on a config,
expression or schema error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .config import SUITES, ConfigError, RunConfig, load_config, parse_config
from .grammar import ExpressionError
from .reports import SCHEMA_VERSION, dumps
from .suites import Context, SuiteResult, run_suite

__all__ = ["OUT_DIR_ENV", "RunOutcome", "DiffResult", "SchemaMismatchError", "run", "report_diff", "main"]

OUT_DIR_ENV = "LCKPOT_OUT_DIR"
VERDICT_KEYS = {"pass", "verdict", "failing", "strictly_pseudoconvex", "level_set_nonempty", "expected_strict"}
IGNORED_KEYS = {"timestamp"}


class SchemaMismatchError(ValueError):
    pass


@dataclass
class RunOutcome:
    record: dict
    results: list
    out_dir: Path
    files: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.record["pass"] else 1


def _write_csv(path: Path, rows: list[dict]) -> None:
    header: list[str] = []
    for r in rows:
        header += [k for k in r if k not in header]
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if v is None else repr(v) if isinstance(v, float) else v) for k, v in r.items()})


def build_record(cfg: RunConfig, results: list[SuiteResult], timestamp: str, files: list[str]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "timestamp": timestamp,
        "config": cfg.resolved(),
        "suites": {r.name: r.to_dict() for r in results},
        "artifacts": files,
        "pass": all(r.passed for r in results),
    }


def run(cfg: RunConfig, out_dir=None, timestamp: str | None = None, log=None) -> RunOutcome:
    """Run the selected suites and write the run-record, CSVs and SVGs.

    ``out_dir`` falls back to ``cfg.output.dir``, then to the
    ``LCKPOT_OUT_DIR`` environment variable, then to ``lckpot-out``.
    """
    out = Path(out_dir or cfg.output.dir or os.environ.get(OUT_DIR_ENV) or "lckpot-out")
    out.mkdir(parents=True, exist_ok=True)
    ctx = Context.from_config(cfg)
    results, files = [], []
    for name in cfg.selected_suites():
        t0 = time.perf_counter()
        res = run_suite(name, ctx)
        results.append(res)
        if log:
            status = "PASS" if res.passed else "FAIL (" + ", ".join(res.failing) + ")"
            log(f"{name:<11} {status}  [{time.perf_counter() - t0:.1f}s]")
        if cfg.output.csv and res.rows:
            _write_csv(out / f"{name}.csv", res.rows)
            files.append(f"{name}.csv")
        if cfg.output.svg and res.slices:
            from .plots import heatmap_svg

            heatmap_svg(out / f"{name}.svg", res.slices, cfg.model.n, cfg.model.lam)
            files.append(f"{name}.svg")
    ts = timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")
    record = build_record(cfg, results, ts, files)
    (out / "run_record.json").write_text(dumps(record) + "\n")
    return RunOutcome(record, results, out, files)


# ---------------------------------------------------------------------------
# diff


@dataclass
class DiffResult:
    verdict_changes: list
    drift: list

    @property
    def empty(self) -> bool:
        return not self.verdict_changes

    @property
    def flipped_suites(self) -> list[str]:
        return sorted({p.split(".")[1] for p, _, _ in self.verdict_changes if p.startswith("suites.")})

    def text(self) -> str:
        lines = [f"flipped suites: {', '.join(self.flipped_suites)}"] if self.flipped_suites else []
        lines += [f"verdict {path}: {a!r} -> {b!r}" for path, a, b in self.verdict_changes]
        if self.drift:
            lines.append(f"sample-level drift in {len(self.drift)} value(s):")
            lines += [f"  {path}: {a!r} -> {b!r}" for path, a, b in self.drift]
        return "\n".join(lines)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            if k in IGNORED_KEYS:
                continue
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _leaf(path: str) -> str:
    return path.rsplit(".", 1)[-1].split("[")[0]


def report_diff(a: dict, b: dict) -> DiffResult:
    """Compare two run-records.

    Pass flags, verdict strings and failing-invariant lists are verdicts;
    every other changed value (metrics, witness points, config) is drift.
    Timestamps are ignored. Raises :class:`SchemaMismatchError` when the
    schema versions differ.
    """
    va, vb = a.get("schema_version"), b.get("schema_version")
    if va != vb:
        raise SchemaMismatchError(f"schema version mismatch: {va!r} vs {vb!r}")
    fa, fb = dict(_flatten(a)), dict(_flatten(b))
    verdicts, drift = [], []
    for path in sorted(set(fa) | set(fb)):
        x, y = fa.get(path), fb.get(path)
        if x == y:
            continue
        (verdicts if _leaf(path) in VERDICT_KEYS else drift).append((path, x, y))
    return DiffResult(verdicts, drift)


# ---------------------------------------------------------------------------
# entry point


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lckpot", description="Verification suites for LCK potentials.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the suites selected by a YAML config")
    r.add_argument("config", help="YAML config file ('-' for defaults)")
    r.add_argument("--suite", action="append", choices=list(SUITES) + ["all"], help="override suite selection (repeatable)")
    r.add_argument("--seed", type=int, help="override sampler.seed")
    r.add_argument("--out-dir", help=f"output directory (default: config output.dir, ${OUT_DIR_ENV}, ./lckpot-out)")
    d = sub.add_parser("diff", help="compare two run-records")
    d.add_argument("record_a")
    d.add_argument("record_b")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    err = lambda msg: print(f"error: {msg}", file=sys.stderr)  # noqa: E731
    if args.command == "diff":
        try:
            a = json.loads(Path(args.record_a).read_text())
            b = json.loads(Path(args.record_b).read_text())
            res = report_diff(a, b)
        except (OSError, json.JSONDecodeError, SchemaMismatchError) as exc:
            err(exc)
            return 2
        if res.text():
            print(res.text())
        return 0 if res.empty else 1

    try:
        cfg = parse_config("") if args.config == "-" else load_config(args.config)
        if args.suite:
            cfg.suites = args.suite
        if args.seed is not None:
            cfg.sampler.seed = args.seed
        outcome = run(cfg, args.out_dir, log=print)
    except OSError as exc:
        err(exc)
        return 2
    except (ConfigError, ExpressionError) as exc:
        err(f"{args.config}: {exc}")
        return 2
    except KeyError as exc:
        err(f"{args.config}: {exc.args[0]}")
        return 2
    print(f"run-record: {outcome.out_dir / 'run_record.json'}")
    if outcome.exit_code:
        failed = [f"{r.name}: {', '.join(r.failing)}" for r in outcome.results if not r.passed]
        print("failing invariants: " + "; ".join(failed))
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
