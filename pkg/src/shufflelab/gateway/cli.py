"""Command-line interface.

Subcommands: ``transform`` (batch-apply one transform to an image file),
``manifest`` (print the canonical 18-entry grid), ``schedule`` (emit a
session schedule), ``analyze`` (join human + network responses into
accuracy and regression reports), ``serve`` (run the HTTP service).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..experiment.manifest import build_manifest
from ..experiment.responses import MissingResponsesError, load_network_responses
from ..experiment.schedule import (
    N_PRACTICE,
    generate_schedule,
    schedule_from_json,
    schedule_to_json,
)
from ..experiment.session import ResponseRecord
from ..imagecore.cifar import load_cifar100_binary
from ..imagecore.image import ImageError
from ..imagecore.io import read_image, write_image, write_png
from ..stats.accuracy import accuracy_csv, accuracy_table
from ..stats.design import FAMILY_FILTERS, CorrectnessRow, CorrectnessTable, DesignError, build_design
from ..stats.ols import fit_ols
from ..stats.report import format_report
from ..transforms import FlattenedImage, SpecError, TransformKind, TransformSpec, apply
from .stimulus import flatten_visualization

KIND_ALIASES = {
    "baseline": TransformKind.BASELINE,
    "grid": TransformKind.GRID_SHUFFLE,
    "grid_shuffle": TransformKind.GRID_SHUFFLE,
    "randomized": TransformKind.RANDOMIZED_SHUFFLE,
    "randomized_shuffle": TransformKind.RANDOMIZED_SHUFFLE,
    "within": TransformKind.WITHIN_GRID_SHUFFLE,
    "within_grid_shuffle": TransformKind.WITHIN_GRID_SHUFFLE,
    "local": TransformKind.LOCAL_GRID_SHUFFLE,
    "local_grid_shuffle": TransformKind.LOCAL_GRID_SHUFFLE,
    "flatten": TransformKind.COLOR_FLATTEN,
    "color_flatten": TransformKind.COLOR_FLATTEN,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shufflelab")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply one transform to an image file")
    t.add_argument("--input", required=True)
    t.add_argument("--output", required=True)
    t.add_argument("--kind", required=True, choices=sorted(KIND_ALIASES))
    t.add_argument("--block", type=int, default=None)
    t.add_argument("--prob", type=float, default=None)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--format", default=None, help="png or ppm (default: from extension)")

    m = sub.add_parser("manifest", help="print the canonical transform grid as JSON")
    m.add_argument("--out", default=None)

    s = sub.add_parser("schedule", help="generate a session schedule")
    s.add_argument("--dataset", required=True, help="CIFAR-100 binary split file")
    s.add_argument("--split", default="test", choices=("train", "test"))
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--practice", type=int, default=N_PRACTICE)
    s.add_argument("--out", default=None)

    a = sub.add_parser("analyze", help="accuracy + regression reports from response logs")
    a.add_argument("--schedule", required=True)
    a.add_argument("--human", required=True, help="JSON-lines response log")
    a.add_argument("--network", required=True, help="CSV fixture trial_id,agent,chosen_option")
    a.add_argument("--out-dir", required=True)

    v = sub.add_parser("serve", help="run the HTTP experiment service")
    v.add_argument("--dataset", required=True)
    v.add_argument("--split", default="test", choices=("train", "test"))
    v.add_argument("--data-dir", default="./data")
    v.add_argument("--listen", default="127.0.0.1:8421")
    v.add_argument("--seed-policy", default="random")
    v.add_argument("--practice", type=int, default=N_PRACTICE)
    v.add_argument("--timeout-ms", type=int, default=3000)
    v.add_argument("--static-dir", default=None, help="serve a built frontend at /app")
    return parser


def _cmd_transform(args) -> int:
    img = read_image(args.input, args.format)
    spec = TransformSpec(
        kind=KIND_ALIASES[args.kind],
        block_size=args.block,
        probability=args.prob,
        seed=args.seed,
    )
    if spec.kind is TransformKind.BASELINE:
        in_fmt = (args.format or Path(args.input).suffix.lstrip(".")).lower()
        out_fmt = (args.format or Path(args.output).suffix.lstrip(".")).lower()
        if in_fmt == out_fmt:
            # Identity transform: the output file is a byte-for-byte copy.
            Path(args.output).write_bytes(Path(args.input).read_bytes())
            return 0
    result = apply(spec, img)
    if isinstance(result, FlattenedImage):
        raw = b"".join(vec.tobytes() for vec in result.channels)
        Path(args.output).write_bytes(raw)
        write_image(str(args.output) + ".png", flatten_visualization(result))
    else:
        write_image(args.output, result, args.format)
    return 0


def _cmd_manifest(args) -> int:
    text = build_manifest().to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def _load_dataset(path: str, split: str):
    return load_cifar100_binary(Path(path).read_bytes(), split)


def _cmd_schedule(args) -> int:
    dataset = _load_dataset(args.dataset, args.split)
    trials = generate_schedule(dataset, args.seed, n_practice=args.practice)
    text = schedule_to_json(trials, seed=args.seed)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def _correctness_table(schedule, human_records, network_rows) -> CorrectnessTable:
    trials = {t.trial_id: t for t in schedule if t.phase == "test"}
    rows = []
    human_by_trial = {}
    for rec in human_records:
        if rec.trial_id in trials:
            human_by_trial[rec.trial_id] = rec
    missing = [(tid, "human") for tid in sorted(trials) if tid not in human_by_trial]
    if missing:
        raise MissingResponsesError(missing)
    for tid, trial in sorted(trials.items()):
        spec = trial.spec
        rec = human_by_trial[tid]
        rows.append(
            CorrectnessRow(
                trial_id=tid,
                family=spec.kind.value,
                block_size=spec.block_size,
                probability=spec.probability,
                agent="human",
                correct=rec.chosen_option == trial.correct_option,
            )
        )
    for resp in network_rows:
        spec = trials[resp.trial_id].spec
        rows.append(
            CorrectnessRow(
                trial_id=resp.trial_id,
                family=spec.kind.value,
                block_size=spec.block_size,
                probability=spec.probability,
                agent=resp.agent,
                correct=resp.correct,
            )
        )
    table = CorrectnessTable(rows=rows)
    table.validate()
    return table


def _cmd_analyze(args) -> int:
    schedule = schedule_from_json(Path(args.schedule).read_text())
    human_records = [
        ResponseRecord.from_dict(json.loads(line))
        for line in Path(args.human).read_text().splitlines()
        if line.strip()
    ]
    try:
        network_rows = load_network_responses(args.network, schedule)
        table = _correctness_table(schedule, human_records, network_rows)
    except MissingResponsesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "accuracy.csv").write_text(accuracy_csv(accuracy_table(table)))

    for family in FAMILY_FILTERS:
        try:
            y, design = build_design(table, family)
        except DesignError:
            print(f"note: no observations for {family}, report skipped", file=sys.stderr)
            continue
        report = fit_ols(y, design)
        (out_dir / f"ols_{family}.json").write_text(report.to_json() + "\n")
        text = format_report(report, title=f"OLS: {family} ({report.n} obs)")
        (out_dir / f"ols_{family}.txt").write_text(text)
        if family == "all":
            print(text)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .store import ServiceConfig, SessionStore

    dataset = _load_dataset(args.dataset, args.split)
    config = ServiceConfig(
        data_dir=Path(args.data_dir),
        listen=os.environ.get("SHUFFLELAB_LISTEN", args.listen),
        seed_policy=args.seed_policy,
        n_practice=args.practice,
        confirm_timeout_ms=args.timeout_ms,
    )
    store = SessionStore(config, dataset)
    app = create_app(store)
    if args.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=args.static_dir, html=True), name="app")
    host, _, port = config.listen.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8421))
    return 0


_COMMANDS = {
    "transform": _cmd_transform,
    "manifest": _cmd_manifest,
    "schedule": _cmd_schedule,
    "analyze": _cmd_analyze,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ImageError, SpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
