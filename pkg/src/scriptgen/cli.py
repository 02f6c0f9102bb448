"""Command-line entry point.

    scriptgen --facts facts.json --personas personas.json --target car1 \\
        --out-scene scene.json --out-transcript transcript.txt

With no input flags the bundled showroom fixture is used. Diagnostics go
to stderr, one JSON record per line. Exit status: 0 ok, 2 input error,
3 planning invariant violated, 4 realization error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from . import data_path
from .config import GenerationConfig
from .errors import InputError, ScriptGenError
from .pipeline import PipelineRun, dump_scene, load_json, run_pipeline

DEFAULT_TARGET = "car1"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scriptgen", description="Generate a scripted dialogue.")
    parser.add_argument("--facts", type=Path, default=data_path("showroom", "facts.json"))
    parser.add_argument("--personas", type=Path, default=data_path("showroom", "personas.json"))
    parser.add_argument("--templates", type=Path, default=data_path("showroom", "templates.json"))
    parser.add_argument("--config", type=Path, help="JSON file with GenerationConfig fields")
    parser.add_argument("--target", help=f"entity to talk about (default {DEFAULT_TARGET})")
    parser.add_argument("--out-scene", type=Path)
    parser.add_argument("--out-transcript", type=Path)
    parser.add_argument("--emphasis-threshold", type=float)
    parser.add_argument("--no-emphasis", action="store_true")
    parser.add_argument("--no-association", action="store_true")
    parser.add_argument("--no-style", action="store_true")
    parser.add_argument("--greeting", action="store_true")
    parser.add_argument("--closing", action="store_true")
    parser.add_argument("--format", choices=("json", "text"), default="text",
                        help="what to print on stdout: the scene document or the transcript")
    parser.add_argument("--batch", type=Path, metavar="DIR",
                        help="generate every scene subdirectory of DIR (facts.json, personas.json, "
                             "optional templates.json and config.json)")
    return parser


def _config(args, base: Optional[dict] = None) -> GenerationConfig:
    doc = dict(base or {})
    if args.config is not None:
        doc.update(load_json(args.config, "config"))
    if args.target is not None:
        doc["target_entity"] = args.target
    doc.setdefault("target_entity", DEFAULT_TARGET)
    cfg = GenerationConfig.from_dict(doc)
    flips = {}
    if args.no_emphasis:
        flips["enable_emphasis"] = False
    if args.no_association:
        flips["enable_association"] = False
    if args.no_style:
        flips["enable_style_markers"] = False
    if args.greeting:
        flips["include_greeting"] = True
    if args.closing:
        flips["include_closing"] = True
    if args.emphasis_threshold is not None:
        flips["emphasis_threshold"] = args.emphasis_threshold
    return replace(cfg, **flips)


def _report(err: ScriptGenError, stream=None) -> int:
    print(err.diagnostic(), file=stream or sys.stderr)
    return err.exit_code


def _run_scene(scene_dir: Path, args) -> int:
    try:
        base = load_json(scene_dir / "config.json", "config") if (scene_dir / "config.json").is_file() else None
        templates = scene_dir / "templates.json"
        run = PipelineRun(
            config=_config(args, base),
            facts=scene_dir / "facts.json",
            personas=scene_dir / "personas.json",
            templates=templates if templates.is_file() else args.templates,
        )
        run_pipeline(run, scene_dir / "scene.json", scene_dir / "transcript.txt")
        return 0
    except ScriptGenError as err:
        if err.stage is None:
            err.stage = "input"
        err.message = f"{scene_dir}: {err.message}"
        return _report(err)


def _batch(args) -> int:
    if not args.batch.is_dir():
        return _report(InputError("missing_file", str(args.batch), f"batch directory not found: {args.batch}", stage="input"))
    scenes = sorted(p for p in args.batch.iterdir() if p.is_dir())
    with ThreadPoolExecutor() as pool:
        codes = list(pool.map(lambda d: _run_scene(d, args), scenes))
    for scene, code in zip(scenes, codes):
        print(f"{scene.name}: {'ok' if code == 0 else f'failed ({code})'}")
    return max(codes, default=0)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.batch is not None:
        return _batch(args)
    try:
        run = PipelineRun(config=_config(args), facts=args.facts, personas=args.personas, templates=args.templates)
        result = run_pipeline(run, args.out_scene, args.out_transcript)
    except ScriptGenError as err:
        if err.stage is None:
            err.stage = "input"
        return _report(err)
    if args.format == "json":
        sys.stdout.write(dump_scene(result.scene_document))
    else:
        sys.stdout.write(result.transcript)
    return 0


if __name__ == "__main__":
    sys.exit(main())
