"""End-to-end generation: facts + personas -> plan -> script."""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import data_path
from .config import GenerationConfig
from .distributor import Assignment, assign_opinions, distribute
from .errors import InputError, PlanError, ScriptGenError
from .knowledge import FactBase, Persona, parse_fact_base, parse_personas, select_content
from .realizer import RealizedScript, TemplateSet, realize, render_transcript
from .scene_ir import InsertionRecord, ScenePlan, linearize, serialize_scene, validate_plan
from .sequencer import plan_sequence
from .strategies import apply_association, apply_style_markers, emphasize


@dataclass(frozen=True)
class PipelineRun:
    config: GenerationConfig
    facts: Path = field(default_factory=lambda: data_path("showroom", "facts.json"))
    personas: Path = field(default_factory=lambda: data_path("showroom", "personas.json"))
    templates: Path = field(default_factory=lambda: data_path("showroom", "templates.json"))


@dataclass(frozen=True)
class PipelineResult:
    assignment: Assignment
    base_plan: ScenePlan
    plan: ScenePlan
    provenance: tuple[InsertionRecord, ...]
    order: tuple[str, ...]
    script: RealizedScript

    @property
    def scene_document(self) -> dict:
        return serialize_scene(self.plan, self.provenance)

    @property
    def transcript(self) -> str:
        return render_transcript(self.script)


def dump_scene(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


@contextmanager
def stage(name: str):
    try:
        yield
    except ScriptGenError as err:
        if err.stage is None:
            err.stage = name
        raise


def load_json(path: Path, what: str):
    path = Path(path)
    if not path.is_file():
        raise InputError("missing_file", str(path), f"{what} file not found: {path}", stage="input")
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise InputError("malformed", str(path), f"invalid JSON in {what} file: {err}", stage="input") from None


def generate(fb: FactBase, personas: Sequence[Persona], templates: TemplateSet,
             cfg: GenerationConfig) -> PipelineResult:
    with stage("select_content"):
        selection = select_content(fb, personas, cfg)
    with stage("distribute"):
        assignment = distribute(selection, personas, cfg, fb)
    with stage("assign_opinions"):
        assignment = assign_opinions(assignment, personas, fb, cfg)
    if cfg.enable_association:
        with stage("apply_association"):
            assignment = apply_association(assignment, fb)
    with stage("plan_sequence"):
        base = plan_sequence(assignment, personas, cfg, fb)
    with stage("emphasize"):
        plan, emphasis_records = emphasize(base, fb, cfg)
    with stage("apply_style_markers"):
        plan, style_records = apply_style_markers(plan, personas, cfg, fb)
    with stage("validate_plan"):
        report = validate_plan(plan)
        if not report.ok:
            v = report.violations[0]
            raise PlanError(v.kind, list(v.ids), v.message)
    with stage("linearize"):
        order = linearize(plan)
    with stage("realize"):
        script = realize(plan, personas, fb, templates)
    return PipelineResult(
        assignment=assignment,
        base_plan=base,
        plan=plan,
        provenance=tuple(emphasis_records + style_records),
        order=tuple(order),
        script=script,
    )


def load_inputs(run: PipelineRun) -> tuple[FactBase, list[Persona], TemplateSet]:
    # check every path before any stage runs
    for path, what in ((run.facts, "facts"), (run.personas, "personas"), (run.templates, "templates")):
        if not Path(path).is_file():
            raise InputError("missing_file", str(path), f"{what} file not found: {path}", stage="input")
    with stage("parse_fact_base"):
        fb = parse_fact_base(load_json(run.facts, "facts"))
    with stage("parse_personas"):
        personas = parse_personas(load_json(run.personas, "personas"))
    with stage("load_templates"):
        doc = load_json(run.templates, "templates")
        if not isinstance(doc, dict):
            raise InputError("malformed", str(run.templates), "template file must be a flat object")
        templates = TemplateSet(doc)
    return fb, personas, templates


def run_pipeline(run: PipelineRun, out_scene: Optional[Path] = None,
                 out_transcript: Optional[Path] = None) -> PipelineResult:
    fb, personas, templates = load_inputs(run)
    result = generate(fb, personas, templates, run.config)
    with stage("emit"):
        if out_scene is not None:
            Path(out_scene).write_text(dump_scene(result.scene_document), encoding="utf-8")
        if out_transcript is not None:
            Path(out_transcript).write_text(result.transcript, encoding="utf-8")
    return result
