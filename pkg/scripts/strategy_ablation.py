"""Turn the strategies on one at a time for a multi-topic scene.

    python scripts/strategy_ablation.py [--target car2] [--personas FILE]
"""

import argparse
from dataclasses import replace
from pathlib import Path

from scriptgen import data_path
from scriptgen.config import GenerationConfig
from scriptgen.pipeline import PipelineRun, run_pipeline

HERE = Path(__file__).parent

VARIANTS = {
    "none": dict(enable_emphasis=False, enable_association=False, enable_style_markers=False),
    "emphasis": dict(enable_association=False, enable_style_markers=False),
    "style": dict(enable_emphasis=False, enable_association=False),
    "all": {},
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--target", default="car2")
    parser.add_argument("--personas", type=Path, default=HERE / "data" / "family_personas.json")
    parser.add_argument("--facts", type=Path, default=data_path("showroom", "facts.json"))
    parser.add_argument("--threshold", type=float, default=0.6, help="emphasis threshold")
    args = parser.parse_args()

    base = GenerationConfig(args.target, topic_priority=("safety", "environment", "performance"),
                            emphasis_threshold=args.threshold, include_greeting=True, include_closing=True)
    for name, flags in VARIANTS.items():
        run = PipelineRun(replace(base, **flags), facts=args.facts, personas=args.personas)
        result = run_pipeline(run)
        reasons = [r.reason for r in result.provenance]
        print(f"--- {name}: {len(result.plan.acts)} acts, insertions {reasons or 'none'}")
        print(result.transcript)


if __name__ == "__main__":
    main()
