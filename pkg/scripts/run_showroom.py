"""Print the showroom dialogue with and without the emphasis subdialogue.

    python scripts/run_showroom.py [--out DIR]
"""

import argparse
from pathlib import Path

from scriptgen import fixtures
from scriptgen.config import GenerationConfig
from scriptgen.pipeline import dump_scene, generate


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, help="also write scene and transcript files here")
    args = parser.parse_args()

    fb, personas, templates = fixtures.showroom()
    for label, emphasis in (("plain", False), ("emphasized", True)):
        result = generate(fb, personas, templates, GenerationConfig("car1", enable_emphasis=emphasis))
        mentions = sum(a.content.proposition == "f01" for a in result.plan.acts)
        print(f"--- {label}: {len(result.plan.acts)} acts, order {' '.join(result.order)}, "
              f"top speed mentioned {mentions}x")
        print(result.transcript)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{label}.scene.json").write_text(dump_scene(result.scene_document))
            (args.out / f"{label}.txt").write_text(result.transcript)


if __name__ == "__main__":
    main()
