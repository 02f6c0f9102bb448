"""Apply emphasis to the two hand-built four-act plans and show what changes."""

from scriptgen import fixtures
from scriptgen.config import GenerationConfig
from scriptgen.realizer import realize
from scriptgen.scene_ir import linearize
from scriptgen.strategies import emphasize

CASES = [
    ("twain", "impulse", ["3", "4"]),
    ("erasmus", "pilgrimage", ["4", "5"]),
]


def main():
    for name, target, new_ids in CASES:
        fb = getattr(fixtures, f"{name}_fact_base")()
        personas = getattr(fixtures, f"{name}_personas")()
        templates = getattr(fixtures, f"{name}_templates")()
        before = getattr(fixtures, f"{name}_base_plan")()
        after, records = emphasize(before, fb, GenerationConfig(target), iter(new_ids).__next__)
        print(f"=== {name}")
        print(f"before: {', '.join(linearize(before))}")
        print(f"after:  {', '.join(linearize(after))}")
        for r in records:
            print(f"inserted {', '.join(r.inserted)} after {r.anchor} ({r.reason})")
        old = {e.act_id: e.text for e in realize(before, personas, fb, templates).entries}
        for entry in realize(after, personas, fb, templates).entries:
            note = ""
            if entry.act_id in old and old[entry.act_id] != entry.text:
                note = f"   (was: {old[entry.act_id]})"
            print(f"  {entry.act_id:>2} {entry.speaker}: {entry.text}{note}")
        print()


if __name__ == "__main__":
    main()
