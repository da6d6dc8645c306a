"""Regenerate tests/golden/*.svg from the bundled figure scenarios.

Run only after an intentional change to rendering or to a scenario file.
"""

from pathlib import Path

from poncelet.render import render_document
from poncelet.scenario_io import FIGURES, bundled_scenario

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name in FIGURES:
        svg, note = render_document(bundled_scenario(name))
        (OUT / f"{name}.svg").write_bytes(svg)
        print(f"{name}: {len(svg)} bytes" + (f" ({note})" if note else ""))


if __name__ == "__main__":
    main()
