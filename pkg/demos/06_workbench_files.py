"""Scenario files, CSV dumps, SVG figures and the command line.

Writes its output into a temporary directory and prints where it went.
"""

import io
import tempfile
from pathlib import Path

from poncelet import bundled_scenario, parse_scenario, run_chain, serialize_scenario
from poncelet.cli import main
from poncelet.export import chain_to_csv
from poncelet.render import render_document

out_dir = Path(tempfile.mkdtemp(prefix="poncelet-demo-"))

doc = bundled_scenario("fig_C_singular")
text = serialize_scenario(doc)
print("Scenario file:")
print(text)
assert serialize_scenario(parse_scenario(text)) == text

result = run_chain(doc.scenario, doc.start, doc.config)
(out_dir / "chain.csv").write_text(chain_to_csv(result))
print("CSV head:")
print("\n".join(chain_to_csv(result).splitlines()[:3]))

svg, note = render_document(doc)
(out_dir / "figure.svg").write_bytes(svg)
print(f"SVG of {len(svg)} bytes written{'' if note is None else ' (' + note + ')'}")

scenario_path = out_dir / "scenario.json"
scenario_path.write_text(text)
buf = io.StringIO()
main(["check", str(scenario_path), "--verify"], out=buf)
print("poncelet check --verify:", buf.getvalue().strip())
print("files in", out_dir)
