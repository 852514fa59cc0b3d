"""Replay the bundled analysis script and export an SVG snapshot.

Sessions are a pure fold over their command log: the same script and dataset
give the same digest after every step, on every run. That is what the golden
digests in tests/golden/ pin down.
"""

import os
import tempfile

from matrixlens import replay_script
from matrixlens.replay import load_script, replay_commands
from matrixlens.session import Session
from matrixlens.svg import export_svg

HERE = os.path.dirname(__file__)
SCRIPT = os.path.join(HERE, "..", "data", "walkthrough_script.ndjson")

result = replay_script(SCRIPT)
print(f"replayed {len(result['perStepDigests'])} commands")
for i, digest in enumerate(result["perStepDigests"][:6]):
    print(f"  step {i:2d}: {digest}")
print(f"  ...      final: {result['finalDigest']}")

again = replay_script(SCRIPT)
print(f"\nsecond run identical: {again['perStepDigests'] == result['perStepDigests']}")

# drive a session manually to grab the final scene as vector graphics
session = Session()
replay_commands(load_script(SCRIPT), session, base_dir=os.path.dirname(os.path.abspath(SCRIPT)))
out = os.path.join(tempfile.gettempdir(), "matrixlens_walkthrough.svg")
shapes = export_svg(session.scene, out)
print(f"\nwrote {out} with {shapes} shapes (one per scene mark)")
print("the same snapshot is available from the CLI:")
print("  matrixlens --script data/walkthrough_script.ndjson --snapshot out.svg --digest")
