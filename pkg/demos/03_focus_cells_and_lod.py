"""Focus cells: carve out a region of the matrix, zoom it bifocally, and watch
the embedded visualization gain detail tier by tier.

The solver gives focus rows/columns their requested pixels and shrinks all
context rows/columns uniformly; the total always adds up to the viewport.
Levels of detail switch on the smaller cell dimension: <16px color only,
<48px a miniature chart, <120px value labels, beyond that axis labels too.
"""

import json
import os

from matrixlens import Session

DATA = os.path.join(os.path.dirname(__file__), "..", "data", "walkthrough.json")

session = Session()
seq = 0


def run(command, **payload):
    global seq
    seq += 1
    events = session.handle_command({"seq": seq, "kind": command, "payload": payload})
    assert events[0]["kind"] != "error", events[0]
    return events


run("load_dataset", path=DATA)
run("set_similarity_attributes", attributes=["minutes", "appearances", "shots", "goals"])
run("set_ordering", strategy="cluster:club")
print(f"base matrix: {len(session.scene.marks)} marks, digest {session.digest}")

run("create_rmc", region={"row0": 0, "col0": 46, "rows": 3, "cols": 3}, asUnitGrid=True)
rmc = session.rmcs["rmc1"]
print(f"\ncreated a 3x3 unit grid in the similarity half ({rmc.what}, {rmc.where})")

for size, note in [(48.0, "miniature: bare bars"), (200.0, "compact: value labels"), (384.0, "medium: axis labels + edit handles")]:
    run("scale_rmc", id="rmc1", absolute=[size, size])
    rect = session.layout.rmc_rects["rmc1"]
    handles = sum(1 for m in session.scene.marks if m.get("edit"))
    print(f"  scaled to {size:3.0f}px -> cell {rect.w / 3:5.1f}px, {handles:3d} edit handles   ({note})")

ctx = [e for e in session.layout.rows.extents if abs(e - session.layout.rows.extents[5]) < 1e-9]
print(f"\ncontext rows shrank uniformly to {session.layout.rows.extents[5]:.2f}px "
      f"({len(ctx)} of 95 rows); total height still {sum(session.layout.rows.extents):.1f}px")

run("switch_what", id="rmc1")
print(f"\nswitched to the adjacency half: now showing {session.rmcs['rmc1'].what}, "
      f"region mirrored to row {session.rmcs['rmc1'].region.row0}, col {session.rmcs['rmc1'].region.col0}")

run("toggle_where", id="rmc1")
run("set_vis", id="rmc1", kind="node-link")
links = [m for m in session.scene.marks if m["kind"] == "line" and m.get("ref")]
print(f"as one meta cell with an embedded node-link view: {len(links)} links drawn")

run("reset")
print(f"\nreset: layout back to uniform, digest {session.digest}")
