"""What-if editing: drag a value, watch similarity react, commit or undo.

Previews overlay the committed data without touching it; the similarity row
of the edited node and every dependent scene update live. A commit writes
the value and lands on the undo stack.
"""

import os

import numpy as np

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

# focus on the pair (standout p010, bench player p081); p081 lacks shot figures
row, col = session.ordering.pos_of("p010"), session.ordering.pos_of("p081")
run("create_rmc", region={"row0": row, "col0": col}, asUnitGrid=True)
run("scale_rmc", id="rmc1", absolute=[160.0, 160.0])
run("set_vis", id="rmc1", kind="star")

pair = (session.sim.index["p010"], session.sim.index["p081"])
print(f"p081 shots before: {session.graph.node('p081').values.get('shots')}")
print(f"sim(p010, p081) committed: {session.sim.values[pair]:.3f}")

target = {"objectKind": "node", "objectId": "p081", "attribute": "shots"}
run("begin_edit", target=target)
for candidate in (10.0, 25.0, 40.0):
    run("preview_edit", value=candidate)
    preview_sim = session.sim_view.values[pair]
    print(f"  preview shots={candidate:4.0f} -> sim {preview_sim:.3f} (committed data untouched: "
          f"{session.graph.node('p081').values.get('shots')})")

run("commit_edit", value=35.0, source="drag")
print(f"\ncommitted shots=35: sim now {session.sim.values[pair]:.3f}")

run("undo")
print(f"undo: shots back to {session.graph.node('p081').values.get('shots')}, "
      f"sim {session.sim.values[pair]:.3f}")
run("redo")
print(f"redo: shots {session.graph.node('p081').values['shots']:g} again")

rebuilt = session.sim.values
full = __import__("matrixlens").build_similarity_matrix(session.graph, session.sim_cfg).values
print(f"\nincremental similarity identical to a full rebuild: {np.array_equal(rebuilt, full, equal_nan=True)}")
