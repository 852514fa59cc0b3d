"""Deterministic demo dataset and replay script.

The dataset mirrors the shape of a season of team-sport player data: 95
players across 5 clubs, ~10 quantitative attributes with some values
missing, and 1046 co-membership edges weighted by shared clubs. Two crafted
standout players are near-identical to each other and markedly different
from everyone else on the headline attributes, and three bench players lack
shot/goal figures entirely, so the scripted session can find, compare, and
repair them. Everything derives from fixed seeds; regenerating produces
byte-identical files.
"""

from __future__ import annotations

import json
import os
import random

from .graph import parse_dataset
from .ordering import OrderStrategy, order_nodes

NODE_COUNT = 95
EDGE_COUNT = 1046
CLUB_COUNT = 5

STAR_A = "p010"  # high-impact creator (club 0)
STAR_B = "p050"  # high-impact finisher (club 2)
SUBSTITUTES = ("p081", "p082", "p083")  # club 3, missing shots/goals

SIMILARITY_ATTRS = ["minutes", "appearances", "shots", "goals"]
EXTRA_ATTRS = ["ball_possession", "touches"]

_EDITS = [  # (node, attribute, preview value, committed value)
    ("p081", "shots", 30.0, 35.0),
    ("p082", "goals", 3.0, 4.0),
    ("p083", "shots", 28.0, 31.0),
]


def make_walkthrough_dataset() -> dict:
    rng = random.Random(20170918)
    ids = [f"p{i + 1:03d}" for i in range(NODE_COUNT)]
    clubs = {nid: (i * CLUB_COUNT) // NODE_COUNT for i, nid in enumerate(ids)}
    shuffled = ids[:]
    rng.shuffle(shuffled)
    clubs = {nid: clubs[orig] for nid, orig in zip(ids, shuffled)}
    clubs["p001"] = 0
    clubs[STAR_A] = 0
    clubs["p031"] = 2
    clubs[STAR_B] = 2
    for sub in SUBSTITUTES:
        clubs[sub] = 3

    nodes = []
    for nid in ids:
        attrs = {
            "club": float(clubs[nid]),
            "minutes": float(rng.randint(90, 1400)),
            "appearances": float(rng.randint(1, 7)),
            "shots": float(rng.randint(0, 15)),
            "goals": float(rng.randint(0, 2)),
            "ball_possession": round(rng.uniform(18.0, 62.0), 1),
            "touches": float(rng.randint(40, 620)),
            "passes": float(rng.randint(30, 520)),
            "interceptions": float(rng.randint(0, 40)),
            "recoveries": float(rng.randint(0, 55)),
        }
        # Sparse gaps outside the headline attributes, as in real rosters.
        for name in ("passes", "interceptions", "recoveries", "touches"):
            if rng.random() < 0.07:
                del attrs[name]
        nodes.append({"id": nid, "label": f"Player {nid[1:]}", "attrs": attrs})

    by_id = {n["id"]: n for n in nodes}
    by_id[STAR_A]["attrs"].update(
        minutes=2870.0, appearances=13.0, shots=44.0, goals=6.0, ball_possession=68.0, touches=980.0
    )
    by_id[STAR_B]["attrs"].update(
        minutes=2950.0, appearances=13.0, shots=43.0, goals=5.0, ball_possession=33.0, touches=470.0
    )
    for sub in SUBSTITUTES:
        attrs = by_id[sub]["attrs"]
        attrs.update(minutes=float(rng.randint(150, 260)), appearances=float(rng.randint(6, 7)))
        attrs.pop("shots", None)
        attrs.pop("goals", None)

    # Guarantee the scripted node-link detour: the stars never share a club,
    # but a two-hop path exists through their neighbors in the club ordering.
    neighbor_a = _club_neighbor(ids, clubs, STAR_A)
    neighbor_b = _club_neighbor(ids, clubs, STAR_B)
    forced = [
        (STAR_A, neighbor_a, 2.0),
        (neighbor_a, neighbor_b, 1.0),
        (neighbor_b, STAR_B, 1.0),
    ]
    forbidden = {_pair(STAR_A, STAR_B)}
    pairs = {}
    for a, b, w in forced:
        pairs[_pair(a, b)] = w
    weights = ([1.0] * 72 + [2.0] * 20 + [3.0] * 6 + [4.0] * 2)
    while len(pairs) < EDGE_COUNT:
        a, b = rng.sample(ids, 2)
        if clubs[a] != clubs[b] and rng.random() < 0.72:
            continue  # co-membership edges are mostly intra-club
        key = _pair(a, b)
        if key in pairs or key in forbidden:
            continue
        pairs[key] = rng.choice(weights)

    edges = [
        {"source": a, "target": b, "weight": w, "attrs": {}}
        for (a, b), w in sorted(pairs.items())
    ]
    return {"nodes": nodes, "edges": edges}


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def _club_neighbor(ids, clubs, nid: str) -> str:
    mates = sorted(i for i in ids if clubs[i] == clubs[nid] and i != nid)
    return mates[0]


def make_walkthrough_script(dataset: dict, dataset_filename: str = "walkthrough.json") -> list[dict]:
    """The scripted analysis session: overview, compare the two standout
    players in a 3x3 unit grid, inspect their surroundings as a node-link
    meta cell, then star-plot the bench players against the first standout
    and repair their missing values."""
    g = parse_dataset(json.dumps(dataset).encode("utf-8"), "json")
    ordering = order_nodes(g, OrderStrategy("cluster", attribute="club"))
    p_a, p_b = ordering.pos_of(STAR_A), ordering.pos_of(STAR_B)
    p_subs = [ordering.pos_of(s) for s in SUBSTITUTES]
    assert p_subs == list(range(p_subs[0], p_subs[0] + 3)), "substitutes must sit on adjacent rows"
    assert 1 <= p_a < p_b - 2, "standout players must be separated in display order"

    cmds: list[dict] = []

    def cmd(_kind: str, **payload):
        cmds.append({"seq": len(cmds) + 1, "kind": _kind, "payload": payload})

    cmd("load_dataset", path=dataset_filename, format="json")
    cmd("set_ordering", strategy="cluster:club")
    cmd("set_similarity_attributes", attributes=SIMILARITY_ATTRS)
    cmd("create_rmc", region={"row0": p_a - 1, "col0": p_b - 1, "rows": 3, "cols": 3}, asUnitGrid=True)
    cmd("scale_rmc", id="rmc1", absolute=[384.0, 384.0])
    cmd("add_shown_attribute", id="rmc1", attribute=EXTRA_ATTRS[0])
    cmd("add_shown_attribute", id="rmc1", attribute=EXTRA_ATTRS[1])
    cmd("switch_what", id="rmc1")
    cmd("toggle_where", id="rmc1")
    cmd("set_vis", id="rmc1", kind="node-link")
    cmd("switch_what", id="rmc1")
    cmd("dismiss_rmc", id="rmc1")
    cmd("create_rmc", region={"row0": p_a, "col0": p_subs[0], "rows": 1, "cols": 3}, asUnitGrid=True)
    cmd("set_vis", id="rmc2", kind="star")
    cmd("scale_rmc", id="rmc2", absolute=[390.0, 130.0])
    for node, attr, preview, final in _EDITS:
        cmd("begin_edit", target={"objectKind": "node", "objectId": node, "attribute": attr})
        cmd("preview_edit", value=preview)
        cmd("commit_edit", value=final, source="drag")
    cmd("query_stats")
    return cmds


def write_walkthrough(data_dir: str) -> tuple[str, str]:
    """Write the committed dataset and script files; returns their paths."""
    os.makedirs(data_dir, exist_ok=True)
    dataset = make_walkthrough_dataset()
    dataset_path = os.path.join(data_dir, "walkthrough.json")
    with open(dataset_path, "w", encoding="utf-8") as f:
        json.dump(dataset, f, indent=1, sort_keys=True)
        f.write("\n")
    script = make_walkthrough_script(dataset)
    script_path = os.path.join(data_dir, "walkthrough_script.ndjson")
    with open(script_path, "w", encoding="utf-8") as f:
        for cmd in script:
            f.write(json.dumps(cmd, sort_keys=True) + "\n")
    return dataset_path, script_path
