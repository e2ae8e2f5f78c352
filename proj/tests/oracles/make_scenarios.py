"""Writes the bundled scenario files under data/.

wscc9.json and wscc9_separating.json carry the raw 9-bus network (reduced at
load time); smib.json is a pre-reduced two-machine system whose relative
motion is exactly a single machine against an infinite bus.
"""

import json
import math
import pathlib
import sys

import numpy as np

import wscc9

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def write(name, doc):
    path = DATA / name
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", path)


def wscc_docs():
    stable = wscc9.scenario_json(0.1, 2.0, 0.001, [1, 2], "wscc9 bus-7 fault, line 5-7 opened at 0.100 s")
    separating = wscc9.scenario_json(0.25, 1.0, 0.001, [1, 2], "wscc9 bus-7 fault, line 5-7 opened at 0.250 s")
    for doc in (stable, separating):
        doc["initial_angles_deg"] = [math.degrees(a) for a in doc.pop("initial_angles")]
    return stable, separating


SMIB = {
    "m1": 0.05,
    "m2": 0.2,
    "pm": 0.8,
    "b_pre": 2.0,
    "b_fault": 0.0,
    "b_post": 1.5,
}


def smib_doc():
    def net(b):
        return {"G": [0.0, 0.0, 0.0, 0.0], "B": [-b, b, b, -b]}

    d0 = math.asin(SMIB["pm"] / SMIB["b_pre"])
    m1, m2 = SMIB["m1"], SMIB["m2"]
    return {
        "name": "two-machine lossless system equivalent to SMIB",
        "base_freq": 60.0,
        "machines": [
            {"id": 0, "M": m1, "Pm": SMIB["pm"], "E": 1.0},
            {"id": 1, "M": m2, "Pm": -SMIB["pm"], "E": 1.0},
        ],
        "initial_angles_deg": [math.degrees(d0 * m2 / (m1 + m2)), math.degrees(-d0 * m1 / (m1 + m2))],
        "networks": {"pre": net(SMIB["b_pre"]), "fault": net(SMIB["b_fault"]), "post": net(SMIB["b_post"])},
        "scenario": {"clear_time": 0.1, "horizon": 5.0, "dt": 0.001, "group": [0]},
    }


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    stable, separating = wscc_docs()
    write("wscc9.json", stable)
    write("wscc9_separating.json", separating)
    write("smib.json", smib_doc())
