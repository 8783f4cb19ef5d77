#!/usr/bin/env python3
# Copyright 2026 The qbc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the bundled net fixtures and prints reference Feynman integrals.

The reference values are computed by plain story enumeration with numpy,
independently of the C++ library, and are frozen into the unit tests.
"""

import itertools
import json
import math
import pathlib
import sys

import numpy as np

H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


def rot(theta, phase):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s * np.exp(-1j * phase)], [s * np.exp(1j * phase), c]])


def dft(n):
    w = np.exp(2j * math.pi / n)
    return np.array([[w ** (r * c) for c in range(n)] for r in range(n)]) / math.sqrt(n)


def bell_transform():
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    return np.kron(H, np.eye(2)) @ cnot


def teleportation():
    # arrows 1->2, 1->3, 2->5, 4->5, 3->6, 5->6
    theta, phi = 0.3, 0.7
    phases = np.diag([np.exp(1j * 0.25 * k) for k in range(8)])
    return [
        dict(id=1, name="x1", card=2, parents=[], m=np.array([[1], [1j]]) / math.sqrt(2)),
        dict(id=2, name="x2", card=2, parents=[1], m=np.eye(2)),
        dict(id=3, name="x3", card=2, parents=[1], m=H),
        dict(id=4, name="x4", card=2, parents=[],
             m=np.array([[math.cos(theta)], [np.exp(1j * phi) * math.sin(theta)]])),
        dict(id=5, name="x5", card=4, parents=[2, 4], m=bell_transform()),
        dict(id=6, name="x6", card=8, parents=[3, 5], m=dft(8) @ phases),
    ]


def external_not_last():
    # arrows 1->2, 1->3, 3->4, 4->5
    return [
        dict(id=1, name="x1", card=2, parents=[], m=np.array([[0.6], [0.8j]])),
        dict(id=2, name="x2", card=2, parents=[1], m=rot(0.4, 0.9)),
        dict(id=3, name="x3", card=2, parents=[1], m=H),
        dict(id=4, name="x4", card=2, parents=[3], m=np.array([[0, 1j], [1, 0]])),
        dict(id=5, name="x5", card=2, parents=[4], m=rot(1.1, -0.3)),
    ]


def to_json(nodes):
    out = {"version": 1, "nodes": []}
    for n in nodes:
        m = n["m"].astype(complex)
        assert m.shape[0] == n["card"]
        out["nodes"].append({
            "id": n["id"],
            "name": n["name"],
            "states": [str(s) for s in range(n["card"])],
            "parents": n["parents"],
            "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in m],
        })
    return out


def dump(doc):
    lines = ['{', f' "version": {doc["version"]},', ' "nodes": [']
    for i, n in enumerate(doc["nodes"]):
        rows = ",\n".join("    " + json.dumps(r) for r in n["matrix"])
        lines.append(f'  {{"id": {n["id"]}, "name": {json.dumps(n["name"])}, '
                     f'"states": {json.dumps(n["states"])}, "parents": {json.dumps(n["parents"])},')
        lines.append('   "matrix": [\n' + rows + ']}' + (',' if i + 1 < len(doc["nodes"]) else ''))
    lines += [' ]', '}']
    return "\n".join(lines) + "\n"


def feynman(nodes):
    by_id = {n["id"]: n for n in nodes}
    ids = sorted(by_id)
    has_child = {p for n in nodes for p in n["parents"]}
    ext = [j for j in ids if j not in has_child]
    fi = {}
    for story in itertools.product(*[range(by_id[j]["card"]) for j in ids]):
        x = dict(zip(ids, story))
        amp = 1.0 + 0j
        for n in nodes:
            col = 0
            for p in n["parents"]:
                col = col * by_id[p]["card"] + x[p]
            amp *= n["m"][x[n["id"]], col]
        key = tuple(x[j] for j in ext)
        fi[key] = fi.get(key, 0) + amp
    return ext, fi


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    for name, nodes in [("teleportation", teleportation()),
                        ("external_not_last", external_not_last())]:
        (root / f"{name}.json").write_text(dump(to_json(nodes)))
        ext, fi = feynman(nodes)
        print(f"{name}: external {ext}")
        for key in sorted(fi):
            v = fi[key]
            print(f"  {key}: {{{v.real:.17g}, {v.imag:.17g}}}")


if __name__ == "__main__":
    main()
