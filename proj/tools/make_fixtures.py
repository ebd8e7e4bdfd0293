#!/usr/bin/env python3
"""Regenerates the JSON fixtures under fixtures/."""

import itertools
import json
import pathlib
import sys
from fractions import Fraction

OUT = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def closure(top):
    faces = set()
    for s in top:
        s = tuple(sorted(s))
        for k in range(2, len(s) + 1):
            faces.update(itertools.combinations(s, k))
    return sorted(faces, key=lambda f: (len(f), f))


def dump(doc):
    """One list item per line; everything else compact."""
    lines = ["{"]
    items = list(doc.items())
    for n, (key, value) in enumerate(items):
        tail = "," if n + 1 < len(items) else ""
        if isinstance(value, list) and value:
            lines.append(f" {json.dumps(key)}: [")
            lines += [f"  {json.dumps(v)}" + ("," if k + 1 < len(value) else "") for k, v in enumerate(value)]
            lines.append(" ]" + tail)
        else:
            lines.append(f" {json.dumps(key)}: {json.dumps(value)}{tail}")
    return "\n".join(lines + ["}"]) + "\n"


def text(value):
    v = Fraction(value)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def instance(name, description, values, top):
    doc = {
        "format": "critspec-instance",
        "version": 1,
        "description": description,
        "vertices": [{"id": i, "value": text(v)} for i, v in sorted(values.items())],
        "simplices": [list(s) for s in closure(top)],
    }
    (OUT / f"{name}.json").write_text(dump(doc))


def csaszar():
    top = []
    for i in range(7):
        for a, b in ((1, 3), (2, 3)):
            top.append(tuple(sorted((i, (i + a) % 7, (i + b) % 7))))
    heights = [0, Fraction(5, 7), Fraction(2, 7), 1, Fraction(3, 7), Fraction(6, 7), Fraction(1, 7)]
    return dict(enumerate(heights)), top


def upright_torus():
    # Levels 0 < 1 < 2 < 3: an edge, a figure eight, a figure eight, an edge.
    A1, A2, w, p1, p2, q1, q2, W, P1, P2, Q1, Q2, D1, D2 = range(14)
    values = {A1: 0, A2: 0, w: 1, p1: 1, p2: 1, q1: 1, q2: 1, W: 2, P1: 2, P2: 2, Q1: 2, Q2: 2, D1: 3, D2: 3}

    def cap(x1, x2, w, p1, p2, q1, q2):
        return [(x1, p1, p2), (x1, p2, w), (x1, w, q1), (x2, q1, q2), (x2, q2, w), (x2, w, p1),
                (x1, x2, p1), (x1, x2, q1)]

    def cylinder(lower, upper):
        out = []
        for i in range(3):
            j = (i + 1) % 3
            out.append((lower[i], lower[j], upper[j]))
            out.append((lower[i], upper[i], upper[j]))
        return out

    top = cap(A1, A2, w, p1, p2, q1, q2) + cap(D1, D2, W, P1, P2, Q1, Q2)
    top += cylinder((w, p1, p2), (W, P1, P2))
    top += cylinder((w, q1, q2), (Q1, Q2, W))  # rotated so the two bands share no edge
    return values, top


def hawaiian(n):
    values = {0: 0}
    top = []
    for k in range(1, n + 1):
        left, mid, right = 3 * k - 2, 3 * k - 1, 3 * k
        values.update({left: Fraction(-1, k), mid: 0, right: Fraction(1, k)})
        top += [(0, left), (left, mid), (mid, right), (0, right)]
    return values, top


def e1_upright_torus():
    def group(rank):
        return {"rank": rank, "torsion": []}

    def entries(rows):
        return [[r, c, v] for r, row in enumerate(rows) for c, v in enumerate(row) if v]

    d10 = [[-1, 0, 0, 0], [1, -1, -1, 0], [0, 1, 1, -1], [0, 0, 0, 1]]
    d11 = [[1, -1, 0, 0], [1, 0, -1, 0], [0, 1, 0, -1], [0, 0, 1, -1]]
    doc = {
        "format": "critspec-e1",
        "version": 1,
        "ring": "z",
        "description": "first page of the upright torus with levels point, figure eight, figure eight, point",
        "degrees": [
            {"q": 0, "levels": [group(1)] * 4, "gaps": [group(1), group(2), group(1)], "differential": entries(d10)},
            {"q": 1, "levels": [group(0), group(2), group(2), group(0)], "gaps": [group(1), group(2), group(1)],
             "differential": entries(d11)},
        ],
    }
    (OUT / "upright_torus.e1.json").write_text(dump(doc))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    instance("point", "a single vertex", {0: 0}, [])
    instance("edge", "one edge from 0 to 1", {0: 0, 1: 1}, [(0, 1)])
    instance("two_edges", "two disjoint edges", {0: 0, 1: 1, 2: 0, 3: 1}, [(0, 1), (2, 3)])
    instance("circle_two_arcs", "square with a flat bottom and a flat top edge",
             {0: 0, 1: 0, 2: 1, 3: 1}, [(0, 1), (2, 3), (0, 2), (1, 3)])
    instance("triangle", "full triangle with values 0, 1, 2", {0: 0, 1: 1, 2: 2}, [(0, 1, 2)])
    instance("sphere", "boundary of the 3-simplex with values 0..3", {i: i for i in range(4)},
             list(itertools.combinations(range(4), 3)))
    instance("csaszar_torus", "seven-vertex torus with injective heights", *csaszar())
    instance("upright_torus", "upright torus: fibers point, figure eight, figure eight, point", *upright_torus())
    instance("theta", "two flat paths joined by three rungs",
             {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
    for n in range(1, 9):
        instance(f"hawaiian_{n}", f"first {n} circles of the Hawaiian earring, horizontal projection", *hawaiian(n))
    e1_upright_torus()


if __name__ == "__main__":
    main()
