"""Regenerates the bundled domain corpus in data/domains."""
import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "domains"


def seg(a, b):
    return {"kind": "segment", "tag": "straight", "segment": {"from": list(a), "to": list(b)}}


def arc(c, r, a0, a1):
    return {"kind": "arc", "tag": "curved", "arc": {"center": list(c), "radius": r, "start": a0, "end": a1}}


def polygon(vertices):
    k = len(vertices)
    return [seg(vertices[i], vertices[(i + 1) % k]) for i in range(k)]


def regular(k, side):
    r = side / (2 * math.sin(math.pi / k))
    off = -math.pi / 2 - math.pi / k
    return [(r * math.cos(off + 2 * math.pi * i / k), r * math.sin(off + 2 * math.pi * i / k)) for i in range(k)]


def truncated(cut):
    phi = math.acos(cut)
    y = math.sqrt(1 - cut * cut)
    return [seg((cut, -y), (cut, y)), arc((0.0, 0.0), 1.0, phi, 2 * math.pi - phi)]


DOMAINS = {
    "disk": [arc((0.0, 0.0), 1.0, 0.0, math.pi), arc((0.0, 0.0), 1.0, math.pi, 2 * math.pi)],
    "heptagon": polygon(regular(7, 1.0)),
    "truncated_disk": truncated(0.95),
    "square": polygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]),
    "stadium": [
        seg((-1.0, -1.0), (1.0, -1.0)),
        arc((1.0, 0.0), 1.0, -math.pi / 2, math.pi / 2),
        seg((1.0, 1.0), (-1.0, 1.0)),
        arc((-1.0, 0.0), 1.0, math.pi / 2, 3 * math.pi / 2),
    ],
    "triangle": polygon(regular(3, 1.0)),
}

if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, pieces in DOMAINS.items():
        (OUT / f"{name}.json").write_text(json.dumps({"name": name, "pieces": pieces}, indent=2) + "\n")
