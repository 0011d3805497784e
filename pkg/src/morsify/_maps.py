"""Face tracing for planar combinatorial maps given as rotation systems.

A map is described by darts (half-edges), a ``twin`` involution pairing the
two darts of every edge, and ``rot_next`` giving, at each vertex, the
counterclockwise successor of a dart.  Faces are the orbits of
``d -> rot_next[twin[d]]``; with counterclockwise vertex rotations this walks
every face boundary once.
"""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

Dart = Hashable


def trace_faces(darts: Sequence[Dart], twin: Mapping[Dart, Dart], rot_next: Mapping[Dart, Dart]) -> list[tuple[Dart, ...]]:
    seen: set[Dart] = set()
    faces: list[tuple[Dart, ...]] = []
    for start in darts:
        if start in seen:
            continue
        face: list[Dart] = []
        d = start
        while True:
            if d in seen:
                raise ValueError("inconsistent rotation system (face walk re-entered)")
            seen.add(d)
            face.append(d)
            d = rot_next[twin[d]]
            if d == start:
                break
        faces.append(tuple(face))
    return faces


def rot_next_from_cycles(cycles: Mapping[Hashable, Sequence[Dart]]) -> dict[Dart, Dart]:
    """Build the CCW-successor map from per-vertex dart cycles."""
    nxt: dict[Dart, Dart] = {}
    for _, cyc in cycles.items():
        n = len(cyc)
        for i, d in enumerate(cyc):
            nxt[d] = cyc[(i + 1) % n]
    return nxt


def connected(darts: Sequence[Dart], twin: Mapping[Dart, Dart], rot_next: Mapping[Dart, Dart]) -> bool:
    """Connectivity of the map through edges and vertex rotations."""
    if not darts:
        return True
    seen = {darts[0]}
    stack = [darts[0]]
    while stack:
        d = stack.pop()
        for e in (twin[d], rot_next[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return len(seen) == len(darts)
