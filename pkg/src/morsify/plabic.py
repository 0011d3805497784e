"""Plabic graphs: bicolored planar graphs in a disk with trivalent interior.

A plabic graph is stored as a rotation system, like a divide: every internal
vertex carries three half-edge slots ``0..2`` in counterclockwise order, every
boundary vertex (leaf) a single slot ``0``; edges pair two (vertex, slot)
darts; ``boundary_order`` lists the leaves counterclockwise along the disk
boundary.  Each vertex is black or white.

The module provides the faces and the quiver of a plabic graph, the local
moves (flips, square moves, tail attachment/removal) with legality checks and
a move-equivalence search, plabic fences built from words over sigma/tau
connectors, the square-gadget graph attached to a divide, admissible
orientations, the link diagram of an oriented plabic graph, and the
triangle-push macro expressed as a move sequence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from ._common import Budget, DistinctByInvariant, Equivalent, Unknown, Verdict
from ._maps import rot_next_from_cycles, trace_faces
from .divide import PlanarDivide, ScannableDivide, SiteDescriptor
from .divide import faces as divide_faces
from .divide import regions as divide_regions
from .divide import validate as divide_validate
from .divide import apply_yb, yb_sites
from .quiver import Quiver, quick_invariants, quiver_from_arrows

Dart = tuple  # (vertex_id, slot)


class IllegalMove(ValueError):
    """The move descriptor is not legal for this graph."""


class SiteNotFound(ValueError):
    """The graph does not contain the requested gadget configuration."""


class DisconnectedFence(ValueError):
    """The fence word does not connect all strands."""


# ---------------------------------------------------------------------------
# The graph structure


@dataclass(frozen=True)
class PlabicGraph:
    internal: frozenset  # trivalent vertices (slots 0..2, counterclockwise)
    leaves: frozenset  # univalent boundary vertices (slot 0)
    black: frozenset  # subset of internal | leaves; the rest are white
    edges: frozenset  # of frozenset({dart, dart})
    boundary_order: tuple  # leaves, counterclockwise
    outer_dart: Optional[Dart] = None  # outer-face marker for leafless graphs

    def __post_init__(self):
        object.__setattr__(self, "internal", frozenset(self.internal))
        object.__setattr__(self, "leaves", frozenset(self.leaves))
        object.__setattr__(self, "black", frozenset(self.black))
        object.__setattr__(
            self, "edges", frozenset(frozenset(e) for e in self.edges)
        )
        object.__setattr__(self, "boundary_order", tuple(self.boundary_order))

    def darts(self) -> list[Dart]:
        out = [(v, s) for v in sorted(self.internal) for s in range(3)]
        out.extend((v, 0) for v in sorted(self.leaves))
        return out

    def twin(self) -> dict:
        t: dict = {}
        for e in self.edges:
            a, b = sorted(e)
            t[a] = b
            t[b] = a
        return t

    def color(self, v) -> str:
        return "b" if v in self.black else "w"


def _closed_map(p: PlabicGraph):
    """The graph's map closed up along the disk boundary (cf. divides)."""
    twin = dict(p.twin())
    darts = list(p.darts())
    cycles: dict = {v: [(v, s) for s in range(3)] for v in p.internal}
    arc_darts: set = set()
    m = len(p.boundary_order)
    if m:
        for i in range(m):
            a0 = ("~arc", i, 0)
            a1 = ("~arc", i, 1)
            twin[a0] = a1
            twin[a1] = a0
            darts.extend([a0, a1])
            arc_darts.update([a0, a1])
        for i, v in enumerate(p.boundary_order):
            cycles[v] = [("~arc", i, 0), (v, 0), ("~arc", (i - 1) % m, 1)]
    else:
        for v in p.leaves:
            cycles[v] = [(v, 0)]
    rot_next = rot_next_from_cycles(cycles)
    return darts, twin, rot_next, arc_darts


def faces(p: PlabicGraph):
    """``(internal_faces, boundary_faces)`` of the graph.

    A face is the tuple of darts of its counterclockwise boundary walk;
    boundary faces are the faces meeting the disk boundary (including the
    outer face of a leafless graph).
    """
    darts, twin, rot_next, arc_darts = _closed_map(p)
    fs = trace_faces(darts, twin, rot_next)
    internal, boundary = [], []
    for f in fs:
        if any(x in arc_darts for x in f):
            boundary.append(f)
        elif not p.leaves and p.outer_dart is not None and p.outer_dart in f:
            boundary.append(f)
        else:
            internal.append(f)
    internal.sort(key=lambda f: (sorted({x[0] for x in f}), f))
    boundary.sort(key=lambda f: (sorted({x[0] for x in f}), f))
    return internal, boundary


def _face_index(p: PlabicGraph):
    """Map each graph dart to its (kind, index) face, kinds internal/boundary."""
    internal, boundary = faces(p)
    out: dict = {}
    for i, f in enumerate(internal):
        for x in f:
            out[x] = ("internal", i)
    for i, f in enumerate(boundary):
        for x in f:
            if x[0] != "~arc":
                out[x] = ("boundary", i)
    return out, internal, boundary


def validate(p: PlabicGraph) -> list[str]:
    """Structural problems of the graph; an empty list means valid."""
    problems: list[str] = []
    twin = p.twin()
    darts = p.darts()
    if p.internal & p.leaves:
        return ["a vertex is listed both internal and boundary"]
    if not p.black <= (p.internal | p.leaves):
        return ["color set names unknown vertices"]
    if set(twin) != set(darts):
        missing = sorted(set(darts) ^ set(twin))
        return [f"unpaired or stray half-edge slots: {missing[:4]}"]
    if set(p.boundary_order) != set(p.leaves) or len(p.boundary_order) != len(
        p.leaves
    ):
        return ["boundary order does not enumerate the boundary vertices"]
    for e in p.edges:
        if len(e) != 2:
            return [f"edge {sorted(e)} does not pair two distinct darts"]
    # connectivity
    verts = p.internal | p.leaves
    if verts:
        adj: dict = {v: set() for v in verts}
        for e in p.edges:
            a, b = sorted(e)
            adj[a[0]].add(b[0])
            adj[b[0]].add(a[0])
        seen: set = set()
        stack = [sorted(verts)[0]]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x])
        if seen != verts:
            return ["graph is disconnected"]
    else:
        return ["graph has no vertices"]
    # planarity of the closed map
    fs_all = trace_faces(*_closed_map(p)[:3])
    V = len(verts)
    E = len(p.edges) + len(p.boundary_order)
    F = len(fs_all)
    if V - E + F != 2:
        return [f"map has genus > 0 (V-E+F = {V - E + F}, expected 2)"]
    if not p.leaves and p.outer_dart is None:
        problems.append("leafless graph needs an outer-face dart")
        return problems
    if p.outer_dart is not None and p.outer_dart not in twin:
        return ["outer-face dart does not exist"]
    # each internal face must see another internal face across a bicolored
    # edge (when there are at least two internal faces)
    fidx, internal, _ = _face_index(p)
    if len(internal) >= 2:
        for i, f in enumerate(internal):
            ok = False
            for x in f:
                y = twin[x]
                if p.color(x[0]) != p.color(y[0]) and fidx.get(y) not in (
                    None,
                    ("internal", i),
                ):
                    kind, j = fidx[y]
                    if kind == "internal":
                        ok = True
                        break
            if not ok:
                problems.append(
                    f"internal face {i} has no bicolored edge to another "
                    "internal face"
                )
    return problems


# ---------------------------------------------------------------------------
# The quiver of a plabic graph


def quiver_of_plabic(p: PlabicGraph) -> Quiver:
    """Vertex per internal face; an arrow across every bicolored edge
    separating two distinct internal faces, oriented so the black endpoint of
    the edge lies on the right; opposite arrow pairs cancel."""
    fidx, internal, _ = _face_index(p)
    twin = p.twin()
    arrows = []
    for e in sorted(p.edges, key=sorted):
        a, b = sorted(e)
        if p.color(a[0]) == p.color(b[0]):
            continue
        fa, fb = fidx[a], fidx[b]
        if fa[0] != "internal" or fb[0] != "internal" or fa == fb:
            continue
        black_side = fa if p.color(a[0]) == "b" else fb
        white_side = fb if black_side is fa else fa
        arrows.append((black_side[1], white_side[1]))
    return quiver_from_arrows(len(internal), arrows)


# ---------------------------------------------------------------------------
# Local moves


@dataclass(frozen=True)
class MoveDescriptor:
    kind: str  # flipWhite | flipBlack | square | tailAttach | tailRemove
    site: tuple


def _flip_candidates(p: PlabicGraph):
    out = []
    for e in sorted(p.edges, key=sorted):
        a, b = sorted(e)
        u, v = a[0], b[0]
        if u == v or u not in p.internal or v not in p.internal:
            continue
        if p.color(u) != p.color(v):
            continue
        kind = "flipBlack" if p.color(u) == "b" else "flipWhite"
        out.append(MoveDescriptor(kind, (a, b)))
    return out


def _apply_flip(p: PlabicGraph, m: MoveDescriptor) -> PlabicGraph:
    a, b = m.site
    if frozenset({a, b}) not in p.edges:
        raise IllegalMove(f"no such edge {m.site}")
    u, su = a
    v, sv = b
    if u == v or u not in p.internal or v not in p.internal:
        raise IllegalMove("flip needs two distinct internal endpoints")
    if p.color(u) != p.color(v):
        raise IllegalMove("flip needs endpoints of the same color")
    want = "flipBlack" if p.color(u) == "b" else "flipWhite"
    if m.kind != want:
        raise IllegalMove(f"edge color does not match move kind {m.kind}")
    pu = (u, (su + 1) % 3)
    qu = (u, (su + 2) % 3)
    rv = (v, (sv + 1) % 3)
    sv2 = (v, (sv + 2) % 3)
    # Rotate the shared edge a quarter turn: the four outside edges, read
    # counterclockwise around the pair, are re-distributed between u and v.
    portmap = {a: (u, 0), b: (v, 0), pu: (u, 2), sv2: (u, 1), qu: (v, 1), rv: (v, 2)}
    new_edges = []
    for e in p.edges:
        x, y = sorted(e)
        ne = frozenset({portmap.get(x, x), portmap.get(y, y)})
        if len(ne) != 2:
            raise IllegalMove("flip would collapse an edge")
        new_edges.append(ne)
    outer = p.outer_dart
    if outer in portmap:
        outer = portmap[outer]
    return PlabicGraph(
        p.internal, p.leaves, p.black, frozenset(new_edges), p.boundary_order, outer
    )


def _square_candidates(p: PlabicGraph):
    fidx, internal, _ = _face_index(p)
    twin = p.twin()
    out = []
    for i, f in enumerate(internal):
        if len(f) != 4:
            continue
        vs = [x[0] for x in f]
        if len(set(vs)) != 4 or any(v not in p.internal for v in vs):
            continue
        cols = [p.color(v) for v in vs]
        if any(cols[j] == cols[(j + 1) % 4] for j in range(4)):
            continue
        sides = [fidx[twin[x]] for x in f]
        if any(sides[j] == ("internal", i) for j in range(4)):
            continue
        if any(sides[j] == sides[(j + 1) % 4] for j in range(4)):
            continue
        lo = f.index(min(f))
        site = tuple(f[lo:] + f[:lo])
        out.append(MoveDescriptor("square", site))
    return out


def _apply_square(p: PlabicGraph, m: MoveDescriptor) -> PlabicGraph:
    legal = {c.site for c in _square_candidates(p)}
    if m.site not in legal:
        raise IllegalMove(f"no legal square move at {m.site}")
    vs = {x[0] for x in m.site}
    return PlabicGraph(
        p.internal,
        p.leaves,
        p.black ^ vs,
        p.edges,
        p.boundary_order,
        p.outer_dart,
    )


def _tail_remove_candidates(p: PlabicGraph):
    twin = p.twin()
    out = []
    for l in sorted(p.leaves):
        v, _ = twin[(l, 0)]
        if v in p.internal and p.color(v) != p.color(l):
            out.append(MoveDescriptor("tailRemove", (l,)))
    return out


def _apply_tail_remove(p: PlabicGraph, m: MoveDescriptor) -> PlabicGraph:
    (l,) = m.site
    if l not in p.leaves:
        raise IllegalMove(f"{l!r} is not a boundary vertex")
    twin = p.twin()
    v, s = twin[(l, 0)]
    if v not in p.internal or p.color(v) == p.color(l):
        raise IllegalMove("tail removal needs a bicolored boundary edge")
    d1 = (v, (s + 1) % 3)
    d2 = (v, (s + 2) % 3)
    far1, far2 = twin[d1], twin[d2]
    if far1 == d2:
        raise IllegalMove("removal would leave a vertex-free closed curve")
    removed = {
        frozenset({(l, 0), (v, s)}),
        frozenset({d1, far1}),
        frozenset({d2, far2}),
    }
    new_edges = (p.edges - removed) | {frozenset({far1, far2})}
    boundary = tuple(x for x in p.boundary_order if x != l)
    outer = p.outer_dart
    if not boundary:
        # the face the tail poked into becomes the marked outer face
        darts, tw, rot_next, arc_darts = _closed_map(p)
        outer = None
        for f in trace_faces(darts, tw, rot_next):
            if any(x in arc_darts for x in f):
                for x in f:
                    if x not in arc_darts and x[0] not in (l, v):
                        outer = x
                        break
                break
        if outer is None:
            raise IllegalMove("cannot determine the outer face after removal")
    return PlabicGraph(
        p.internal - {v},
        p.leaves - {l},
        p.black - {v, l},
        frozenset(new_edges),
        boundary,
        outer,
    )


def _tail_attach_candidates(p: PlabicGraph):
    fidx, _, boundary = _face_index(p)
    out = []
    for f in boundary:
        gaps = sorted({x[1] for x in f if x[0] == "~arc"})
        if not p.leaves:
            gaps = [0]
        graph_darts = sorted(x for x in f if x[0] != "~arc")
        for d in graph_darts:
            for gap in gaps:
                for color in ("b", "w"):
                    out.append(MoveDescriptor("tailAttach", (d, gap, color)))
    return out


def _fresh_ids(p: PlabicGraph, n: int) -> list[str]:
    used = {str(v) for v in (p.internal | p.leaves)}
    out: list[str] = []
    i = 0
    while len(out) < n:
        cand = f"x{i}"
        if cand not in used:
            out.append(cand)
            used.add(cand)
        i += 1
    return out


def _apply_tail_attach(p: PlabicGraph, m: MoveDescriptor) -> PlabicGraph:
    d, gap, color = m.site
    twin = p.twin()
    if d not in twin:
        raise IllegalMove(f"no such dart {d}")
    if color not in ("b", "w"):
        raise IllegalMove(f"unknown color {color!r}")
    fidx, _, boundary = _face_index(p)
    kind, fi = fidx[d]
    if kind != "boundary":
        raise IllegalMove("tail attachment needs a boundary-adjacent face")
    face = boundary[fi]
    if p.leaves:
        if ("~arc", gap, 0) not in face and ("~arc", gap, 1) not in face:
            raise IllegalMove("boundary gap is not on the chosen face")
    elif gap != 0:
        raise IllegalMove("a leafless graph has a single boundary gap 0")
    b_ = twin[d]
    w, leaf = _fresh_ids(p, 2)
    new_edges = set(p.edges) - {frozenset({d, b_})}
    new_edges.add(frozenset({d, (w, 0)}))
    new_edges.add(frozenset({(w, 2), b_}))
    new_edges.add(frozenset({(w, 1), (leaf, 0)}))
    if p.leaves:
        boundary_order = (
            p.boundary_order[: gap + 1] + (leaf,) + p.boundary_order[gap + 1 :]
        )
    else:
        boundary_order = (leaf,)
    black = set(p.black)
    if color == "b":
        black.add(w)
    else:
        black.add(leaf)
    return PlabicGraph(
        p.internal | {w},
        p.leaves | {leaf},
        frozenset(black),
        frozenset(new_edges),
        boundary_order,
        None if boundary_order else p.outer_dart,
    )


_APPLIERS = {
    "flipWhite": _apply_flip,
    "flipBlack": _apply_flip,
    "square": _apply_square,
    "tailRemove": _apply_tail_remove,
    "tailAttach": _apply_tail_attach,
}


def apply_move(p: PlabicGraph, m: MoveDescriptor) -> PlabicGraph:
    if m.kind not in _APPLIERS:
        raise IllegalMove(f"unknown move kind {m.kind!r}")
    out = _APPLIERS[m.kind](p, m)
    problems = validate(out)
    if problems:
        raise IllegalMove(f"move result is not a valid plabic graph: {problems[0]}")
    return out


def enumerate_moves(p: PlabicGraph, kinds=None) -> list[MoveDescriptor]:
    """All legal moves (whose application yields a valid plabic graph)."""
    cands: list[MoveDescriptor] = []
    cands.extend(_flip_candidates(p))
    cands.extend(_square_candidates(p))
    cands.extend(_tail_remove_candidates(p))
    cands.extend(_tail_attach_candidates(p))
    if kinds is not None:
        cands = [m for m in cands if m.kind in kinds]
    out = []
    for m in cands:
        try:
            apply_move(p, m)
        except IllegalMove:
            continue
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# Canonical codes and move equivalence


def canonical_code(p: PlabicGraph, strict_boundary_colors: bool = False) -> tuple:
    """A relabeling-invariant code of the embedded colored graph.

    Minimized over all starting darts and over the global color swap;
    boundary-vertex colors are erased unless ``strict_boundary_colors``.
    """
    darts, twin, rot_next, arc_darts = _closed_map(p)
    outer_marks: set = set()
    if not p.leaves and p.outer_dart is not None:
        for f in trace_faces(darts, twin, rot_next):
            if p.outer_dart in f:
                outer_marks = set(f)
                break

    def tag(d, swap):
        if d in arc_darts:
            return "a"
        base = "o" if d in outer_marks else ""
        v = d[0]
        if v in p.leaves and not strict_boundary_colors:
            return base + "e"
        c = p.color(v)
        if swap:
            c = "w" if c == "b" else "b"
        return base + c

    graph_darts = [d for d in darts if d not in arc_darts]
    best = None
    for swap in (False, True):
        for start in graph_darts:
            idx = {start: 0}
            order = [start]
            rows = []
            i = 0
            while i < len(order):
                d = order[i]
                for e in (rot_next[d], twin[d]):
                    if e not in idx:
                        idx[e] = len(order)
                        order.append(e)
                rows.append((idx[rot_next[d]], idx[twin[d]], tag(d, swap)))
                i += 1
                if best is not None and tuple(rows) > best[: len(rows)]:
                    break
            else:
                code = tuple(rows)
                if best is None or code < best:
                    best = code
                continue
            # pruned early; not minimal
    return best


def _balance_parity(p: PlabicGraph) -> int:
    ib = sum(1 for v in p.internal if v in p.black)
    iw = len(p.internal) - ib
    return (ib - iw + len(p.leaves)) % 2


def move_equivalent(
    p1: PlabicGraph,
    p2: PlabicGraph,
    budget: Budget = Budget(),
    strict_boundary_colors: bool = False,
    size_slack: int = 2,
) -> Verdict:
    """Search for a move sequence taking ``p1`` to (the embedded isomorphism
    class of) ``p2``.

    The orbit is infinite (tails can always be attached), so the search caps
    the graph size at the larger input plus ``size_slack``; exhaustion under
    the cap yields ``Unknown``, not a proof of distinctness.
    """
    par1, par2 = _balance_parity(p1), _balance_parity(p2)
    if par1 != par2:
        return DistinctByInvariant(
            f"black/white balance parity differs: {par1} != {par2}"
        )
    q1, q2 = quiver_of_plabic(p1), quiver_of_plabic(p2)
    i1, i2 = quick_invariants(q1), quick_invariants(q2)
    if i1 != i2:
        return DistinctByInvariant(
            f"quiver mutation invariants differ: {i1} != {i2}"
        )
    if strict_boundary_colors:
        d1 = abs(len(p1.black) - (len(p1.internal | p1.leaves) - len(p1.black)))
        d2 = abs(len(p2.black) - (len(p2.internal | p2.leaves) - len(p2.black)))
        if d1 != d2:
            return DistinctByInvariant(
                f"black-minus-white counts differ: {d1} != {d2}"
            )
    goal = canonical_code(p2, strict_boundary_colors)
    start = canonical_code(p1, strict_boundary_colors)
    if start == goal:
        return Equivalent(())
    cap_i = max(len(p1.internal), len(p2.internal)) + size_slack
    cap_l = max(len(p1.leaves), len(p2.leaves)) + size_slack
    clock = budget.start()
    seen = {start}
    frontier = deque([(p1, ())])
    while frontier:
        p, path = frontier.popleft()
        for m in enumerate_moves(p):
            np = apply_move(p, m)
            if len(np.internal) > cap_i or len(np.leaves) > cap_l:
                continue
            if not clock.tick():
                return Unknown("search budget exhausted")
            code = canonical_code(np, strict_boundary_colors)
            if code in seen:
                continue
            seen.add(code)
            npath = path + (m,)
            if code == goal:
                return Equivalent(npath)
            frontier.append((np, npath))
    return Unknown(
        f"orbit exhausted under size cap (+{size_slack}); "
        "equivalence through larger graphs not ruled out"
    )


# ---------------------------------------------------------------------------
# Plabic fences


@dataclass(frozen=True)
class FenceWord:
    k: int
    letters: tuple  # of ("s" | "t", index)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(tuple(x) for x in self.letters))
        if self.k < 1:
            raise ValueError("fence word needs k >= 1")
        for kind, i in self.letters:
            if kind not in ("s", "t"):
                raise ValueError(f"unknown connector kind {kind!r}")
            if not 1 <= i <= self.k - 1:
                raise ValueError(f"connector index {i} out of range")


def parse_fence_word(text: str) -> FenceWord:
    k = None
    letters = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        j = 0
        if toks[0] == "k":
            k = int(toks[1])
            j = 2
        for t in toks[j:]:
            if t[0] not in ("s", "t") or not t[1:].isdigit():
                raise ValueError(f"malformed connector token {t!r}")
            letters.append((t[0], int(t[1:])))
    if k is None:
        raise ValueError("missing strand count 'k <int>'")
    return FenceWord(k, tuple(letters))


def format_fence_word(w: FenceWord) -> str:
    toks = [f"{kind}{i}" for kind, i in w.letters]
    return f"k {w.k}\n" + " ".join(toks) + "\n"


def fence_of_word(w: FenceWord) -> PlabicGraph:
    """The plabic fence of a word: ``k`` horizontal strands with one vertical
    bicolored connector per letter (sigma: black at the bottom; tau: black at
    the top); left strand ends are white leaves, right ends black leaves.

    Connector vertices on a strand use slots (0=east, 1=up, 2=west) when the
    connector leaves upward and (0=east, 1=west, 2=down) when downward.
    """
    if not w.letters:
        raise DisconnectedFence("the empty fence word leaves the strands apart")
    strands: dict = {lvl: [] for lvl in range(1, w.k + 1)}
    internal: set = set()
    black: set = set()
    edges: list = []
    for j, (kind, i) in enumerate(w.letters):
        bot = f"c{j}.b"
        top = f"c{j}.t"
        internal.update([bot, top])
        if kind == "s":
            black.add(bot)
        else:
            black.add(top)
        edges.append(frozenset({(bot, 1), (top, 2)}))
        strands[i].append(((bot, 2), (bot, 0)))  # (west dart, east dart)
        strands[i + 1].append(((top, 1), (top, 0)))
    leaves: set = set()
    border_r, border_l = [], []
    for lvl in range(1, w.k + 1):
        lw, rw = f"eL{lvl}", f"eR{lvl}"
        leaves.update([lw, rw])
        black.add(rw)
        chain = [((lw, 0), (lw, 0))] + strands[lvl] + [((rw, 0), (rw, 0))]
        for (_, east), (west, _) in zip(chain, chain[1:]):
            edges.append(frozenset({east, west}))
        border_r.append(rw)
        border_l.append(lw)
    boundary = tuple(border_r) + tuple(reversed(border_l))
    p = PlabicGraph(
        frozenset(internal), frozenset(leaves), frozenset(black),
        frozenset(edges), boundary,
    )
    problems = validate(p)
    if problems:
        raise DisconnectedFence(problems[0])
    return p


def word_of_fence(p: PlabicGraph) -> FenceWord:
    """Invert the fence constructors (graphs with their connector naming)."""
    left = sorted(
        (v for v in p.leaves if str(v).startswith("eL")),
        key=lambda v: int(str(v)[2:]),
    )
    k = len(left)
    if not left or len(p.leaves) != 2 * k:
        raise ValueError("not a fence built by the fence constructors")
    twin = p.twin()
    info: dict = {}  # connector position j -> (strand of bottom vertex)
    for lvl, lw in enumerate(left, start=1):
        cur = twin[(lw, 0)]
        while cur[0] not in p.leaves:
            v, s = cur
            name = str(v)
            if not name.startswith("c") or "." not in name:
                raise ValueError("not a fence built by the fence constructors")
            j, role = name[1:].split(".")
            if role == "b":
                if s != 2:
                    raise ValueError("strand enters a connector off-axis")
                info[int(j)] = lvl
            elif s != 1:
                raise ValueError("strand enters a connector off-axis")
            cur = twin[(v, 0)]
    letters = []
    for j in sorted(info):
        kind = "s" if f"c{j}.b" in p.black else "t"
        letters.append((kind, info[j]))
    return FenceWord(k, tuple(letters))


def fence_word_of_divide(s: ScannableDivide) -> FenceWord:
    """One sigma connector per U-turn; a sigma/tau pair per crossing."""
    letters = [("s", i) for i in sorted(s.left_turns)]
    for a in s.events:
        letters.append(("s", a))
        letters.append(("t", a))
    letters.extend(("s", i) for i in sorted(s.right_turns))
    return FenceWord(s.k, tuple(letters))


def fence_of_divide(s: ScannableDivide) -> PlabicGraph:
    return fence_of_word(fence_word_of_divide(s))


# ---------------------------------------------------------------------------
# Attaching a plabic graph to a divide


def _face_signs(d: PlanarDivide):
    """Two-color all faces of the divide's closed map (checkerboard), aligned
    with the region sign normalization: region 0 receives '+'."""
    fs, outer, arc_darts = divide_faces(d)
    dart_face: dict = {}
    for i, f in enumerate(fs):
        for x in f:
            dart_face[x] = i
    n = len(fs)
    parent = list(range(n))
    par = [0] * n

    def find(x):
        if parent[x] == x:
            return x, 0
        root, q = find(parent[x])
        parent[x] = root
        par[x] ^= q
        return root, par[x]

    for e in d.edges:
        a, b = sorted(e)
        ra, pa = find(dart_face[a])
        rb, pb = find(dart_face[b])
        if ra == rb:
            if pa ^ pb != 1:
                raise ValueError("divide faces admit no checkerboard coloring")
            continue
        parent[rb] = ra
        par[rb] = pa ^ pb ^ 1
    rs = divide_regions(d)
    anchor = None
    if rs and rs[0].darts:
        anchor = dart_face[rs[0].darts[0]]
    if anchor is None:
        anchor = 0
    aroot, apar = find(anchor)
    # the anchor face (region 0 when present) gets '+'; components not
    # containing the anchor are anchored at their least face index
    comp_fix: dict = {aroot: apar}
    signs = {}
    for i in range(n):
        root, q = find(i)
        if root not in comp_fix:
            comp_fix[root] = q
        signs[i] = "+" if q == comp_fix[root] else "-"
    return signs, dart_face


def attach_plabic(d: PlanarDivide, tails=None) -> PlabicGraph:
    """Replace every node by an alternating-color square of four trivalent
    vertices; divide strands become edges, endpoints become boundary leaves
    (white unless recolored through ``tails``)."""
    if d.bare_circles:
        raise ValueError("cannot attach a graph to a vertex-free closed curve")
    tails = dict(tails or {})
    signs, dart_face = _face_signs(d)
    internal: set = set()
    black: set = set()
    edges: list = []
    for n in sorted(d.nodes):
        corners = [f"{n}.{s}" for s in range(4)]
        internal.update(corners)
        for s in range(4):
            # the corner at slot s borders, counterclockwise, the face swept
            # from slot s to slot s+1, which is the face of the dart (n, s+1)
            if signs[dart_face[(n, (s + 1) % 4)]] == "-":
                black.add(corners[s])
            edges.append(
                frozenset({(corners[s], 1), (corners[(s + 1) % 4], 2)})
            )
    for e in sorted(d.edges, key=sorted):
        pair = []
        for v, s in sorted(e):
            if v in d.nodes:
                pair.append((f"{v}.{s}", 0))
            else:
                pair.append((v, 0))
        edges.append(frozenset(pair))
    leaves = frozenset(d.endpoints)
    for v in leaves:
        if tails.get(v, "w") == "b":
            black.add(v)
    outer = None
    if d.outer_dart is not None:
        n, s = d.outer_dart
        outer = (f"{n}.{s}", 0)
    return PlabicGraph(
        frozenset(internal), leaves, frozenset(black), frozenset(edges),
        d.boundary_order, outer,
    )


# ---------------------------------------------------------------------------
# Admissible orientations


@dataclass(frozen=True)
class Orientation:
    """One head dart per edge: the edge points toward the head's vertex."""

    heads: frozenset

    def points_at(self, dart: Dart) -> bool:
        return dart in self.heads


def _check_face_condition(p: PlabicGraph, heads: set) -> bool:
    internal, _ = faces(p)
    twin = p.twin()
    for f in internal:
        sources = sinks = 0
        n = len(f)
        for i in range(n):
            d_prev = f[i]
            d_next = f[(i + 1) % n]
            # corner at the shared vertex of edge(d_prev) and edge(d_next)
            away_prev = d_prev in heads
            away_next = twin[d_next] in heads
            if away_prev and away_next:
                sources += 1
            elif not away_prev and not away_next:
                sinks += 1
        if sources != 1 or sinks != 1:
            return False
    return True


def _acyclic(p: PlabicGraph, heads: set) -> bool:
    verts = p.internal | p.leaves
    out_adj: dict = {v: [] for v in verts}
    for h in heads:
        tail = p.twin()[h][0]
        out_adj[tail].append(h[0])
    state: dict = {}

    def dfs(v):
        state[v] = 1
        for w in out_adj[v]:
            if state.get(w) == 1:
                return False
            if w not in state and not dfs(w):
                return False
        state[v] = 2
        return True

    return all(dfs(v) for v in verts if v not in state)


def admissible_orientation(p: PlabicGraph) -> Optional[Orientation]:
    """The unique edge orientation with black vertices 2-in/1-out, white
    vertices 1-in/2-out (univalent: black 1-in, white 1-out) and exactly one
    source and one sink corner per internal face; None if it does not exist."""
    if len(p.black) * 2 != len(p.internal | p.leaves):
        return None  # unbalanced graphs never admit one
    twin = p.twin()
    edge_list = sorted(p.edges, key=sorted)
    caps = {}
    for v in p.internal | p.leaves:
        deg_out = (1 if p.color(v) == "b" else 2) if v in p.internal else (
            0 if p.color(v) == "b" else 1
        )
        deg = 3 if v in p.internal else 1
        caps[v] = (deg - deg_out, deg_out)  # (in, out)

    heads: dict = {}  # edge -> head dart
    counts = {v: [0, 0] for v in caps}  # decided (in, out)

    def set_head(e, h) -> bool:
        heads[e] = h
        hv = h[0]
        tv = twin[h][0]
        counts[hv][0] += 1
        counts[tv][1] += 1
        return counts[hv][0] <= caps[hv][0] and counts[tv][1] <= caps[tv][1]

    def unset_head(e):
        h = heads.pop(e)
        counts[h[0]][0] -= 1
        counts[twin[h][0]][1] -= 1

    def propagate(trail) -> bool:
        changed = True
        while changed:
            changed = False
            for v in caps:
                undecided = [
                    e
                    for e in edge_list
                    if e not in heads and any(x[0] == v for x in e)
                ]
                if not undecided:
                    if counts[v] != list(caps[v]):
                        return False
                    continue
                cin, cout = counts[v]
                if cin == caps[v][0]:
                    for e in undecided:
                        h = next(x for x in e if x[0] == v)
                        if not set_head(e, twin[h]):
                            trail.append(e)
                            return False
                        trail.append(e)
                        changed = True
                elif cout == caps[v][1]:
                    for e in undecided:
                        h = next(x for x in e if x[0] == v)
                        if not set_head(e, h):
                            trail.append(e)
                            return False
                        trail.append(e)
                        changed = True
        return True

    def solve() -> Optional[set]:
        trail: list = []
        if not propagate(trail):
            for e in trail:
                unset_head(e)
            return None
        undecided = [e for e in edge_list if e not in heads]
        if not undecided:
            hs = set(heads.values())
            if _check_face_condition(p, hs) and _acyclic(p, hs):
                result = set(hs)
            else:
                result = None
            for e in trail:
                unset_head(e)
            return result
        e = undecided[0]
        a, b = sorted(e)
        for h in (a, b):
            sub: list = [e]
            if set_head(e, h):
                deeper = solve()
                if deeper is not None:
                    for x in sub:
                        unset_head(x)
                    for ee in trail:
                        unset_head(ee)
                    return deeper
            for x in sub:
                unset_head(x)
        for ee in trail:
            unset_head(ee)
        return None

    # forced boundary edges first
    trail0: list = []
    ok = True
    for l in sorted(p.leaves):
        e = frozenset({(l, 0), twin[(l, 0)]})
        if e in heads:
            continue
        h = (l, 0) if p.color(l) == "b" else twin[(l, 0)]
        if not set_head(e, h):
            ok = False
        trail0.append(e)
        if not ok:
            break
    result = solve() if ok else None
    return Orientation(frozenset(result)) if result is not None else None


def transport_orientation(
    p: PlabicGraph, o: Orientation, m: MoveDescriptor
) -> Orientation:
    """The admissible orientation of ``apply_move(p, m)``.

    Uniqueness of admissible orientations makes recomputation on the moved
    graph the transported orientation."""
    expected = admissible_orientation(p)
    if expected is None or expected.heads != o.heads:
        raise ValueError("the given orientation is not admissible for p")
    np = apply_move(p, m)
    out = admissible_orientation(np)
    if out is None:
        raise IllegalMove("the move does not preserve orientability")
    return out


# ---------------------------------------------------------------------------
# The link of an oriented plabic graph


def link_of_oriented_plabic(p: PlabicGraph, o: Orientation):
    """Double every edge into two one-way lanes (driving on the right: the
    lane on the counterclockwise side of a dart runs toward its vertex), turn
    left through white vertices, turn right through black ones -- the three
    lanes through a black vertex cross pairwise -- and cap the boundary
    vertices.  Returns the resulting link diagram."""
    from .link import LinkDiagram

    problems = validate(p)
    if problems:
        raise ValueError(f"invalid plabic graph: {problems[0]}")
    twin = p.twin()
    check = admissible_orientation(p)
    if check is None or check.heads != o.heads:
        raise ValueError("the orientation is not admissible for this graph")

    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    def lane_in(h):  # lane arriving at h's vertex along h
        return ("lane", h)

    def lane_out(h):  # lane leaving h's vertex along h
        return ("lane", twin[h])

    crossings: list = []
    rot = {v: [(v, s) for s in range(3)] for v in p.internal}
    for v in sorted(p.internal | p.leaves):
        if v in p.leaves:
            union(lane_in((v, 0)), lane_out((v, 0)))
            continue
        ds = rot[v]
        if p.color(v) == "w":
            # left turns, no crossings
            for i, h in enumerate(ds):
                union(lane_in(h), lane_out(ds[(i + 1) % 3]))
            continue
        # black: right turns; the unique outgoing edge starts the cyclic order
        outs = [h for h in ds if o.points_at(twin[h])]
        if len(outs) != 1:
            raise ValueError("orientation violates the black degree rule")
        oi = ds.index(outs[0])
        od, pd, qd = ds[oi], ds[(oi + 1) % 3], ds[(oi + 2) % 3]
        A0, A2 = lane_in(qd), lane_out(pd)
        B0, B2 = lane_in(pd), lane_out(od)
        C0, C2 = lane_in(od), lane_out(qd)
        A1, B1, C1 = ("mid", v, "A"), ("mid", v, "B"), ("mid", v, "C")
        crossings.append(((A0, B2, A1, B1), +1))
        crossings.append(((C0, A2, C1, A1), +1))
        crossings.append(((C1, B0, C2, B1), -1))
    # canonicalize arc labels through the lane gluings
    used = sorted({x for arcs, _ in crossings for x in arcs})
    relabel: dict = {}
    for x in used:
        r = find(x)
        if r not in relabel:
            relabel[r] = len(relabel)
    out_crossings = [
        (tuple(relabel[find(x)] for x in arcs), sign) for arcs, sign in crossings
    ]
    # crossing-free strands closed through caps and white turns
    all_lanes = {lane_in(h) for h in twin}
    roots_in_crossings = {find(x) for arcs, _ in crossings for x in arcs}
    free = {find(x) for x in all_lanes} - roots_in_crossings
    return LinkDiagram(tuple(out_crossings), free_loops=len(free))


# ---------------------------------------------------------------------------
# The triangle push expressed as flips and squares


def divide_of_attached(p: PlabicGraph) -> PlanarDivide:
    """Invert ``attach_plabic`` (graphs with the square-gadget naming)."""
    nodes: set = set()
    for v in p.internal:
        name = str(v)
        if "." not in name or not name.rsplit(".", 1)[1].isdigit():
            raise SiteNotFound(f"vertex {v!r} is not a gadget corner")
        n, s = name.rsplit(".", 1)
        nodes.add(n)
    twin = p.twin()
    edges = []
    for e in p.edges:
        darts = []
        skip = False
        for v, s in sorted(e):
            name = str(v)
            if v in p.leaves:
                darts.append((v, 0))
            elif s == 0:
                n, cs = name.rsplit(".", 1)
                darts.append((n, int(cs)))
            else:
                skip = True  # a square-side edge inside a gadget
        if skip:
            continue
        if len(darts) != 2:
            raise SiteNotFound("edge structure does not match the gadget form")
        edges.append(frozenset(darts))
    outer = None
    if p.outer_dart is not None:
        v, s = p.outer_dart
        if s != 0:
            raise SiteNotFound("outer dart is not a gadget strand dart")
        n, cs = str(v).rsplit(".", 1)
        outer = (n, int(cs))
    d = PlanarDivide(
        frozenset(nodes), frozenset(p.leaves), frozenset(edges),
        p.boundary_order, 0, outer,
    )
    report = divide_validate(d)
    if not report.ok:
        raise SiteNotFound(
            f"edge structure does not match the gadget form: {report.violations[0]}"
        )
    return d


def yb_as_moves(
    p: PlabicGraph, site: SiteDescriptor, budget: Budget = Budget()
) -> list[MoveDescriptor]:
    """A flip/square move sequence carrying ``p`` (a square-gadget graph of a
    divide with a triangular region) to a gadget graph of the divide with
    that triangle pushed through the opposite side."""
    d = divide_of_attached(p)
    if site not in yb_sites(d):
        raise SiteNotFound("the graph has no triangle gadget at this site")
    tails = {v: p.color(v) for v in p.leaves}
    base = attach_plabic(d, tails)
    target = attach_plabic(apply_yb(d, site), tails)
    code_p = canonical_code(p, strict_boundary_colors=True)
    swap = False
    if code_p != canonical_code(base, strict_boundary_colors=True):
        swapped = PlabicGraph(
            base.internal, base.leaves,
            (base.internal | base.leaves) - base.black,
            base.edges, base.boundary_order, base.outer_dart,
        )
        if code_p == canonical_code(swapped, strict_boundary_colors=True):
            swap = True
        else:
            raise SiteNotFound("the graph is not a square-gadget attachment")
    if swap:
        target = PlabicGraph(
            target.internal, target.leaves,
            (target.internal | target.leaves) - target.black,
            target.edges, target.boundary_order, target.outer_dart,
        )
    # the push only rearranges the three gadget squares of the triangle
    allowed = frozenset(f"{n}.{s}" for n in site.region_nodes for s in range(4))
    path = _search_flip_square_path(p, target, budget, allowed=allowed)
    if path is None:
        raise SiteNotFound("no flip/square path found within budget")
    return list(path)


def _search_flip_square_path(p, target, budget, back_depth=3, allowed=None):
    kinds = ("flipWhite", "flipBlack", "square")

    def moves(g):
        out = enumerate_moves(g, kinds)
        if allowed is not None:
            out = [m for m in out if {x[0] for x in m.site} <= allowed]
        return out

    def canon(g):
        return canonical_code(g, strict_boundary_colors=True)

    clock = budget.start()
    goal = canon(target)
    start = canon(p)
    if start == goal:
        return ()
    # distance-to-target map for the last few layers
    back = {goal: 0}
    layer = [target]
    for depth in range(1, back_depth + 1):
        nxt = []
        for g in layer:
            for m in moves(g):
                ng = apply_move(g, m)
                if not clock.tick():
                    return None
                c = canon(ng)
                if c not in back:
                    back[c] = depth
                    nxt.append(ng)
        layer = nxt
    # forward search until we enter the mapped region, then descend it
    if start in back:
        return _descend(p, back, moves, canon, clock)
    seen = {start}
    frontier = deque([(p, ())])
    while frontier:
        g, path = frontier.popleft()
        for m in moves(g):
            ng = apply_move(g, m)
            if not clock.tick():
                return None
            c = canon(ng)
            if c in seen:
                continue
            seen.add(c)
            npath = path + (m,)
            if c in back:
                tail = _descend(ng, back, moves, canon, clock)
                if tail is None:
                    return None
                return npath + tail
            frontier.append((ng, npath))
    return None


def _descend(g, back, moves, canon, clock):
    dist = back[canon(g)]
    path: tuple = ()
    while dist > 0:
        for m in moves(g):
            ng = apply_move(g, m)
            if not clock.tick():
                return None
            c = canon(ng)
            if back.get(c, dist) < dist:
                g, dist, path = ng, back[c], path + (m,)
                break
        else:
            return None
    return path


# ---------------------------------------------------------------------------
# .plb parsing / printing


def parse_plabic(text: str) -> PlabicGraph:
    internal: set = set()
    leaves: set = set()
    black: set = set()
    edges: list = []
    boundary: tuple = ()
    outer: Optional[Dart] = None
    rots: dict = {}
    used: set = set()

    def parse_dart(tok, ln):
        name, _, slot = tok.rpartition(".")
        if not name or not slot.isdigit():
            raise ValueError(f"line {ln}: malformed slot reference {tok!r}")
        s = int(slot)
        if name in internal:
            if not 0 <= s <= 2:
                raise ValueError(f"line {ln}: internal slot out of range in {tok!r}")
        elif name in leaves:
            if s != 0:
                raise ValueError(f"line {ln}: boundary slot must be 0 in {tok!r}")
        else:
            raise ValueError(f"line {ln}: unknown vertex {name!r}")
        return (name, s)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "v":
            if len(parts) != 4 or parts[2] not in ("b", "w") or parts[3] not in ("i", "d"):
                raise ValueError(f"line {ln}: v takes <id> <b|w> <i|d>")
            (internal if parts[3] == "i" else leaves).add(parts[1])
            if parts[2] == "b":
                black.add(parts[1])
        elif kw == "edge":
            a = parse_dart(parts[1], ln)
            b = parse_dart(parts[2], ln)
            for x in (a, b):
                if x in used:
                    raise ValueError(f"line {ln}: slot {x[0]}.{x[1]} used twice")
                used.add(x)
            edges.append(frozenset({a, b}))
        elif kw == "rot":
            if parts[1] not in internal or len(parts) != 5:
                raise ValueError(f"line {ln}: rot takes an internal id and 3 slots")
            rots[parts[1]] = tuple(int(x) for x in parts[2:])
        elif kw == "boundary":
            boundary = tuple(parts[1:])
            for v in boundary:
                if v not in leaves:
                    raise ValueError(f"line {ln}: boundary lists unknown vertex {v!r}")
        elif kw == "outer":
            outer = parse_dart(parts[1], ln)
        else:
            raise ValueError(f"line {ln}: unknown directive {kw!r}")
    # reorder slots for vertices with an explicit rotation line
    remap: dict = {}
    for v, order in rots.items():
        if sorted(order) != [0, 1, 2]:
            raise ValueError(f"rot for {v!r} must be a permutation of 0 1 2")
        for new, old in enumerate(order):
            remap[(v, old)] = (v, new)
    if remap:
        edges = [frozenset({remap.get(x, x) for x in e}) for e in edges]
        if outer is not None:
            outer = remap.get(outer, outer)
    return PlabicGraph(
        frozenset(internal), frozenset(leaves), frozenset(black),
        frozenset(edges), boundary, outer,
    )


def format_plabic(p: PlabicGraph) -> str:
    lines = []
    for v in sorted(p.internal):
        lines.append(f"v {v} {p.color(v)} i")
    for v in sorted(p.leaves):
        lines.append(f"v {v} {p.color(v)} d")
    for v in sorted(p.internal):
        lines.append(f"rot {v} 0 1 2")
    for e in sorted(p.edges, key=sorted):
        a, b = sorted(e)
        lines.append(f"edge {a[0]}.{a[1]} {b[0]}.{b[1]}")
    if p.boundary_order:
        lines.append("boundary " + " ".join(str(v) for v in p.boundary_order))
    if p.outer_dart is not None:
        lines.append(f"outer {p.outer_dart[0]}.{p.outer_dart[1]}")
    return "\n".join(lines) + "\n"
