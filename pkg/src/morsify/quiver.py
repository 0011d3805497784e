"""Quivers (skew-symmetric exchange matrices) and mutation equivalence.

A quiver on ``n`` vertices is stored as the skew-symmetric integer matrix
``b`` with ``b[i][j]`` = (number of arrows ``i -> j``) minus (number of
arrows ``j -> i``); 2-cycles cancel by construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from ._common import Budget, DistinctByInvariant, Equivalent, Unknown, Verdict


@dataclass(frozen=True)
class Quiver:
    b: tuple  # tuple of tuples, skew-symmetric

    def __post_init__(self):
        b = tuple(tuple(int(x) for x in row) for row in self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        for row in b:
            if len(row) != n:
                raise ValueError("exchange matrix must be square")
        for i in range(n):
            for j in range(n):
                if b[i][j] != -b[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.b)

    def arrows(self) -> list[tuple[int, int, int]]:
        """(source, target, multiplicity) with positive multiplicity."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                m = self.b[i][j]
                if m > 0:
                    out.append((i, j, m))
                elif m < 0:
                    out.append((j, i, -m))
        return out

    def opposite(self) -> "Quiver":
        return Quiver(tuple(tuple(-x for x in row) for row in self.b))


def quiver_from_arrows(n: int, arrows) -> Quiver:
    b = [[0] * n for _ in range(n)]
    for a in arrows:
        i, j, *rest = a
        m = rest[0] if rest else 1
        b[i][j] += m
        b[j][i] -= m
    return Quiver(tuple(tuple(row) for row in b))


def mutate(q: Quiver, k: int) -> Quiver:
    n = q.n
    if not 0 <= k < n:
        raise ValueError(f"mutation vertex {k} out of range")
    b = q.b
    nb = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                nb[i][j] = -b[i][j]
            else:
                nb[i][j] = b[i][j] + (
                    abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])
                ) // 2
    return Quiver(tuple(tuple(row) for row in nb))


def mutate_seq(q: Quiver, ks) -> Quiver:
    for k in ks:
        q = mutate(q, k)
    return q


# ---------------------------------------------------------------------------
# Canonical form and isomorphism


def _refine_colors(b: tuple) -> list:
    n = len(b)
    colors = [
        (
            tuple(sorted(x for x in b[i] if x > 0)),
            tuple(sorted(x for x in b[i] if x < 0)),
        )
        for i in range(n)
    ]
    for _ in range(n):
        new = []
        for i in range(n):
            sig = tuple(sorted((colors[j], b[i][j]) for j in range(n) if j != i))
            new.append((colors[i], sig))
        ranks = {c: r for r, c in enumerate(sorted(set(new)))}
        new_ranked = [ranks[c] for c in new]
        if len(set(new_ranked)) == len(set(colors)):
            colors = new_ranked
            break
        colors = new_ranked
    return colors


def canonical_form(q: Quiver) -> tuple:
    """``(key, order)``: the lexicographically minimal matrix over vertex
    relabelings, and a vertex order achieving it (``order[t]`` is the
    original label placed at canonical position ``t``)."""
    b = q.b
    n = q.n
    if n == 0:
        return (), ()
    colors = _refine_colors(b)
    classes: dict = {}
    for i, c in enumerate(colors):
        classes.setdefault(c, []).append(i)
    groups = [classes[c] for c in sorted(classes)]
    best_key: list = [None]
    best_order: list = [None]
    # "twins" (vertices that an automorphism swaps: zero arrow between them,
    # identical rows elsewhere) need only one representative per branch
    twin_class = list(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if twin_class[j] != j:
                continue
            if b[i][j] == 0 and all(
                b[i][k] == b[j][k] for k in range(n) if k not in (i, j)
            ):
                twin_class[j] = twin_class[i]

    def flatten(order):
        return tuple(b[i][j] for i in order for j in order)

    def search(order, gi, placed_in_group):
        if gi == len(groups):
            key = flatten(order)
            if best_key[0] is None or key < best_key[0]:
                best_key[0] = key
                best_order[0] = tuple(order)
            return
        grp = [x for x in groups[gi] if x not in order]
        tried = set()
        for nxt in grp:
            if twin_class[nxt] in tried:
                continue
            tried.add(twin_class[nxt])
            cand = order + [nxt]
            if best_order[0] is not None and flatten(cand) > flatten(
                list(best_order[0][: len(cand)])
            ):
                continue
            if placed_in_group + 1 == len(groups[gi]):
                search(cand, gi + 1, 0)
            else:
                search(cand, gi, placed_in_group + 1)

    search([], 0, 0)
    return best_key[0], best_order[0]


def canonical_key(q: Quiver) -> tuple:
    return canonical_form(q)[0]


def find_isomorphism(q1: Quiver, q2: Quiver):
    """A relabeling ``pi`` with ``q2.b[pi[i]][pi[j]] == q1.b[i][j]``, or None."""
    if q1.n != q2.n:
        return None
    k1, o1 = canonical_form(q1)
    k2, o2 = canonical_form(q2)
    if k1 != k2:
        return None
    pi = [0] * q1.n
    for t in range(q1.n):
        pi[o1[t]] = o2[t]
    return tuple(pi)


def is_isomorphic(q1: Quiver, q2: Quiver, up_to_reversal: bool = False) -> bool:
    if q1.n != q2.n:
        return False
    k1 = canonical_key(q1)
    if k1 == canonical_key(q2):
        return True
    if up_to_reversal:
        return k1 == canonical_key(q2.opposite())
    return False


# ---------------------------------------------------------------------------
# Mutation invariants and mutation equivalence


def _det_and_rank(b: tuple) -> tuple[int, int]:
    n = len(b)
    m = [[Fraction(x) for x in row] for row in b]
    det = Fraction(1)
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            det = Fraction(0)
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
            det = -det
        det *= m[row][col]
        inv = 1 / m[row][col]
        for r in range(row + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[row][c]
        row += 1
        rank += 1
    if rank < n:
        det = Fraction(0)
    assert det.denominator == 1
    return abs(int(det)), rank


def quick_invariants(q: Quiver) -> tuple:
    """Invariants preserved by every mutation: size, |det|, rank."""
    d, r = _det_and_rank(q.b)
    return (q.n, d, r)


def mutation_equivalent(
    q1: Quiver,
    q2: Quiver,
    budget: Budget = Budget(),
    max_mult: int = 64,
) -> Verdict:
    """Bidirectional search for a mutation sequence from ``q1`` to ``q2``.

    ``Equivalent(witness)`` carries a sequence of mutation vertices of ``q1``
    (in the labeling of ``q1``) reaching a quiver isomorphic to ``q2``.
    Arrow multiplicities above ``max_mult`` are not explored; if the search
    exhausts all reachable quivers under that cap the verdict is by orbit
    exhaustion, otherwise the budget yields ``Unknown``.
    """
    inv1, inv2 = quick_invariants(q1), quick_invariants(q2)
    if inv1 != inv2:
        return DistinctByInvariant(
            f"mutation invariants differ: {inv1} != {inv2}"
        )
    clock = budget.start()
    start1, start2 = canonical_key(q1), canonical_key(q2)
    if start1 == start2:
        return Equivalent(())
    # bidirectional BFS over isomorphism classes
    seen1 = {start1: ()}
    seen2 = {start2: ()}
    front1 = deque([(q1, ())])
    front2 = deque([(q2, ())])
    capped = False

    def expand(front, seen, other_seen):
        nonlocal capped
        q, path = front.popleft()
        for k in range(q.n):
            nq = mutate(q, k)
            if any(abs(x) > max_mult for row in nq.b for x in row):
                capped = True
                continue
            if not clock.tick():
                return None
            key = canonical_key(nq)
            if key in seen:
                continue
            npath = path + (k,)
            seen[key] = npath
            front.append((nq, npath))
            if key in other_seen:
                return key
        return False

    while front1 or front2:
        side = front1 if (front1 and (not front2 or len(front1) <= len(front2))) else front2
        seen, other = (seen1, seen2) if side is front1 else (seen2, seen1)
        hit = expand(side, seen, other)
        if hit is None:
            return Unknown("search budget exhausted")
        if hit is not False:
            fwd = seen1[hit]
            back = seen2[hit]
            # meeting point: mutate_seq(q1, fwd) and mutate_seq(q2, back) are
            # isomorphic.  Undo the backward path (mutation is an involution)
            # after translating its vertex labels through the isomorphism.
            a = mutate_seq(q1, fwd)
            bq = mutate_seq(q2, back)
            pi = find_isomorphism(a, bq)
            inv_pi = {pi[i]: i for i in range(len(pi))}
            witness = fwd + tuple(inv_pi[k] for k in reversed(back))
            return Equivalent(witness)
    if capped:
        return Unknown(
            f"orbits disjoint below multiplicity cap {max_mult}; "
            "equivalence through larger quivers not ruled out"
        )
    return DistinctByInvariant("mutation orbits are disjoint (exhausted)")


# ---------------------------------------------------------------------------
# Text format


def parse_quiver(text: str) -> Quiver:
    n = None
    arrows = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            n = int(parts[1])
        elif parts[0] == "a":
            if n is None:
                raise ValueError(f"line {ln}: arrow before vertex count")
            i, j = int(parts[1]), int(parts[2])
            m = int(parts[3]) if len(parts) > 3 else 1
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"line {ln}: arrow endpoint out of range")
            arrows.append((i, j, m))
        else:
            raise ValueError(f"line {ln}: unknown directive {parts[0]!r}")
    if n is None:
        raise ValueError("missing vertex count line 'n <int>'")
    return quiver_from_arrows(n, arrows)


def format_quiver(q: Quiver) -> str:
    lines = [f"n {q.n}"]
    for i, j, m in q.arrows():
        lines.append(f"a {i} {j} {m}" if m != 1 else f"a {i} {j}")
    return "\n".join(lines) + "\n"
