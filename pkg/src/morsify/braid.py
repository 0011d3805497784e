"""Positive braid monoid: words, Garside left normal form, and isotopy search.

Words live in the positive monoid on ``k`` strands with Artin generators
``sigma_1 .. sigma_{k-1}``.  Two positive words are *positive-equal* when they
are related by Artin relations alone; equality is decided through the Garside
left normal form, with permutation braids stored as permutations.

Conventions
-----------
* Permutations are tuples ``p`` of length ``k`` over ``0..k-1`` acting on
  strand positions, ``p[i]`` = final position of the strand starting at ``i``.
* ``compose(p, q)`` applies ``p`` first, then ``q``.
* A word is read left to right; its underlying permutation is the ordered
  product of the generator transpositions.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ._common import Budget, DistinctByInvariant, Equivalent, Unknown, Verdict


# ---------------------------------------------------------------------------
# Words


@dataclass(frozen=True)
class PositiveBraidWord:
    """A word in the positive braid monoid on ``k`` strands."""

    k: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("strand count must be >= 1")
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if not 1 <= a <= self.k - 1:
                raise ValueError(f"generator index {a} out of range for k={self.k}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "PositiveBraidWord") -> "PositiveBraidWord":
        if other.k != self.k:
            raise ValueError("strand count mismatch")
        return PositiveBraidWord(self.k, self.letters + other.letters)

    def __pow__(self, n: int) -> "PositiveBraidWord":
        return PositiveBraidWord(self.k, self.letters * n)


def word(k: int, letters: Iterable[int]) -> PositiveBraidWord:
    return PositiveBraidWord(k, tuple(letters))


def parse_braid_word(text: str) -> PositiveBraidWord:
    """Parse the text form ``k <int> : <indices separated by spaces>``."""
    head, _, tail = text.partition(":")
    parts = head.split()
    if not parts or not parts[0].isdigit():
        raise ValueError(f"malformed braid word header: {text!r}")
    k = int(parts[0])
    if len(parts) > 1:
        raise ValueError(f"malformed braid word header: {text!r}")
    letters = tuple(int(tok) for tok in tail.split())
    return PositiveBraidWord(k, letters)


def format_braid_word(w: PositiveBraidWord) -> str:
    return f"{w.k} : " + " ".join(str(a) for a in w.letters)


# ---------------------------------------------------------------------------
# Permutations


def identity_perm(k: int) -> tuple[int, ...]:
    return tuple(range(k))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Apply ``p`` first, then ``q``."""
    return tuple(q[p[i]] for i in range(len(p)))


def inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def generator_perm(k: int, j: int) -> tuple[int, ...]:
    """Transposition of positions ``j`` and ``j+1`` (1-based generator index)."""
    p = list(range(k))
    p[j - 1], p[j] = p[j], p[j - 1]
    return tuple(p)


def half_twist_perm(k: int) -> tuple[int, ...]:
    return tuple(range(k - 1, -1, -1))


def starting_set(p: Sequence[int]) -> set[int]:
    """Generators sigma_j left-dividing the permutation braid of ``p``."""
    return {j for j in range(1, len(p)) if p[j - 1] > p[j]}


def finishing_set(p: Sequence[int]) -> set[int]:
    """Generators sigma_j right-dividing the permutation braid of ``p``."""
    pi = inverse_perm(p)
    return {j for j in range(1, len(p)) if pi[j - 1] > pi[j]}


def word_of_perm(p: Sequence[int]) -> tuple[int, ...]:
    """A canonical reduced word for the permutation braid of ``p``."""
    out: list[int] = []
    cur = tuple(p)
    ident = identity_perm(len(p))
    while cur != ident:
        j = min(starting_set(cur))
        out.append(j)
        # strip sigma_j from the left: cur = sigma_j * rest
        cur = compose(generator_perm(len(p), j), cur)
    return tuple(out)


def underlying_permutation(w: PositiveBraidWord) -> tuple[int, ...]:
    """Image of the word in the symmetric group (positions ``0..k-1``)."""
    p = identity_perm(w.k)
    for a in w.letters:
        p = compose(p, generator_perm(w.k, a))
    return p


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lens.append(n)
    return tuple(sorted(lens))


def cycle_count(p: Sequence[int]) -> int:
    return len(cycle_type(p))


# ---------------------------------------------------------------------------
# Garside left normal form


@dataclass(frozen=True)
class NormalForm:
    """Left-weighted normal form ``Delta^p . f1 . f2 ...``.

    ``factors`` are permutations of ``0..k-1``; none is the identity or the
    half twist; each consecutive pair ``(a, b)`` satisfies
    ``starting_set(b) <= finishing_set(a)``.
    """

    k: int
    delta_power: int
    factors: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        fs = " ; ".join(" ".join(str(x + 1) for x in f) for f in self.factors)
        return f"D^{self.delta_power} | {fs}"


def _left_weight_pair(
    a: tuple[int, ...], b: tuple[int, ...], k: int
) -> tuple[tuple[int, ...], tuple[int, ...], bool]:
    """Slide letters from the head of ``b`` to the tail of ``a`` until the
    pair is left-weighted.  Preserves the product ``D(a) D(b)``."""
    changed = False
    while True:
        movable = starting_set(b) - finishing_set(a)
        if not movable:
            return a, b, changed
        j = min(movable)
        s = generator_perm(k, j)
        a = compose(a, s)  # a -> a . sigma_j
        b = compose(s, b)  # b -> sigma_j \ b
        changed = True


def left_normal_form(w: PositiveBraidWord) -> NormalForm:
    k = w.k
    ident = identity_perm(k)
    delta = half_twist_perm(k)
    factors: list[tuple[int, ...]] = [generator_perm(k, a) for a in w.letters]
    stable = False
    while not stable:
        stable = True
        for i in range(len(factors) - 1):
            a, b, changed = _left_weight_pair(factors[i], factors[i + 1], k)
            if changed:
                factors[i], factors[i + 1] = a, b
                stable = False
        factors = [f for f in factors if f != ident]
    power = 0
    while factors and factors[0] == delta:
        power += 1
        factors.pop(0)
    return NormalForm(k, power, tuple(factors))


def delta(k: int) -> PositiveBraidWord:
    """The half-twist word ``(s1)(s2 s1)...(s_{k-1} ... s1)``."""
    letters: list[int] = []
    for m in range(1, k):
        letters.extend(range(m, 0, -1))
    return PositiveBraidWord(k, tuple(letters))


def nf_to_word(nf: NormalForm) -> PositiveBraidWord:
    letters: list[int] = []
    letters.extend(delta(nf.k).letters * nf.delta_power)
    for f in nf.factors:
        letters.extend(word_of_perm(f))
    return PositiveBraidWord(nf.k, tuple(letters))


def canonical_word(w: PositiveBraidWord) -> PositiveBraidWord:
    return nf_to_word(left_normal_form(w))


def positive_equal(u: PositiveBraidWord, v: PositiveBraidWord) -> bool:
    """Equality in the positive monoid (Artin relations only)."""
    if u.k != v.k:
        raise ValueError("strand count mismatch")
    return left_normal_form(u) == left_normal_form(v)


def delta_divisibility(w: PositiveBraidWord) -> int:
    """Maximal ``p`` such that ``Delta^p`` left-divides ``w``."""
    return left_normal_form(w).delta_power


# ---------------------------------------------------------------------------
# Divisibility and quotients on normal forms (used by the isotopy searches)


def left_divisor_gens(nf: NormalForm) -> set[int]:
    """Generators sigma_j with ``sigma_j`` a left divisor of the element."""
    if nf.delta_power > 0:
        return set(range(1, nf.k))
    if not nf.factors:
        return set()
    return starting_set(nf.factors[0])


def right_divisor_gens(nf: NormalForm) -> set[int]:
    if not nf.factors:
        if nf.delta_power > 0:
            return set(range(1, nf.k))
        return set()
    return finishing_set(nf.factors[-1])


def left_quotient_by_gen(nf: NormalForm, j: int) -> PositiveBraidWord:
    """The word ``sigma_j \\ b`` for ``j`` in :func:`left_divisor_gens`."""
    k = nf.k
    s = generator_perm(k, j)
    if nf.delta_power > 0:
        # peel from a leading half twist: Delta = sigma_j . q for every j
        q = compose(s, half_twist_perm(k))
        rest = NormalForm(k, nf.delta_power - 1, nf.factors)
        return PositiveBraidWord(k, word_of_perm(q) + nf_to_word(rest).letters)
    first = nf.factors[0]
    ident = identity_perm(k)
    f1 = compose(s, first)
    tail: list[int] = []
    for f in nf.factors[1:]:
        tail.extend(word_of_perm(f))
    head = word_of_perm(f1) if f1 != ident else ()
    return PositiveBraidWord(k, tuple(head) + tuple(tail))


def right_quotient_by_gen(nf: NormalForm, j: int) -> PositiveBraidWord:
    """The word ``b / sigma_j`` for ``j`` in :func:`right_divisor_gens`."""
    k = nf.k
    s = generator_perm(k, j)
    ident = identity_perm(k)
    if not nf.factors:
        # peel from a trailing half twist: Delta = q . sigma_j
        q = compose(half_twist_perm(k), s)
        rest = NormalForm(k, nf.delta_power - 1, ())
        return PositiveBraidWord(k, nf_to_word(rest).letters + word_of_perm(q))
    last = compose(nf.factors[-1], s)
    body: list[int] = list(delta(k).letters) * nf.delta_power
    for f in nf.factors[:-1]:
        body.extend(word_of_perm(f))
    if last != ident:
        body.extend(word_of_perm(last))
    return PositiveBraidWord(k, tuple(body))


# ---------------------------------------------------------------------------
# Solid-torus positive isotopy (Artin relations + cyclic shifts)


def _nf_key(nf: NormalForm):
    return (nf.k, nf.delta_power, nf.factors)


def conjugation_neighbors(
    w: PositiveBraidWord,
) -> Iterator[tuple[tuple[str, int], PositiveBraidWord]]:
    """One-letter cyclic moves: strip a dividing generator from one side and
    reattach it on the other."""
    nf = left_normal_form(w)
    for j in sorted(left_divisor_gens(nf)):
        rest = left_quotient_by_gen(nf, j)
        yield ("L", j), PositiveBraidWord(w.k, rest.letters + (j,))
    for j in sorted(right_divisor_gens(nf)):
        rest = right_quotient_by_gen(nf, j)
        yield ("R", j), PositiveBraidWord(w.k, (j,) + rest.letters)


def apply_conjugation(w: PositiveBraidWord, move: tuple[str, int]) -> PositiveBraidWord:
    """Replay one witness step of :func:`solid_torus_isotopic`."""
    side, j = move
    nf = left_normal_form(w)
    if side == "L":
        if j not in left_divisor_gens(nf):
            raise ValueError(f"sigma_{j} does not left-divide the word")
        rest = left_quotient_by_gen(nf, j)
        return PositiveBraidWord(w.k, rest.letters + (j,))
    if side == "R":
        if j not in right_divisor_gens(nf):
            raise ValueError(f"sigma_{j} does not right-divide the word")
        rest = right_quotient_by_gen(nf, j)
        return PositiveBraidWord(w.k, (j,) + rest.letters)
    raise ValueError(f"unknown move side {side!r}")


def solid_torus_isotopic(
    u: PositiveBraidWord, v: PositiveBraidWord, budget: Budget = Budget()
) -> Verdict:
    """Decide whether ``u`` and ``v`` are related by Artin relations plus
    cyclic shifts (closed positive braids in the solid torus)."""
    if u.k != v.k:
        raise ValueError("strand count mismatch")
    if len(u) != len(v):
        return DistinctByInvariant("word lengths differ")
    if cycle_type(underlying_permutation(u)) != cycle_type(underlying_permutation(v)):
        return DistinctByInvariant("permutation cycle types differ")
    nf_u, nf_v = left_normal_form(u), left_normal_form(v)
    target = _nf_key(nf_v)
    start = nf_to_word(nf_u)
    if _nf_key(nf_u) == target:
        return Equivalent(())
    clock = budget.start()
    seen: dict[tuple, tuple] = {_nf_key(nf_u): ()}
    queue = deque([(start, _nf_key(nf_u))])
    while queue:
        cur, cur_key = queue.popleft()
        for move, nxt in conjugation_neighbors(cur):
            nxt_nf = left_normal_form(nxt)
            key = _nf_key(nxt_nf)
            if key in seen:
                continue
            path = seen[cur_key] + (move,)
            if key == target:
                return Equivalent(path)
            seen[key] = path
            if not clock.tick():
                return Unknown("budget exhausted")
            queue.append((nf_to_word(nxt_nf), key))
    return DistinctByInvariant("conjugacy orbit exhausted without meeting")


# ---------------------------------------------------------------------------
# Full positive isotopy (adds positive Markov moves)


def markov_invariant(w: PositiveBraidWord) -> tuple[int, int]:
    """(exponent sum - strand count, closure component count): both preserved
    by Artin relations, cyclic shifts, and positive Markov moves."""
    return len(w) - w.k, cycle_count(underlying_permutation(w))


def _destabilizations(w: PositiveBraidWord) -> Iterator[tuple[tuple, PositiveBraidWord]]:
    top = w.k - 1
    if top < 1:
        return
    positions = [i for i, a in enumerate(w.letters) if a == top]
    if len(positions) != 1:
        return
    i = positions[0]
    rest = w.letters[i + 1 :] + w.letters[:i]
    yield ("destab", i), PositiveBraidWord(w.k - 1, rest)


def positive_isotopic(
    u: PositiveBraidWord, v: PositiveBraidWord, budget: Budget = Budget()
) -> Verdict:
    """Decide positive isotopy of the closed braids (Artin relations, cyclic
    shifts, positive Markov stabilizations and destabilizations)."""
    if markov_invariant(u) != markov_invariant(v):
        return DistinctByInvariant(
            "markov invariant (exponent sum - strands, components) differs"
        )
    k_cap = max(u.k, v.k) + 1
    target = _nf_key(left_normal_form(v))
    start_key = _nf_key(left_normal_form(u))
    if start_key == target:
        return Equivalent(())
    clock = budget.start()
    seen: dict[tuple, tuple] = {start_key: ()}
    # explore smaller braids first (shrinking-first heuristic)
    heap: list[tuple[int, int, int, PositiveBraidWord, tuple]] = []
    counter = 0
    heapq.heappush(heap, (u.k, len(u), counter, canonical_word(u), start_key))
    while heap:
        _, _, _, cur, cur_key = heapq.heappop(heap)

        def neighbors(cur=cur):
            yield from conjugation_neighbors(cur)
            yield from _destabilizations(cur)
            if cur.k < k_cap:
                yield ("stab",), PositiveBraidWord(cur.k + 1, cur.letters + (cur.k,))

        for move, nxt in neighbors():
            nxt_nf = left_normal_form(nxt)
            key = _nf_key(nxt_nf)
            if key in seen:
                continue
            path = seen[cur_key] + (move,)
            if key == target:
                return Equivalent(path)
            seen[key] = path
            if not clock.tick():
                return Unknown("budget exhausted")
            counter += 1
            heapq.heappush(heap, (nxt.k, len(nxt), counter, nf_to_word(nxt_nf), key))
    return DistinctByInvariant("reachable set exhausted without meeting")


# ---------------------------------------------------------------------------
# Divide -> braid compilers


def beta_of_scannable(s) -> PositiveBraidWord:
    """``beta = left . bulk . right . klub`` for a scannable divide ``s``.

    ``left``/``right`` are the U-turn generators (ascending), ``bulk`` the
    event word left to right, ``klub`` the event word right to left.
    """
    letters: list[int] = []
    letters.extend(sorted(s.left_turns))
    letters.extend(s.events)
    letters.extend(sorted(s.right_turns))
    letters.extend(reversed(s.events))
    return PositiveBraidWord(s.k, tuple(letters))


def beta_of_fence_word(w) -> PositiveBraidWord:
    """Sigma letters left to right, then tau letters right to left (as sigmas)."""
    sigmas = [i for kind, i in w.letters if kind == "s"]
    taus = [i for kind, i in w.letters if kind == "t"]
    return PositiveBraidWord(w.k, tuple(sigmas) + tuple(reversed(taus)))
