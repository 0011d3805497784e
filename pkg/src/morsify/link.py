"""Link diagrams and their invariants.

Diagrams are planar-diagram (PD) codes: each crossing is a 4-tuple of arc
labels listed counterclockwise starting from the incoming under-strand,
together with its sign; ``free_loops`` counts crossing-free circles split
from the rest of the diagram.  Positive braid words close up to diagrams via
``closure``.

Invariants: component count, the (one-variable) Alexander polynomial -- via
the reduced Burau representation for braid words and via the Fox/Wirtinger
matrix for diagrams, both computed exactly by rational evaluation and
interpolation -- the Kauffman bracket (capped state count), and the Jones
polynomial in the half-integer variable ``s`` with ``s^2 = t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Word = tuple  # of nonzero ints; letter i > 0 crosses strands i, i+1 positively


class CapExceeded(RuntimeError):
    """The diagram has more crossings than the requested state-sum cap."""


# ---------------------------------------------------------------------------
# Laurent polynomials (integer coefficients, one variable)


@dataclass(frozen=True)
class LaurentPoly:
    coeffs: tuple  # sorted ((exponent, coefficient), ...), coefficients nonzero

    def __post_init__(self):
        cleaned = tuple(
            (int(e), int(c)) for e, c in sorted(self.coeffs) if c != 0
        )
        object.__setattr__(self, "coeffs", cleaned)

    @staticmethod
    def from_dict(d: dict) -> "LaurentPoly":
        return LaurentPoly(tuple((e, c) for e, c in d.items() if c != 0))

    @staticmethod
    def constant(c: int) -> "LaurentPoly":
        return LaurentPoly(((0, c),) if c else ())

    @staticmethod
    def var(exp: int = 1, coef: int = 1) -> "LaurentPoly":
        return LaurentPoly(((exp, coef),))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs))

    def __call__(self, x: Fraction) -> Fraction:
        return sum((Fraction(c) * Fraction(x) ** e for e, c in self.coeffs), Fraction(0))

    def normalize(self) -> "LaurentPoly":
        """The unit-class representative: lowest exponent 0, top coefficient
        positive."""
        if self.is_zero:
            return self
        p = self.shift(-self.coeffs[0][0])
        if p.coeffs[-1][1] < 0:
            p = -p
        return p

    def mirror(self) -> "LaurentPoly":
        """Substitute the variable by its inverse."""
        return LaurentPoly(tuple((-e, c) for e, c in self.coeffs))


def format_poly(p: LaurentPoly, var: str = "t") -> str:
    if p.is_zero:
        return "0"
    return " + ".join(f"{c}*{var}^{e}" for e, c in p.coeffs)


def parse_poly(text: str, var: str = "t") -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return LaurentPoly(())
    out: dict = {}
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError("empty term in polynomial")
        if "*" in term:
            cs, vs = term.split("*", 1)
            coef = int(cs.strip())
            vs = vs.strip()
            if not vs.startswith(var + "^"):
                raise ValueError(f"malformed power {vs!r}")
            exp = int(vs[len(var) + 1 :])
        else:
            coef = int(term)
            exp = 0
        out[exp] = out.get(exp, 0) + coef
    return LaurentPoly.from_dict(out)


def _interpolate(xs: list, ys: list) -> list:
    """Newton interpolation over the rationals; returns coefficients of
    ascending powers."""
    n = len(xs)
    divided = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into monomial coefficients
    coeffs = [Fraction(0)] * n
    acc = [Fraction(1)] + [Fraction(0)] * (n - 1)  # running product poly
    for j in range(n):
        for i in range(n):
            coeffs[i] += divided[j] * acc[i]
        if j + 1 < n:
            # acc *= (x - xs[j])
            nxt = [Fraction(0)] * n
            for i in range(n - 1):
                nxt[i + 1] += acc[i]
                nxt[i] -= acc[i] * xs[j]
            acc = nxt
    return coeffs


def _poly_from_fractions(coeffs: list) -> LaurentPoly:
    out: dict = {}
    for e, c in enumerate(coeffs):
        if c != 0:
            if c.denominator != 1:
                raise ArithmeticError(
                    "interpolated polynomial has a non-integer coefficient"
                )
            out[e] = int(c)
    return LaurentPoly.from_dict(out)


# ---------------------------------------------------------------------------
# Diagrams


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple  # of ((a, b, c, d), sign); arcs counterclockwise from under-in
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(
            self,
            "crossings",
            tuple((tuple(arcs), int(sign)) for arcs, sign in self.crossings),
        )
        counts: dict = {}
        for arcs, sign in self.crossings:
            if len(arcs) != 4 or sign not in (-1, 1):
                raise ValueError(f"malformed crossing {(arcs, sign)}")
            for a in arcs:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted((a for a, c in counts.items() if c != 2), key=str)
        if bad:
            raise ValueError(f"arc labels must appear exactly twice: {bad[:4]}")
        if self.free_loops < 0:
            raise ValueError("free_loops must be nonnegative")

    @property
    def writhe(self) -> int:
        return sum(sign for _, sign in self.crossings)


def closure(word: Word, k: int) -> LinkDiagram:
    """The braid closure: the word read upward, positive letters crossing the
    left strand over the right."""
    if k < 1:
        raise ValueError("need at least one strand")
    for letter in word:
        if letter == 0 or not 1 <= abs(letter) <= k - 1:
            raise ValueError(f"letter {letter} out of range for {k} strands")
    parent = list(range(k + 2 * len(word)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cur = list(range(k))
    counter = k
    crossings = []
    for letter in word:
        j = abs(letter)
        u, v = cur[j - 1], cur[j]
        nu, nv = counter, counter + 1
        counter += 2
        if letter > 0:
            crossings.append(((v, nv, nu, u), +1))
        else:
            crossings.append(((u, v, nv, nu), -1))
        cur[j - 1], cur[j] = nu, nv
    # close up: the top of each strand position joins its bottom
    free = 0
    for j in range(k):
        if cur[j] == j:
            free += 1  # a strand no letter touched
        else:
            parent[find(cur[j])] = find(j)
    relabeled = []
    fresh: dict = {}
    for arcs, sign in crossings:
        row = []
        for a in arcs:
            r = find(a)
            if r not in fresh:
                fresh[r] = len(fresh)
            row.append(fresh[r])
        relabeled.append((tuple(row), sign))
    return LinkDiagram(tuple(relabeled), free_loops=free)


def component_count(d: LinkDiagram) -> int:
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    labels: set = set()
    for (a, b, c, dd), _ in d.crossings:
        labels.update((a, b, c, dd))
        union(a, c)
        union(b, dd)
    return len({find(x) for x in labels}) + d.free_loops


# ---------------------------------------------------------------------------
# Alexander polynomial


def _burau_letter(k: int, letter: int, t: Fraction) -> list:
    """The unreduced Burau matrix of one braid letter at the value ``t``
    (fixing the all-ones vector)."""
    m = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    p = abs(letter) - 1
    if letter > 0:
        m[p][p] = 1 - t
        m[p + 1][p] = Fraction(1)
        m[p][p + 1] = t
        m[p + 1][p + 1] = Fraction(0)
    else:
        m[p][p] = Fraction(0)
        m[p + 1][p] = 1 / t
        m[p][p + 1] = Fraction(1)
        m[p + 1][p + 1] = 1 - 1 / t
    return m


def _mat_mul(a: list, b: list) -> list:
    n = len(a)
    return [
        [sum(a[i][x] * b[x][j] for x in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _det(m: list) -> Fraction:
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _reduced_burau_det(word: Word, k: int, t: Fraction) -> Fraction:
    """det(I - reduced Burau of the word) at the value ``t``."""
    u = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    for letter in word:
        u = _mat_mul(u, _burau_letter(k, letter, t))
    if k == 1:
        return Fraction(1)
    # quotient by the fixed all-ones vector: change basis to
    # (e_0, ..., e_{k-2}, ones); the induced action is the leading block
    # of P^-1 U P, and P^-1 y = (y_0 - y_{k-1}, ..., y_{k-2} - y_{k-1}, y_{k-1})
    red = [[Fraction(0)] * (k - 1) for _ in range(k - 1)]
    for j in range(k - 1):
        col = [u[i][j] for i in range(k)]  # U e_j
        for i in range(k - 1):
            red[i][j] = col[i] - col[k - 1]
    m = [
        [Fraction(int(i == j)) - red[i][j] for j in range(k - 1)]
        for i in range(k - 1)
    ]
    return _det(m)


def _alexander_of_word(word: Word, k: int) -> LaurentPoly:
    neg = sum(1 for letter in word if letter < 0)  # clears the 1/t powers
    degree = len(word) + k + neg + 2
    xs = [Fraction(i) for i in range(2, degree + 3)]
    ys = []
    for t in xs:
        q = _reduced_burau_det(word, k, t) * (1 - t)
        ys.append(q * t**neg / (1 - t**k))
    return _poly_from_fractions(_interpolate(xs, ys)).normalize()


def _wirtinger_matrix(d: LinkDiagram, t: Fraction):
    """The Fox matrix of the diagram's Wirtinger presentation at ``t``:
    one row per crossing, one column per over-strand class."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (_, b, _, dd), _s in d.crossings:
        rb, rd = find(b), find(dd)
        if rb != rd:
            parent[rb] = rd
    classes = sorted({find(x) for arcs, _ in d.crossings for x in arcs}, key=str)
    col = {c: i for i, c in enumerate(classes)}
    rows = []
    for (a, b, c, dd), sign in d.crossings:
        row = [Fraction(0)] * len(classes)
        over = col[find(b)]
        if sign > 0:
            row[col[find(a)]] += t
            row[over] += 1 - t
            row[col[find(c)]] += -1
        else:
            row[col[find(a)]] += 1
            row[over] += t - 1
            row[col[find(c)]] += -t
        rows.append(row)
    return rows, len(classes)


def _alexander_of_diagram(d: LinkDiagram) -> LaurentPoly:
    n = len(d.crossings)
    if d.free_loops:
        if n or d.free_loops > 1:
            return LaurentPoly(())  # split links have vanishing polynomial
        return LaurentPoly.constant(1)
    if n == 0:
        raise ValueError("empty diagram has no link")
    degree = n + 2
    xs = [Fraction(i) for i in range(2, degree + 3)]
    ys = []
    for t in xs:
        rows, g = _wirtinger_matrix(d, t)
        # delete one column; if rows still outnumber columns, also delete rows
        minor = [row[: g - 1] for row in rows]
        while len(minor) > g - 1:
            minor.pop()
        if len(minor) < g - 1:
            raise ValueError(
                "diagram has an over-strand with no underpass; "
                "its Fox matrix is not square"
            )
        ys.append(_det(minor))
    return _poly_from_fractions(_interpolate(xs, ys)).normalize()


def alexander(x: Union[Word, LinkDiagram], k: Optional[int] = None) -> LaurentPoly:
    """The one-variable Alexander polynomial, normalized to lowest exponent 0
    and positive top coefficient.  Braid words use the reduced Burau
    determinant; diagrams use the Fox/Wirtinger matrix."""
    if isinstance(x, LinkDiagram):
        return _alexander_of_diagram(x)
    if k is None:
        raise ValueError("a braid word needs its strand count k")
    return _alexander_of_word(tuple(x), k)


# ---------------------------------------------------------------------------
# Kauffman bracket and Jones polynomial


_DELTA = LaurentPoly(((2, -1), (-2, -1)))  # loop value -A^2 - A^-2


def _connect(matching: dict, x, y) -> int:
    """Splice a strand segment with end labels ``x`` and ``y`` into the open
    paths; returns the number of loops closed (0 or 1)."""
    if x == y:
        return 1
    if matching.get(x) == y:
        del matching[x]
        del matching[y]
        return 1
    a = matching.pop(x, x)
    if a != x:
        matching.pop(a, None)
    b = matching.pop(y, y)
    if b != y:
        matching.pop(b, None)
    matching[a] = b
    matching[b] = a
    return 0


def _bracket_order(crossings) -> list:
    """Process crossings keeping the set of dangling arc labels small."""
    remaining = set(range(len(crossings)))
    pending: dict = {}
    for arcs, _ in crossings:
        for a in arcs:
            pending[a] = pending.get(a, 0) + 1
    dangling: set = set()
    order = []
    while remaining:
        best = min(
            remaining,
            key=lambda i: (
                len(dangling | set(crossings[i][0]))
                - len(set(crossings[i][0]) & dangling),
                i,
            ),
        )
        remaining.discard(best)
        order.append(best)
        for a in crossings[best][0]:
            pending[a] -= 1
            if pending[a] == 0:
                dangling.discard(a)
            else:
                dangling.add(a)
    return order


def kauffman_bracket(d: LinkDiagram, cap: int = 24) -> LaurentPoly:
    """The bracket polynomial in the variable A, with the single-loop diagram
    normalized to 1.  Raises :class:`CapExceeded` beyond ``cap`` crossings."""
    n = len(d.crossings)
    if n > cap:
        raise CapExceeded(f"{n} crossings exceed the cap of {cap}")
    if n == 0:
        if d.free_loops == 0:
            raise ValueError("empty diagram has no link")
        out = LaurentPoly.constant(1)
        for _ in range(d.free_loops - 1):
            out = out * _DELTA
        return out
    states: dict = {(): {0: 1}}
    for i in _bracket_order(d.crossings):
        (a, b, c, dd), _sign = d.crossings[i]
        new_states: dict = {}
        for mkey, poly in states.items():
            base = dict(mkey)
            for (p1, p2), da in ((((a, b), (c, dd)), 1), (((a, dd), (b, c)), -1)):
                m = dict(base)
                loops = _connect(m, *p1) + _connect(m, *p2)
                key = tuple(sorted(m.items(), key=lambda kv: (str(kv[0]), str(kv[1]))))
                acc = new_states.setdefault(key, {})
                for e, coef in poly.items():
                    # weight A^da, times delta per closed loop
                    terms = {e + da: coef}
                    for _ in range(loops):
                        nt: dict = {}
                        for ee, cc in terms.items():
                            for de, dc in _DELTA.coeffs:
                                nt[ee + de] = nt.get(ee + de, 0) + cc * dc
                        terms = nt
                    for ee, cc in terms.items():
                        acc[ee] = acc.get(ee, 0) + cc
        states = new_states
    if list(states.keys()) != [()]:
        raise ArithmeticError("bracket contraction left open strands")
    total = LaurentPoly.from_dict(states[()])
    for _ in range(d.free_loops):
        total = total * _DELTA
    # every state closed at least one loop; remove the overall factor delta
    # (exact division by -A^2 - A^-2)
    return _divide_by_delta(total)


def _divide_by_delta(total: LaurentPoly) -> LaurentPoly:
    if total.is_zero:
        return total
    num = total * LaurentPoly.var(2, -1)  # total * (-A^2); divide by A^4 + 1
    low = num.coeffs[0][0]
    coeffs = dict(num.shift(-low).coeffs)
    deg = max(coeffs)
    quot: dict = {}
    for e in range(deg, 3, -1):
        c = coeffs.pop(e, 0)
        if c == 0:
            continue
        quot[e - 4] = c
        coeffs[e - 4] = coeffs.get(e - 4, 0) - c
    if any(coeffs.values()):
        raise ArithmeticError("bracket is not divisible by the loop value")
    return LaurentPoly.from_dict(quot).shift(low)


def jones(d: LinkDiagram, cap: int = 24) -> LaurentPoly:
    """The Jones polynomial in the variable s with s^2 = t, from the
    writhe-normalized Kauffman bracket."""
    br = kauffman_bracket(d, cap)
    w = d.writhe
    sign = -1 if w % 2 else 1
    shifted = LaurentPoly(tuple((e - 3 * w, sign * c) for e, c in br.coeffs))
    out: dict = {}
    for e, c in shifted.coeffs:
        if e % 2 != 0:
            raise ArithmeticError("bracket exponents are not all even")
        out[e // 2] = c  # s = A^2, so that s^2 plays the role of t
    return LaurentPoly.from_dict(out)


# ---------------------------------------------------------------------------
# Fingerprints


def fingerprint(
    x: Union[Word, LinkDiagram],
    k: Optional[int] = None,
    include_jones: bool = False,
    cap: int = 24,
):
    """(component count, normalized Alexander polynomial, Jones polynomial or
    None).  The Jones entry stays None unless requested, so fingerprints of
    the same link computed through diagrams of very different sizes compare
    equal."""
    d = x if isinstance(x, LinkDiagram) else closure(tuple(x), k)
    jn = None
    if include_jones:
        try:
            jn = jones(d, cap)
        except CapExceeded:
            jn = None
    return (component_count(d), alexander(x, k), jn)


# ---------------------------------------------------------------------------
# PD text format


def parse_link_diagram(text: str) -> LinkDiagram:
    crossings = []
    free = 0
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "X":
            if len(parts) != 6 or parts[5] not in ("+", "-"):
                raise ValueError(f"line {ln}: X takes four arcs and a sign")
            arcs = tuple(int(p) if p.lstrip("-").isdigit() else p for p in parts[1:5])
            crossings.append((arcs, 1 if parts[5] == "+" else -1))
        elif parts[0] == "loop":
            free += 1
        else:
            raise ValueError(f"line {ln}: unknown directive {parts[0]!r}")
    return LinkDiagram(tuple(crossings), free_loops=free)


def format_link_diagram(d: LinkDiagram) -> str:
    lines = []
    for arcs, sign in d.crossings:
        lines.append(
            "X " + " ".join(str(a) for a in arcs) + (" +" if sign > 0 else " -")
        )
    lines.extend("loop" for _ in range(d.free_loops))
    return "\n".join(lines) + "\n"
