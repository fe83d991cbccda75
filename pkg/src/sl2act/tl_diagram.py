"""Planar matchings as morphisms ``F^m -> F^n`` of the diagram category.

A point is ``("b", i)`` on the bottom row or ``("t", j)`` on the top row,
0-based from the left.  Composition glues the top row of the first factor
to the bottom row of the second.  A closed loop evaluates to 1; any glued
component meeting the interface three or more times contains a zigzag and
kills the composite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

Point = tuple[str, int]

BOTTOM = "b"
TOP = "t"


class PlanarMatching:
    """A noncrossing perfect pairing of ``m`` bottom and ``n`` top points."""

    __slots__ = ("m", "n", "_partner", "_hash")

    def __init__(self, m: int, n: int, pairs: Iterable[tuple[Point, Point]]):
        if m < 0 or n < 0:
            raise ValueError("point counts must be nonnegative")
        partner = [-1] * (m + n)
        for p, q in pairs:
            a, b = _index(p, m, n), _index(q, m, n)
            if a == b:
                raise ValueError(f"point {p} paired with itself")
            for x in (a, b):
                if partner[x] != -1:
                    raise ValueError(f"point {_point(x, m)} appears twice")
            partner[a], partner[b] = b, a
        if -1 in partner:
            raise ValueError(f"point {_point(partner.index(-1), m)} is unpaired")
        self.m = m
        self.n = n
        self._partner = tuple(partner)
        self._hash = hash((m, n, self._partner))
        if not self._noncrossing():
            raise ValueError(f"pairing is not planar: {self.pairs()}")

    @classmethod
    def _from_partner(cls, m: int, n: int, partner) -> "PlanarMatching":
        d = cls.__new__(cls)
        d.m, d.n, d._partner = m, n, tuple(partner)
        d._hash = hash((m, n, d._partner))
        return d

    is_zero = False

    @property
    def source(self) -> int:
        return self.m

    @property
    def target(self) -> int:
        return self.n

    def partner(self, p: Point) -> Point:
        return _point(self._partner[_index(p, self.m, self.n)], self.m)

    def pairs(self) -> list[tuple[Point, Point]]:
        """Pairs sorted by their first point, bottom row before top row."""
        out = []
        for a, b in enumerate(self._partner):
            if a < b:
                out.append((_point(a, self.m), _point(b, self.m)))
        return out

    def through_strands(self) -> list[tuple[int, int]]:
        return [(i, self._partner[i] - self.m) for i in range(self.m) if self._partner[i] >= self.m]

    def _circle_pos(self, x: int) -> int:
        # bottom left-to-right, then top right-to-left
        return x if x < self.m else self.m + (self.n - 1 - (x - self.m))

    def _noncrossing(self) -> bool:
        chords = []
        for a, b in enumerate(self._partner):
            if a < b:
                p, q = sorted((self._circle_pos(a), self._circle_pos(b)))
                chords.append((p, q))
        for i, (p1, q1) in enumerate(chords):
            for p2, q2 in chords[i + 1:]:
                if p1 < p2 < q1 < q2 or p2 < p1 < q2 < q1:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanarMatching):
            return NotImplemented
        return self.m == other.m and self.n == other.n and self._partner == other._partner

    def __lt__(self, other: "PlanarMatching") -> bool:
        return (self.m, self.n, self._partner) < (other.m, other.n, other._partner)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = " ".join(f"{p[0]}{p[1]}-{q[0]}{q[1]}" for p, q in self.pairs())
        return f"PlanarMatching({self.m}->{self.n}: {body})"


@dataclass(frozen=True)
class ZeroDiagram:
    """The zero morphism ``F^m -> F^n``; absorbing for composition and tensor."""

    m: int
    n: int
    is_zero = True

    @property
    def source(self) -> int:
        return self.m

    @property
    def target(self) -> int:
        return self.n


DiagramResult = Union[PlanarMatching, ZeroDiagram]


def _index(p: Point, m: int, n: int) -> int:
    side, i = p
    if side == BOTTOM and 0 <= i < m:
        return i
    if side == TOP and 0 <= i < n:
        return m + i
    raise ValueError(f"invalid point {p!r} for shape ({m}, {n})")


def _point(x: int, m: int) -> Point:
    return (BOTTOM, x) if x < m else (TOP, x - m)


def identity(k: int) -> PlanarMatching:
    return PlanarMatching._from_partner(k, k, [k + i for i in range(k)] + list(range(k)))


def cup() -> PlanarMatching:
    """The generator ``1 -> F^2``."""
    return PlanarMatching(0, 2, [((TOP, 0), (TOP, 1))])


def cap() -> PlanarMatching:
    """The generator ``F^2 -> 1``."""
    return PlanarMatching(2, 0, [((BOTTOM, 0), (BOTTOM, 1))])


def _noncrossing_on_line(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    first = points[0]
    out = []
    for k in range(1, len(points), 2):
        inner = points[1:k]
        outer = points[k + 1:]
        for a in _noncrossing_on_line(inner):
            for b in _noncrossing_on_line(outer):
                out.append([(first, points[k])] + a + b)
    return out


@lru_cache(maxsize=None)
def enumerate_matchings(m: int, n: int) -> tuple[PlanarMatching, ...]:
    """All planar matchings ``F^m -> F^n``, sorted."""
    if (m + n) % 2:
        return ()
    # circle positions 0..m-1 are bottom points, m..m+n-1 are top points reversed
    def to_point(c: int) -> Point:
        return (BOTTOM, c) if c < m else (TOP, n - 1 - (c - m))

    out = []
    for chords in _noncrossing_on_line(tuple(range(m + n))):
        partner = [0] * (m + n)
        for p, q in chords:
            a, b = _index(to_point(p), m, n), _index(to_point(q), m, n)
            partner[a], partner[b] = b, a
        out.append(PlanarMatching._from_partner(m, n, partner))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _count_on_line(k: int) -> int:
    if k == 0:
        return 1
    # the first point pairs with an odd offset, splitting the rest in two
    return sum(_count_on_line(j) * _count_on_line(k - 2 - j) for j in range(0, k - 1, 2))


def count_matchings(m: int, n: int) -> int:
    """Number of planar matchings ``F^m -> F^n`` without enumerating them."""
    return 0 if (m + n) % 2 else _count_on_line(m + n)


def compose(g: DiagramResult, f: DiagramResult) -> DiagramResult:
    """``g o f``: stack ``g`` on top of ``f``."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {g.source}->{g.target} after {f.source}->{f.target}")
    m, n, p = f.source, f.target, g.target
    if f.is_zero or g.is_zero:
        return ZeroDiagram(m, p)
    fp, gp = f._partner, g._partner

    def step_f(x):
        # f-point x (bottom i < m, top m+j) -> its partner inside f
        return fp[x]

    result = [-1] * (m + p)
    seen_mid = [False] * n

    def walk(start_in_f: bool, x: int) -> tuple[int, int, bool]:
        """Follow a strand entering at point ``x``; returns (end, crossings, end_in_f)."""
        in_f = start_in_f
        crossings = 0
        while True:
            if in_f:
                y = fp[x]
                if y < m:
                    return y, crossings, True
                j = y - m
                seen_mid[j] = True
                crossings += 1
                in_f, x = False, j
            else:
                y = gp[x]
                if y >= n:
                    return y - n, crossings, False
                seen_mid[y] = True
                crossings += 1
                in_f, x = True, m + y

    for i in range(m):
        if result[i] != -1:
            continue
        end, crossings, end_in_f = walk(True, i)
        if crossings >= 3:
            return ZeroDiagram(m, p)
        other = end if end_in_f else m + end
        result[i], result[other] = other, i
    for k in range(p):
        if result[m + k] != -1:
            continue
        end, crossings, end_in_f = walk(False, n + k)
        if crossings >= 3:
            return ZeroDiagram(m, p)
        other = end if end_in_f else m + end
        result[m + k], result[other] = other, m + k
    # closed loops: each must meet the interface exactly twice
    for j in range(n):
        if seen_mid[j]:
            continue
        count = 0
        x, in_f = j, False
        while True:
            seen_mid[x] = True
            count += 1
            y = gp[x] if not in_f else fp[m + x] - m
            x = y
            in_f = not in_f
            if x == j and not in_f:
                break
        if count > 2:
            return ZeroDiagram(m, p)
    return PlanarMatching._from_partner(m, p, result)


def tensor(f: DiagramResult, g: DiagramResult) -> DiagramResult:
    """Horizontal juxtaposition, ``f`` on the left."""
    m, n = f.source + g.source, f.target + g.target
    if f.is_zero or g.is_zero:
        return ZeroDiagram(m, n)
    pairs = []
    for (s1, i1), (s2, i2) in f.pairs():
        pairs.append(((s1, i1), (s2, i2)))
    for (s1, i1), (s2, i2) in g.pairs():
        shift1 = f.m if s1 == BOTTOM else f.n
        shift2 = f.m if s2 == BOTTOM else f.n
        pairs.append(((s1, i1 + shift1), (s2, i2 + shift2)))
    return PlanarMatching(m, n, pairs)


@dataclass(frozen=True)
class Slice:
    """An elementary cup or cap inserted at ``position`` among ``width`` strands."""

    kind: str
    position: int
    width: int

    def __post_init__(self):
        if self.kind == "cup":
            if not 0 <= self.position <= self.width:
                raise ValueError(f"cup position {self.position} out of range for width {self.width}")
        elif self.kind == "cap":
            if not 0 <= self.position <= self.width - 2:
                raise ValueError(f"cap position {self.position} out of range for width {self.width}")
        else:
            raise ValueError(f"unknown slice kind {self.kind!r}")

    @property
    def target_width(self) -> int:
        return self.width + 2 if self.kind == "cup" else self.width - 2

    def to_matching(self) -> PlanarMatching:
        a, w = self.position, self.width
        if self.kind == "cup":
            return tensor(tensor(identity(a), cup()), identity(w - a))
        return tensor(tensor(identity(a), cap()), identity(w - a - 2))


def slice_decompose(d: PlanarMatching) -> list[Slice]:
    """Factor ``d`` into slices, listed in the order they are applied.

    All cups come first (outermost cup created first, so each new cup is
    adjacent), then all caps, innermost-leftmost first.
    """
    m, n = d.m, d.n
    through = d.through_strands()
    # intermediate row: per gap between through strands, the capped bottom
    # points of that gap followed by the cupped top points of that gap
    row: list[Point] = []
    prev_b, prev_t = 0, 0
    for i, j in through + [(m, n)]:
        row.extend((BOTTOM, x) for x in range(prev_b, i))
        row.extend((TOP, x) for x in range(prev_t, j))
        if i < m:
            row.append((BOTTOM, i))
        prev_b, prev_t = i + 1, j + 1

    def peel(tokens: list[Point], side: str) -> list[tuple[int, int]]:
        """Remove adjacent same-side partners, leftmost innermost first; returns (position, width)."""
        tokens = list(tokens)
        removed = []
        while True:
            for a in range(len(tokens) - 1):
                p, q = tokens[a], tokens[a + 1]
                if p[0] == side and q[0] == side and d.partner(p) == q:
                    removed.append((a, len(tokens)))
                    del tokens[a:a + 2]
                    break
            else:
                return removed

    cups = [Slice("cup", a, w - 2) for a, w in reversed(peel(row, TOP))]
    caps = [Slice("cap", a, w) for a, w in peel(row, BOTTOM)]
    return cups + caps


def recompose(slices: list[Slice], m: int) -> DiagramResult:
    out: DiagramResult = identity(m)
    for s in slices:
        if s.width != out.target:
            raise ValueError(f"slice {s} does not fit width {out.target}")
        out = compose(s.to_matching(), out)
    return out


def point_name(p: Point) -> str:
    return f"{p[0]}{p[1]}"


def parse_point(s: str) -> Point:
    s = s.strip()
    if len(s) < 2 or s[0] not in (BOTTOM, TOP) or not s[1:].isdigit():
        raise ValueError(f"bad point name {s!r}")
    return (s[0], int(s[1:]))


def to_json(d: DiagramResult) -> dict:
    if d.is_zero:
        return {"zero": True, "bottom": d.m, "top": d.n}
    return {"bottom": d.m, "top": d.n,
            "pairs": [[point_name(p), point_name(q)] for p, q in d.pairs()]}


def from_json(obj: dict) -> DiagramResult:
    if obj.get("zero"):
        return ZeroDiagram(int(obj.get("bottom", 0)), int(obj.get("top", 0)))
    try:
        m, n = int(obj["bottom"]), int(obj["top"])
        pairs = [(parse_point(a), parse_point(b)) for a, b in obj["pairs"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed diagram JSON: {exc}") from exc
    return PlanarMatching(m, n, pairs)
