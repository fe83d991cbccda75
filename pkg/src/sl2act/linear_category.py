"""Rational linear combinations of planar matchings, and the Karoubi envelope.

Objects of the envelope are formal direct sums of pairs ``(F^m, e)`` with
``e`` idempotent; a morphism is a matrix of :class:`HomElement` blocks with
``e' f = f = f e``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import tl_diagram as tl
from .rational_linalg import format_rational, parse_rational, to_rational
from .tl_diagram import DiagramResult, PlanarMatching


class HomElement:
    """A finitely supported ``PlanarMatching -> Rational`` map of shape ``(m, n)``."""

    __slots__ = ("m", "n", "coeffs")

    def __init__(self, m: int, n: int, coeffs: Mapping[PlanarMatching, object] = ()):
        self.m = m
        self.n = n
        clean = {}
        for d, c in dict(coeffs).items():
            if (d.m, d.n) != (m, n):
                raise ValueError(f"matching of shape ({d.m}, {d.n}) in a ({m}, {n}) hom element")
            c = to_rational(c)
            if c:
                clean[d] = c
        self.coeffs = clean

    @classmethod
    def from_diagram(cls, d: DiagramResult, coeff=1) -> "HomElement":
        if d.is_zero:
            return cls(d.m, d.n)
        return cls(d.m, d.n, {d: coeff})

    @classmethod
    def identity(cls, m: int) -> "HomElement":
        return cls.from_diagram(tl.identity(m))

    @classmethod
    def zero(cls, m: int, n: int) -> "HomElement":
        return cls(m, n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> list[tuple[PlanarMatching, Fraction]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomElement):
            return NotImplemented
        return (self.m, self.n, self.coeffs) == (other.m, other.n, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.m, self.n, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"HomElement({self.m}->{self.n}: 0)"
        body = " + ".join(f"{format_rational(c)}*{d!r}" for d, c in self.terms())
        return f"HomElement({self.m}->{self.n}: {body})"

    def _check_shape(self, other: "HomElement") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError(f"shape mismatch ({self.m}, {self.n}) vs ({other.m}, {other.n})")

    def __add__(self, other: "HomElement") -> "HomElement":
        self._check_shape(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return HomElement(self.m, self.n, out)

    def __neg__(self) -> "HomElement":
        return self.scale(-1)

    def __sub__(self, other: "HomElement") -> "HomElement":
        return self + (-other)

    def scale(self, c) -> "HomElement":
        c = to_rational(c)
        return HomElement(self.m, self.n, {d: c * x for d, x in self.coeffs.items()})

    def __rmul__(self, c) -> "HomElement":
        return self.scale(c)

    def __matmul__(self, other: "HomElement") -> "HomElement":
        return compose_linear(self, other)

    def coordinates(self, basis: Sequence[PlanarMatching]) -> list[Fraction]:
        return [self.coeffs.get(d, Fraction(0)) for d in basis]


def hom_basis(m: int, n: int) -> tuple[PlanarMatching, ...]:
    return tl.enumerate_matchings(m, n)


def compose_linear(g: HomElement, f: HomElement) -> HomElement:
    """``g o f`` extended bilinearly; diagram composites equal to zero drop out."""
    if f.n != g.m:
        raise ValueError(f"cannot compose ({g.m}->{g.n}) after ({f.m}->{f.n})")
    out: dict = {}
    for d2, c2 in g.coeffs.items():
        for d1, c1 in f.coeffs.items():
            d = tl.compose(d2, d1)
            if not d.is_zero:
                out[d] = out.get(d, 0) + c1 * c2
    return HomElement(f.m, g.n, out)


def tensor_linear(f: HomElement, g: HomElement) -> HomElement:
    out: dict = {}
    for d1, c1 in f.coeffs.items():
        for d2, c2 in g.coeffs.items():
            d = tl.tensor(d1, d2)
            out[d] = out.get(d, 0) + c1 * c2
    return HomElement(f.m + g.m, f.n + g.n, out)


def is_idempotent(e: HomElement) -> bool:
    return e.m == e.n and compose_linear(e, e) == e


@dataclass(frozen=True)
class CSummand:
    """The object ``(F^power, idempotent)`` of the Karoubi envelope."""

    power: int
    idempotent: HomElement

    def __post_init__(self):
        e = self.idempotent
        if (e.m, e.n) != (self.power, self.power):
            raise ValueError("idempotent must be an endomorphism of F^power")
        if not is_idempotent(e):
            raise ValueError(f"not an idempotent: {e!r}")

    @classmethod
    def full(cls, power: int) -> "CSummand":
        return cls(power, HomElement.identity(power))


@dataclass(frozen=True)
class CObject:
    """A formal direct sum of summands; the empty sum is the zero object."""

    summands: tuple[CSummand, ...] = ()

    @classmethod
    def power(cls, m: int) -> "CObject":
        return cls((CSummand.full(m),))

    def __len__(self) -> int:
        return len(self.summands)


class CMorphism:
    """Block matrix ``blocks[target_index][source_index]`` of hom elements."""

    def __init__(self, source: CObject, target: CObject, blocks: Sequence[Sequence[HomElement]]):
        self.source = source
        self.target = target
        self.blocks = tuple(tuple(row) for row in blocks)
        if len(self.blocks) != len(target) or any(len(r) != len(source) for r in self.blocks):
            raise ValueError("block matrix shape does not match the objects")
        for t, row in zip(target.summands, self.blocks):
            for s, blk in zip(source.summands, row):
                if (blk.m, blk.n) != (s.power, t.power):
                    raise ValueError("block has the wrong shape")
                if compose_linear(t.idempotent, blk) != blk or compose_linear(blk, s.idempotent) != blk:
                    raise ValueError("block does not satisfy e' f = f = f e")

    @classmethod
    def identity(cls, X: CObject) -> "CMorphism":
        n = len(X)
        return cls(X, X, [[X.summands[i].idempotent if i == j else
                           HomElement.zero(X.summands[j].power, X.summands[i].power)
                           for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"CMorphism({len(self.source)} -> {len(self.target)} summands)"


def compose_c(g: CMorphism, f: CMorphism) -> CMorphism:
    if f.target != g.source:
        raise ValueError("cannot compose: middle objects differ")
    blocks = []
    for i, t in enumerate(g.target.summands):
        row = []
        for j, s in enumerate(f.source.summands):
            acc = HomElement.zero(s.power, t.power)
            for k in range(len(f.target)):
                acc = acc + compose_linear(g.blocks[i][k], f.blocks[k][j])
            row.append(acc)
        blocks.append(row)
    return CMorphism(f.source, g.target, blocks)


def split_idempotent(e: HomElement) -> tuple[CMorphism, CMorphism]:
    """Split ``e`` through the summand ``(F^m, e)``: returns ``(projection, inclusion)``."""
    if not is_idempotent(e):
        raise ValueError("split_idempotent needs an idempotent endomorphism")
    whole, part = CObject.power(e.m), CObject((CSummand(e.m, e),))
    projection = CMorphism(whole, part, [[e]])
    inclusion = CMorphism(part, whole, [[e]])
    return projection, inclusion


def summand_type(e: HomElement) -> dict[int, int]:
    """Highest weights (with multiplicity) of the simple summands cut out by ``e``."""
    from .crystals_q import functor_from_c
    from .rational_linalg import rank

    image = functor_from_c(e)
    out = {}
    for n, M in sorted(image.blocks.items()):
        r = rank(M)
        if r:
            out[n] = r
    return out


def decompose_object(m: int) -> list[tuple[int, HomElement]]:
    """A complete orthogonal family of primitive idempotents of ``End(F^m)``.

    Each coordinate projection in the rational crystal category is pulled
    back to a combination of matchings by solving the linear system given
    by the (full) functor.
    """
    from .crystals_q import functor_from_c, power_object
    from .rational_linalg import RatMatrix, solve_linear

    basis = hom_basis(m, m)
    obj = power_object(m)
    coords = [(n, a, b) for n in sorted(obj.mult) for a in range(len(obj.mult[n]))
              for b in range(len(obj.mult[n]))]
    images = [functor_from_c(HomElement.from_diagram(d)) for d in basis]
    columns = [[img.entry(n, a, b) for (n, a, b) in coords] for img in images]
    A = RatMatrix(list(zip(*columns)), rows=len(coords), cols=len(basis))
    out = []
    for n in sorted(obj.mult):
        for k in range(len(obj.mult[n])):
            target = [Fraction(int(c == (n, k, k))) for c in coords]
            x = solve_linear(A, target)
            if x is None:
                raise ArithmeticError(f"projection onto copy {k} of b({n}) is not in the image of End(F^{m})")
            out.append((n, HomElement(m, m, dict(zip(basis, x)))))
    return out


def to_json(h: HomElement) -> dict:
    return {"m": h.m, "n": h.n,
            "terms": [{"coeff": format_rational(c), "pairs": tl.to_json(d)["pairs"]} for d, c in h.terms()]}


def from_json(obj: dict) -> HomElement:
    try:
        m, n = int(obj["m"]), int(obj["n"])
        coeffs: dict = {}
        for term in obj.get("terms", []):
            d = tl.from_json({"bottom": m, "top": n, "pairs": term["pairs"]})
            coeffs[d] = coeffs.get(d, 0) + parse_rational(term.get("coeff", "1"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed hom element JSON: {exc}") from exc
    return HomElement(m, n, coeffs)
