"""Graded integral category O for sl2, its translation functors and the action of F.

Objects of a regular block are quadruples ``(psi, phi, var, can)`` of graded
spaces with ``var: phi -> psi<-1>`` and ``can: psi -> phi<-1>`` satisfying
``var o can = 0``.  The full category has one singular block (index -1, plain
graded vector spaces) and regular blocks indexed by ``k >= 0``.

Direct sums are concatenated degree by degree and summand order is part of
the data: no identification is ever applied silently.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .rational_linalg import (RatMatrix, block_diag, hstack, kernel_basis, matrix_from_json,
                              matrix_to_json, vstack)
from .tl_diagram import DiagramResult, slice_decompose


class GradedVS:
    """Finite-dimensional graded space, recorded by its dimension in each degree."""

    __slots__ = ("dims",)

    def __init__(self, dims: Mapping[int, int] = ()):
        clean = {}
        for d, n in dict(dims).items():
            if n < 0:
                raise ValueError("dimensions are nonnegative")
            if n:
                clean[int(d)] = int(n)
        self.dims = dict(sorted(clean.items()))

    def dim(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def degrees(self) -> list[int]:
        return list(self.dims)

    def shift(self, n: int) -> "GradedVS":
        """``V<n>``: the degree ``i`` part is ``V_{i-n}``."""
        return GradedVS({d + n: k for d, k in self.dims.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedVS):
            return NotImplemented
        return self.dims == other.dims

    def __hash__(self) -> int:
        return hash(tuple(self.dims.items()))

    def __repr__(self) -> str:
        return f"GradedVS({self.dims})"


def vs_sum(*spaces: GradedVS) -> GradedVS:
    out: dict[int, int] = {}
    for V in spaces:
        for d, n in V.dims.items():
            out[d] = out.get(d, 0) + n
    return GradedVS(out)


class GradedMap:
    """Degree-preserving map; ``blocks[i]`` is a ``dim W_i x dim V_i`` matrix."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: GradedVS, target: GradedVS, blocks: Mapping[int, RatMatrix] = ()):
        self.source = source
        self.target = target
        out = {}
        for d, M in dict(blocks).items():
            if M.shape != (target.dim(d), source.dim(d)):
                raise ValueError(f"degree {d} block has shape {M.shape}, "
                                 f"expected {(target.dim(d), source.dim(d))}")
            if not M.is_zero():
                out[d] = M
        self.blocks = out

    def block(self, d: int) -> RatMatrix:
        M = self.blocks.get(d)
        return M if M is not None else RatMatrix.zeros(self.target.dim(d), self.source.dim(d))

    def is_zero(self) -> bool:
        return not self.blocks

    def shift(self, n: int) -> "GradedMap":
        return GradedMap(self.source.shift(n), self.target.shift(n),
                         {d + n: M for d, M in self.blocks.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"GradedMap({self.source!r} -> {self.target!r}, degrees {sorted(self.blocks)})"

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        if other.target != self.source:
            raise ValueError(f"cannot compose {self!r} after {other!r}")
        common = set(self.blocks) & set(other.blocks)
        return GradedMap(other.source, self.target, {d: self.blocks[d] @ other.blocks[d] for d in common})

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("cannot add maps with different source or target")
        degrees = set(self.blocks) | set(other.blocks)
        return GradedMap(self.source, self.target, {d: self.block(d) + other.block(d) for d in degrees})

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + other.scale(-1)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.source, self.target, {d: M.scale(c) for d, M in self.blocks.items()})

    @classmethod
    def identity(cls, V: GradedVS) -> "GradedMap":
        return cls(V, V, {d: RatMatrix.identity(n) for d, n in V.dims.items()})

    @classmethod
    def zero(cls, V: GradedVS, W: GradedVS) -> "GradedMap":
        return cls(V, W)


def map_sum(*maps: GradedMap) -> GradedMap:
    """Block-diagonal sum of maps."""
    src = vs_sum(*(g.source for g in maps))
    tgt = vs_sum(*(g.target for g in maps))
    degrees = set(src.dims) | set(tgt.dims)
    return GradedMap(src, tgt, {d: block_diag([g.block(d) for g in maps]) for d in degrees})


def vs_inclusion(spaces: Sequence[GradedVS], idx: int) -> GradedMap:
    total = vs_sum(*spaces)
    blocks = {}
    for d, n in spaces[idx].dims.items():
        parts = [RatMatrix.identity(n) if k == idx else RatMatrix.zeros(V.dim(d), n)
                 for k, V in enumerate(spaces)]
        blocks[d] = vstack(parts, cols=n)
    return GradedMap(spaces[idx], total, blocks)


def vs_projection(spaces: Sequence[GradedVS], idx: int) -> GradedMap:
    total = vs_sum(*spaces)
    blocks = {}
    for d, n in spaces[idx].dims.items():
        parts = [RatMatrix.identity(n) if k == idx else RatMatrix.zeros(n, V.dim(d))
                 for k, V in enumerate(spaces)]
        blocks[d] = hstack(parts, rows=n)
    return GradedMap(total, spaces[idx], blocks)


class Block0Object:
    """``(psi, phi, var, can)`` with ``var: phi -> psi<-1>``, ``can: psi -> phi<-1>``."""

    __slots__ = ("psi", "phi", "var", "can")

    def __init__(self, psi: GradedVS, phi: GradedVS, var: Optional[GradedMap] = None,
                 can: Optional[GradedMap] = None):
        var = var if var is not None else GradedMap.zero(phi, psi.shift(-1))
        can = can if can is not None else GradedMap.zero(psi, phi.shift(-1))
        if var.source != phi or var.target != psi.shift(-1):
            raise ValueError("var must map phi to psi<-1>")
        if can.source != psi or can.target != phi.shift(-1):
            raise ValueError("can must map psi to phi<-1>")
        if not (var.shift(-1) @ can).is_zero():
            raise ValueError("var o can is not zero")
        self.psi, self.phi, self.var, self.can = psi, phi, var, can

    @classmethod
    def zero(cls) -> "Block0Object":
        return cls(GradedVS(), GradedVS())

    def is_zero(self) -> bool:
        return self.psi.is_zero() and self.phi.is_zero()

    def shift(self, n: int) -> "Block0Object":
        return Block0Object(self.psi.shift(n), self.phi.shift(n), self.var.shift(n), self.can.shift(n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Block0Object):
            return NotImplemented
        return (self.psi, self.phi, self.var, self.can) == (other.psi, other.phi, other.var, other.can)

    def __hash__(self) -> int:
        return hash((self.psi, self.phi))

    def __repr__(self) -> str:
        return f"Block0Object(psi={self.psi.dims}, phi={self.phi.dims})"


def b0_sum(*objs: Block0Object) -> Block0Object:
    if not objs:
        return Block0Object.zero()
    return Block0Object(vs_sum(*(o.psi for o in objs)), vs_sum(*(o.phi for o in objs)),
                        map_sum(*(o.var for o in objs)), map_sum(*(o.can for o in objs)))


class Block0Morphism:
    """A pair of graded maps on ``psi`` and ``phi`` intertwining ``var`` and ``can``."""

    __slots__ = ("source", "target", "psi_map", "phi_map")

    def __init__(self, source: Block0Object, target: Block0Object, psi_map: GradedMap,
                 phi_map: GradedMap, check: bool = True):
        if psi_map.source != source.psi or psi_map.target != target.psi:
            raise ValueError("psi component has the wrong source or target")
        if phi_map.source != source.phi or phi_map.target != target.phi:
            raise ValueError("phi component has the wrong source or target")
        self.source, self.target = source, target
        self.psi_map, self.phi_map = psi_map, phi_map
        if check and not self.intertwines():
            raise ValueError("maps do not intertwine var and can")

    def intertwines(self) -> bool:
        s, t = self.source, self.target
        return (t.var @ self.phi_map == self.psi_map.shift(-1) @ s.var
                and t.can @ self.psi_map == self.phi_map.shift(-1) @ s.can)

    @classmethod
    def identity(cls, X: Block0Object) -> "Block0Morphism":
        return cls(X, X, GradedMap.identity(X.psi), GradedMap.identity(X.phi), check=False)

    @classmethod
    def zero(cls, X: Block0Object, Y: Block0Object) -> "Block0Morphism":
        return cls(X, Y, GradedMap.zero(X.psi, Y.psi), GradedMap.zero(X.phi, Y.phi), check=False)

    def is_zero(self) -> bool:
        return self.psi_map.is_zero() and self.phi_map.is_zero()

    def shift(self, n: int) -> "Block0Morphism":
        return Block0Morphism(self.source.shift(n), self.target.shift(n), self.psi_map.shift(n),
                              self.phi_map.shift(n), check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Block0Morphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.psi_map == other.psi_map and self.phi_map == other.phi_map)

    def __repr__(self) -> str:
        return f"Block0Morphism({self.source!r} -> {self.target!r})"

    def __matmul__(self, other: "Block0Morphism") -> "Block0Morphism":
        return Block0Morphism(other.source, self.target, self.psi_map @ other.psi_map,
                              self.phi_map @ other.phi_map, check=False)

    def __add__(self, other: "Block0Morphism") -> "Block0Morphism":
        return Block0Morphism(self.source, self.target, self.psi_map + other.psi_map,
                              self.phi_map + other.phi_map, check=False)

    def scale(self, c) -> "Block0Morphism":
        return Block0Morphism(self.source, self.target, self.psi_map.scale(c), self.phi_map.scale(c),
                              check=False)


def b0_map_sum(*maps: Block0Morphism) -> Block0Morphism:
    return Block0Morphism(b0_sum(*(g.source for g in maps)), b0_sum(*(g.target for g in maps)),
                          map_sum(*(g.psi_map for g in maps)), map_sum(*(g.phi_map for g in maps)),
                          check=False)


def b0_inclusion(objs: Sequence[Block0Object], idx: int) -> Block0Morphism:
    return Block0Morphism(objs[idx], b0_sum(*objs), vs_inclusion([o.psi for o in objs], idx),
                          vs_inclusion([o.phi for o in objs], idx), check=False)


def b0_projection(objs: Sequence[Block0Object], idx: int) -> Block0Morphism:
    return Block0Morphism(b0_sum(*objs), objs[idx], vs_projection([o.psi for o in objs], idx),
                          vs_projection([o.phi for o in objs], idx), check=False)


# -- translation functors ------------------------------------------------------

def pi_upper(V: GradedVS) -> Block0Object:
    """``pi^* V = (V<1>, V<2> + V, (0 id), (id 0)^T)``."""
    phi_parts = [V.shift(2), V]
    var = vs_projection(phi_parts, 1)                   # V<2> + V -> V = psi<-1>
    can = vs_inclusion([V.shift(1), V.shift(-1)], 0)    # V<1> -> V<1> + V<-1> = phi<-1>
    return Block0Object(V.shift(1), vs_sum(*phi_parts), var, can)


def pi_upper_map(g: GradedMap) -> Block0Morphism:
    return Block0Morphism(pi_upper(g.source), pi_upper(g.target), g.shift(1), map_sum(g.shift(2), g),
                          check=False)


def pi_lower(M: Block0Object) -> GradedVS:
    """``pi_*(psi, phi, var, can) = phi``."""
    return M.phi


def pi_lower_map(g: Block0Morphism) -> GradedMap:
    return g.phi_map


# -- the full graded category ----------------------------------------------------

Block = Union[GradedVS, Block0Object]
BlockMap = Union[GradedMap, Block0Morphism]


def _zero_block(k: int) -> Block:
    return GradedVS() if k == -1 else Block0Object.zero()


def _block_is_zero(B: Block) -> bool:
    return B.is_zero()


class OZObject:
    """Finitely many nonzero blocks: ``-1`` holds a graded space, ``k >= 0`` a quiver object."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Mapping[int, Block] = ()):
        clean = {}
        for k, B in dict(blocks).items():
            k = int(k)
            if k < -1:
                raise ValueError("block indices start at -1")
            if k == -1 and not isinstance(B, GradedVS):
                raise TypeError("block -1 holds a graded vector space")
            if k >= 0 and not isinstance(B, Block0Object):
                raise TypeError(f"block {k} holds a Block0Object")
            if not B.is_zero():
                clean[k] = B
        self.blocks = dict(sorted(clean.items()))

    def block(self, k: int) -> Block:
        B = self.blocks.get(k)
        return B if B is not None else _zero_block(k)

    def support(self) -> list[int]:
        return list(self.blocks)

    def max_block(self) -> int:
        return max(self.blocks, default=-1)

    def is_zero(self) -> bool:
        return not self.blocks

    def shift(self, n: int) -> "OZObject":
        return OZObject({k: B.shift(n) for k, B in self.blocks.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, OZObject):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(tuple(self.blocks))

    def __repr__(self) -> str:
        return f"OZObject({self.blocks})"


def _zero_block_map(k: int, S: Block, T: Block) -> BlockMap:
    return GradedMap.zero(S, T) if k == -1 else Block0Morphism.zero(S, T)


def _identity_block_map(k: int, S: Block) -> BlockMap:
    return GradedMap.identity(S) if k == -1 else Block0Morphism.identity(S)


class OZMorphism:
    """Blockwise morphism; a missing block is the zero map."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: OZObject, target: OZObject, blocks: Mapping[int, BlockMap] = ()):
        self.source, self.target = source, target
        out = {}
        for k, g in dict(blocks).items():
            if g.source != source.block(k) or g.target != target.block(k):
                raise ValueError(f"block {k} component has the wrong source or target")
            if not g.is_zero():
                out[k] = g
        self.blocks = dict(sorted(out.items()))

    def block(self, k: int) -> BlockMap:
        g = self.blocks.get(k)
        return g if g is not None else _zero_block_map(k, self.source.block(k), self.target.block(k))

    def is_zero(self) -> bool:
        return not self.blocks

    def is_valid(self) -> bool:
        return all(isinstance(g, GradedMap) or g.intertwines() for g in self.blocks.values())

    @classmethod
    def identity(cls, X: OZObject) -> "OZMorphism":
        return cls(X, X, {k: _identity_block_map(k, B) for k, B in X.blocks.items()})

    @classmethod
    def zero(cls, X: OZObject, Y: OZObject) -> "OZMorphism":
        return cls(X, Y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OZMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"OZMorphism({self.source!r} -> {self.target!r}, blocks {list(self.blocks)})"

    def __matmul__(self, other: "OZMorphism") -> "OZMorphism":
        if other.target != self.source:
            raise ValueError("cannot compose: middle objects differ")
        common = set(self.blocks) & set(other.blocks)
        return OZMorphism(other.source, self.target, {k: self.blocks[k] @ other.blocks[k] for k in common})

    def __add__(self, other: "OZMorphism") -> "OZMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("cannot add morphisms with different source or target")
        ks = set(self.blocks) | set(other.blocks)
        return OZMorphism(self.source, self.target, {k: self.block(k) + other.block(k) for k in ks})

    def scale(self, c) -> "OZMorphism":
        return OZMorphism(self.source, self.target, {k: g.scale(c) for k, g in self.blocks.items()})

    def shift(self, n: int) -> "OZMorphism":
        return OZMorphism(self.source.shift(n), self.target.shift(n),
                          {k: g.shift(n) for k, g in self.blocks.items()})


def first_difference(f: OZMorphism, g: OZMorphism) -> Optional[tuple]:
    """``(block, component, degree)`` of the first disagreement, or ``None``."""
    for k in sorted(set(f.blocks) | set(g.blocks)):
        a, b = f.block(k), g.block(k)
        pairs = [("vect", a, b)] if k == -1 else [("psi", a.psi_map, b.psi_map), ("phi", a.phi_map, b.phi_map)]
        for comp, x, y in pairs:
            for d in sorted(set(x.blocks) | set(y.blocks)):
                if x.block(d) != y.block(d):
                    return (k, comp, d)
    return None


# -- the endofunctor F ---------------------------------------------------------

def _f_pieces(X: OZObject) -> dict[int, tuple]:
    """Summands of ``F(X)`` per block, in the fixed order."""
    top = X.max_block()
    out: dict[int, tuple] = {-1: (X.block(0),), 0: (X.block(-1), X.block(1))}
    for k in range(1, top + 2):
        out[k] = (X.block(k - 1), X.block(k + 1))
    return out


def f_obj(X: OZObject) -> OZObject:
    """``F(X)``: block -1 is ``pi_* X_0``, block 0 is ``pi^* X_{-1} + X_1``, block ``k >= 1`` is ``X_{k-1} + X_{k+1}``."""
    p = _f_pieces(X)
    blocks: dict[int, Block] = {-1: pi_lower(p[-1][0]), 0: b0_sum(pi_upper(p[0][0]), p[0][1])}
    for k, parts in p.items():
        if k >= 1:
            blocks[k] = b0_sum(*parts)
    return OZObject(blocks)


def f_mor(g: OZMorphism) -> OZMorphism:
    top = max(g.source.max_block(), g.target.max_block())
    blocks: dict[int, BlockMap] = {
        -1: pi_lower_map(g.block(0)),
        0: b0_map_sum(pi_upper_map(g.block(-1)), g.block(1)),
    }
    for k in range(1, top + 2):
        blocks[k] = b0_map_sum(g.block(k - 1), g.block(k + 1))
    return OZMorphism(f_obj(g.source), f_obj(g.target), blocks)


UP_DOWN = "up-down"
DOWN_UP = "down-up"


def _unit_pieces(X: OZObject, k: int, convention: str):
    """Describe where the copy of ``X_k`` sits inside ``F^2(X)_k``.

    Returns ``(outer_parts, outer_idx, inner_parts, inner_idx)`` for blocks
    ``k >= 0`` and the graded-space analogue for ``k = -1``.
    """
    Y = f_obj(X)
    py = _f_pieces(Y)
    px = _f_pieces(X)
    if k == -1:
        # F^2(X)_{-1} = pi_*(pi^* X_{-1} + X_1) = (X_{-1}<2> + X_{-1}) + phi(X_1)
        V = X.block(-1)
        outer = [pi_upper(px[0][0]).phi, px[0][1].phi]
        inner = [V.shift(2), V]
        return outer, 0, inner, 1
    first = pi_upper(py[0][0]) if k == 0 else py[k][0]
    outer = [first, py[k][1]]
    if convention == UP_DOWN or k == 0:
        # X_k inside Y_{k+1} = X_k + X_{k+2}
        return outer, 1, list(px[k + 1]), 0
    if convention == DOWN_UP:
        # X_k inside Y_{k-1}: second summand of X_{k-2} + X_k, or of pi^* X_{-1} + X_1
        inner_first = pi_upper(px[0][0]) if k == 1 else px[k - 1][0]
        return outer, 0, [inner_first, px[k - 1][1]], 1
    raise ValueError(f"unknown convention {convention!r}")


def eta(X: OZObject, convention: str = UP_DOWN) -> OZMorphism:
    """Unit ``X -> F^2 X``: inclusion of the designated copy of each block."""
    F2 = f_obj(f_obj(X))
    blocks = {}
    for k in X.support():
        outer, oi, inner, ii = _unit_pieces(X, k, convention)
        if k == -1:
            blocks[k] = vs_inclusion(outer, oi) @ vs_inclusion(inner, ii)
        else:
            blocks[k] = b0_inclusion(outer, oi) @ b0_inclusion(inner, ii)
    return OZMorphism(X, F2, blocks)


def eps(X: OZObject, convention: str = UP_DOWN) -> OZMorphism:
    """Counit ``F^2 X -> X``: projection onto the same copies ``eta`` includes into."""
    F2 = f_obj(f_obj(X))
    blocks = {}
    for k in X.support():
        outer, oi, inner, ii = _unit_pieces(X, k, convention)
        if k == -1:
            blocks[k] = vs_projection(inner, ii) @ vs_projection(outer, oi)
        else:
            blocks[k] = b0_projection(inner, ii) @ b0_projection(outer, oi)
    return OZMorphism(F2, X, blocks)


@dataclass
class RelationFailure:
    sample: int
    relation: str
    location: tuple

    def __str__(self) -> str:
        block, comp, degree = self.location
        return f"sample {self.sample}: relation ({self.relation}) fails at block {block}, {comp}, degree {degree}"


def check_relations(X: OZObject, convention: str = UP_DOWN) -> dict[str, Optional[tuple]]:
    """First failing location of each relation (``None`` when it holds)."""
    FX = f_obj(X)
    e, c = eta(X, convention), eps(X, convention)
    rel1 = c @ e
    rel2 = f_mor(c) @ eta(FX, convention)
    rel3 = eps(FX, convention) @ f_mor(e)
    return {
        "i": first_difference(rel1, OZMorphism.identity(X)),
        "ii": first_difference(rel2, OZMorphism.zero(FX, FX)),
        "iii": first_difference(rel3, OZMorphism.zero(FX, FX)),
    }


def verify_relations(samples: Iterable[OZObject], convention: str = UP_DOWN) -> dict:
    """Check ``eps eta = id``, ``F(eps) eta_F = 0`` and ``eps_F F(eta) = 0`` on every sample."""
    failures = []
    count = 0
    for idx, X in enumerate(samples):
        count += 1
        for name, loc in check_relations(X, convention).items():
            if loc is not None:
                failures.append(RelationFailure(idx, name, loc))
    return {"ok": not failures, "samples": count, "failures": failures}


# -- the action of diagrams ------------------------------------------------------

class Action:
    """Evaluates diagrams on a fixed object, caching powers of ``F`` and whiskered units."""

    def __init__(self, X: OZObject, convention: str = UP_DOWN):
        self.X = X
        self.convention = convention
        self._powers = [X]
        self._slices: dict = {}

    def power(self, k: int) -> OZObject:
        while len(self._powers) <= k:
            self._powers.append(f_obj(self._powers[-1]))
        return self._powers[k]

    def slice_morphism(self, kind: str, position: int, width: int) -> OZMorphism:
        """``F^position`` applied to the unit or counit at ``F^{rest} X``."""
        key = (kind, position, width)
        if key not in self._slices:
            if kind == "cup":
                g = eta(self.power(width - position), self.convention)
            else:
                g = eps(self.power(width - position - 2), self.convention)
            for _ in range(position):
                g = f_mor(g)
            self._slices[key] = g
        return self._slices[key]

    def diagram(self, d: DiagramResult) -> OZMorphism:
        src, tgt = self.power(d.source), self.power(d.target)
        if d.is_zero:
            return OZMorphism.zero(src, tgt)
        out = OZMorphism.identity(src)
        for s in slice_decompose(d):
            out = self.slice_morphism(s.kind, s.position, s.width) @ out
        return out

    def __call__(self, h) -> OZMorphism:
        from .linear_category import HomElement

        if not isinstance(h, HomElement):
            return self.diagram(h)
        out = OZMorphism.zero(self.power(h.m), self.power(h.n))
        for d, c in h.terms():
            out = out + self.diagram(d).scale(c)
        return out


def act(h, X: OZObject, convention: str = UP_DOWN) -> OZMorphism:
    """The natural transformation ``F^m -> F^n`` of a hom element (or diagram), at ``X``."""
    return Action(X, convention)(h)


def power(X: OZObject, k: int) -> OZObject:
    for _ in range(k):
        X = f_obj(X)
    return X


# -- hom spaces and adjunctions --------------------------------------------------

def _elementary(rows: int, cols: int, i: int, j: int) -> RatMatrix:
    return RatMatrix([[int(a == i and b == j) for b in range(cols)] for a in range(rows)], rows=rows, cols=cols)


def vs_hom_basis(V: GradedVS, W: GradedVS) -> list[GradedMap]:
    out = []
    for d, n in V.dims.items():
        for i in range(W.dim(d)):
            for j in range(n):
                out.append(GradedMap(V, W, {d: _elementary(W.dim(d), n, i, j)}))
    return out


def b0_hom_basis(A: Block0Object, B: Block0Object) -> list[Block0Morphism]:
    """Basis of the maps ``A -> B`` intertwining ``var`` and ``can``, by an exact kernel computation."""
    unknowns = []   # (component, degree, row, col)
    for comp in ("psi", "phi"):
        S, T = getattr(A, comp), getattr(B, comp)
        for d, n in S.dims.items():
            for r in range(T.dim(d)):
                for c in range(n):
                    unknowns.append((comp, d, r, c))
    index = {u: i for i, u in enumerate(unknowns)}
    equations = []

    def var_entry(comp, d, r, c):
        return index.get((comp, d, r, c))

    # var_B o b_d = a_{d+1} o var_A, and can_B o a_d = b_{d+1} o can_A, entrywise
    for (src_comp, tgt_comp, mapA, mapB) in (("phi", "psi", A.var, B.var), ("psi", "phi", A.can, B.can)):
        S_src, T_src = getattr(A, src_comp), getattr(B, src_comp)
        S_tgt, T_tgt = getattr(A, tgt_comp), getattr(B, tgt_comp)
        for d in sorted(set(S_src.dims) | set(S_tgt.shift(-1).dims)):
            mB, mA = mapB.block(d), mapA.block(d)          # T_tgt_{d+1} x T_src_d ; S_tgt_{d+1} x S_src_d
            for r in range(T_tgt.dim(d + 1)):
                for c in range(S_src.dim(d)):
                    eq = [Fraction(0)] * len(unknowns)
                    for k in range(T_src.dim(d)):
                        coef = mB[r, k]
                        if coef:
                            eq[var_entry(src_comp, d, k, c)] += coef
                    for k in range(S_tgt.dim(d + 1)):
                        coef = mA[k, c]
                        if coef:
                            eq[var_entry(tgt_comp, d + 1, r, k)] -= coef
                    if any(eq):
                        equations.append(eq)
    M = RatMatrix(equations, rows=len(equations), cols=len(unknowns))
    out = []
    for vec in kernel_basis(M):
        maps = {}
        for comp in ("psi", "phi"):
            S, T = getattr(A, comp), getattr(B, comp)
            blocks = {}
            for d, n in S.dims.items():
                rows = [[vec[index[(comp, d, r, c)]] for c in range(n)] for r in range(T.dim(d))]
                blocks[d] = RatMatrix(rows, rows=T.dim(d), cols=n)
            maps[comp] = GradedMap(S, T, blocks)
        out.append(Block0Morphism(A, B, maps["psi"], maps["phi"]))
    return out


def hom_space(A: OZObject, B: OZObject) -> list[OZMorphism]:
    """Basis of ``Hom(A, B)``; blocks do not talk to each other."""
    out = []
    for k in sorted(set(A.blocks) & set(B.blocks)):
        SA, SB = A.block(k), B.block(k)
        basis = vs_hom_basis(SA, SB) if k == -1 else b0_hom_basis(SA, SB)
        out.extend(OZMorphism(A, B, {k: g}) for g in basis)
    return out


def adjunction_check(V: GradedVS, M: Block0Object) -> dict:
    """Dimension form of ``pi^* -| pi_* -| pi^*<-2>``."""
    left = (len(b0_hom_basis(pi_upper(V), M)), len(vs_hom_basis(V, pi_lower(M))))
    right = (len(vs_hom_basis(pi_lower(M), V)), len(b0_hom_basis(M, pi_upper(V).shift(-2))))
    return {"left": left, "right": right, "ok": left[0] == left[1] and right[0] == right[1]}


# -- sample objects ------------------------------------------------------------

def point(degree: int, dim: int = 1) -> GradedVS:
    return GradedVS({degree: dim})


def random_vs(rng: random.Random, max_dim: int = 3, degrees: tuple[int, int] = (-3, 3),
              density: float = 0.4) -> GradedVS:
    lo, hi = degrees
    return GradedVS({d: rng.randint(1, max_dim) for d in range(lo, hi + 1) if rng.random() < density})


def _random_matrix(rng: random.Random, rows: int, cols: int) -> RatMatrix:
    return RatMatrix([[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)], rows=rows, cols=cols)


def random_block0(rng: random.Random, max_dim: int = 3, degrees: tuple[int, int] = (-3, 3),
                  density: float = 0.4) -> Block0Object:
    """Random ``can`` first, then ``var`` drawn from maps killing the image of ``can``."""
    psi = random_vs(rng, max_dim, degrees, density)
    phi = random_vs(rng, max_dim, degrees, density)
    can_blocks = {d: _random_matrix(rng, phi.dim(d + 1), n) for d, n in psi.dims.items()}
    can = GradedMap(psi, phi.shift(-1), can_blocks)
    var_blocks = {}
    for d, n in phi.dims.items():
        # var_d : phi_d -> psi_{d+1} must vanish on the image of can_{d-1}
        rows = psi.dim(d + 1)
        if not rows:
            continue
        C = can.block(d - 1)
        left_kernel = kernel_basis(C.transpose()) if C.cols else [[Fraction(int(i == j)) for i in range(n)]
                                                                  for j in range(n)]
        data = []
        for _ in range(rows):
            row = [Fraction(0)] * n
            for vec in left_kernel:
                c = rng.randint(-2, 2)
                if c:
                    row = [x + c * y for x, y in zip(row, vec)]
            data.append(row)
        var_blocks[d] = RatMatrix(data, rows=rows, cols=n)
    var = GradedMap(phi, psi.shift(-1), var_blocks)
    return Block0Object(psi, phi, var, can)


def single_block_shapes(max_block: int = 4, degrees: tuple[int, int] = (-3, 3)) -> list[OZObject]:
    """Small indecomposable-style objects, one per (block, shape, degree)."""
    lo, hi = degrees
    one = RatMatrix.identity(1)
    out = []
    for d in range(lo, hi + 1):
        out.append(OZObject({-1: point(d)}))
    for k in range(0, max_block + 1):
        for d in range(lo, hi + 1):
            V = point(d)
            shapes = [
                Block0Object(V, GradedVS()),
                Block0Object(GradedVS(), V),
                pi_upper(V),
                # psi in degree d, phi in degree d+1, can an isomorphism
                Block0Object(V, point(d + 1), None, GradedMap(V, V, {d: one})),
                # phi in degree d, psi in degree d+1, var an isomorphism
                Block0Object(point(d + 1), V, GradedMap(V, V, {d: one}), None),
            ]
            out.extend(OZObject({k: s}) for s in shapes)
    return out


def random_object(rng: random.Random, max_block: int = 4, max_dim: int = 2,
                  degrees: tuple[int, int] = (-3, 3), blocks: Optional[int] = None) -> OZObject:
    choices = list(range(-1, max_block + 1))
    nblocks = blocks if blocks is not None else rng.randint(2, 3)
    chosen = rng.sample(choices, nblocks)
    out: dict = {}
    for k in chosen:
        out[k] = random_vs(rng, max_dim, degrees, 0.3) if k == -1 else random_block0(rng, max_dim, degrees, 0.3)
    return OZObject(out)


def standard_samples(seed: int = 0, n_random: int = 40, per_block: int = 3) -> list[OZObject]:
    """Single-block shapes, random single-block objects with dims up to 3, then random multi-block objects."""
    rng = random.Random(seed)
    samples = single_block_shapes()
    for k in range(-1, 5):
        made = 0
        while made < per_block:
            B = random_vs(rng) if k == -1 else random_block0(rng)
            if not B.is_zero():
                samples.append(OZObject({k: B}))
                made += 1
    target = len(samples) + n_random
    while len(samples) < target:
        X = random_object(rng)
        if not X.is_zero():
            samples.append(X)
    return samples


# -- JSON ----------------------------------------------------------------------

def vs_to_json(V: GradedVS) -> dict:
    return {"dims": {str(d): n for d, n in V.dims.items()}}


def vs_from_json(obj: dict) -> GradedVS:
    return GradedVS({int(d): int(n) for d, n in obj.get("dims", {}).items()})


def map_to_json(g: GradedMap) -> dict:
    return {str(d): matrix_to_json(M) for d, M in g.blocks.items()}


def map_from_json(obj: dict, source: GradedVS, target: GradedVS) -> GradedMap:
    return GradedMap(source, target, {int(d): matrix_from_json(rows, source.dim(int(d)))
                                      for d, rows in obj.items()})


def object_to_json(X: OZObject) -> dict:
    blocks = {}
    for k, B in X.blocks.items():
        if k == -1:
            blocks[str(k)] = vs_to_json(B)
        else:
            blocks[str(k)] = {"psi": vs_to_json(B.psi), "phi": vs_to_json(B.phi),
                              "var": map_to_json(B.var), "can": map_to_json(B.can)}
    return {"blocks": blocks}


def object_from_json(obj: dict) -> OZObject:
    try:
        blocks: dict = {}
        for k, data in obj["blocks"].items():
            k = int(k)
            if k == -1:
                blocks[k] = vs_from_json(data)
            else:
                psi, phi = vs_from_json(data.get("psi", {})), vs_from_json(data.get("phi", {}))
                var = map_from_json(data.get("var", {}), phi, psi.shift(-1))
                can = map_from_json(data.get("can", {}), psi, phi.shift(-1))
                blocks[k] = Block0Object(psi, phi, var, can)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed object JSON: {exc}") from exc
    return OZObject(blocks)


def morphism_to_json(g: OZMorphism) -> dict:
    blocks = {}
    for k, c in g.blocks.items():
        if k == -1:
            blocks[str(k)] = map_to_json(c)
        else:
            blocks[str(k)] = {"psi": map_to_json(c.psi_map), "phi": map_to_json(c.phi_map)}
    return {"source": object_to_json(g.source), "target": object_to_json(g.target), "blocks": blocks}


def morphism_from_json(obj: dict) -> OZMorphism:
    source, target = object_from_json(obj["source"]), object_from_json(obj["target"])
    blocks: dict = {}
    for k, data in obj.get("blocks", {}).items():
        k = int(k)
        S, T = source.block(k), target.block(k)
        if k == -1:
            blocks[k] = map_from_json(data, S, T)
        else:
            blocks[k] = Block0Morphism(S, T, map_from_json(data.get("psi", {}), S.psi, T.psi),
                                       map_from_json(data.get("phi", {}), S.phi, T.phi))
    return OZMorphism(source, target, blocks)
