"""The rational crystal category: multiplicity sets and per-weight matrices.

An object is a family ``V_n`` of ordered label sets, standing for
``(+)_n b(n) [x] V_n``.  A morphism is one rational matrix per weight, rows
indexed by the target labels and columns by the source labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Union

from . import crystals as cr
from .crystals import Crystal, CrystalMorphism, render_label
from .linear_category import CMorphism, CObject, HomElement, hom_basis
from .rational_linalg import (RatMatrix, image_basis, matrix_from_json,
                              matrix_to_json, rank, solve_linear)
from .clebsch_gordan import hom_dimension as cg_hom_dimension


class CQObject:
    """Multiplicity sets ``n -> ordered labels``; empty sets are dropped."""

    __slots__ = ("mult",)

    def __init__(self, mult: Mapping[int, tuple] = ()):
        clean = {}
        for n, labels in sorted(dict(mult).items()):
            labels = tuple(labels)
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate labels in V_{n}")
            if n < 0:
                raise ValueError("weights of multiplicity sets are nonnegative")
            if labels:
                clean[int(n)] = labels
        self.mult = clean

    def size(self, n: int) -> int:
        return len(self.mult.get(n, ()))

    def counts(self) -> dict[int, int]:
        return {n: len(v) for n, v in self.mult.items()}

    def index(self, n: int, label) -> int:
        return self.mult[n].index(label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CQObject):
            return NotImplemented
        return self.mult == other.mult

    def __hash__(self) -> int:
        return hash(tuple(self.mult.items()))

    def __repr__(self) -> str:
        return f"CQObject({self.counts()})"


UNIT = CQObject({0: ("v0",)})


class CQMorphism:
    """Per-weight matrices ``W_n x V_n``; a missing weight means the zero matrix."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: CQObject, target: CQObject, blocks: Mapping[int, RatMatrix] = ()):
        self.source = source
        self.target = target
        out = {}
        for n, M in dict(blocks).items():
            if M.shape != (target.size(n), source.size(n)):
                raise ValueError(f"block {n} has shape {M.shape}, expected {(target.size(n), source.size(n))}")
            if not M.is_zero():
                out[n] = M
        self.blocks = out

    def block(self, n: int) -> RatMatrix:
        return self.blocks.get(n) or RatMatrix.zeros(self.target.size(n), self.source.size(n))

    def entry(self, n: int, row: int, col: int) -> Fraction:
        M = self.blocks.get(n)
        return M[row, col] if M is not None else Fraction(0)

    def is_zero(self) -> bool:
        return not self.blocks

    def __eq__(self, other) -> bool:
        if not isinstance(other, CQMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __repr__(self) -> str:
        return f"CQMorphism({self.source!r} -> {self.target!r}, weights {sorted(self.blocks)})"

    def __add__(self, other: "CQMorphism") -> "CQMorphism":
        self._check(other)
        weights = set(self.blocks) | set(other.blocks)
        return CQMorphism(self.source, self.target, {n: self.block(n) + other.block(n) for n in weights})

    def scale(self, c) -> "CQMorphism":
        return CQMorphism(self.source, self.target, {n: M.scale(c) for n, M in self.blocks.items()})

    def __rmul__(self, c) -> "CQMorphism":
        return self.scale(c)

    def _check(self, other: "CQMorphism") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("morphisms have different source or target")

    def coordinates(self) -> list[Fraction]:
        """Entries of all blocks, weights ascending, row-major."""
        out = []
        for n in sorted(set(self.source.mult) & set(self.target.mult)):
            M = self.block(n)
            out.extend(x for row in M for x in row)
        return out


def compose(g: CQMorphism, f: CQMorphism) -> CQMorphism:
    if f.target != g.source:
        raise ValueError("cannot compose: middle objects differ")
    weights = set(f.blocks) & set(g.blocks)
    return CQMorphism(f.source, g.target, {n: g.blocks[n] @ f.blocks[n] for n in weights})


def identity(X: CQObject) -> CQMorphism:
    return CQMorphism(X, X, {n: RatMatrix.identity(len(v)) for n, v in X.mult.items()})


def zero(X: CQObject, Y: CQObject) -> CQMorphism:
    return CQMorphism(X, Y, {})


def hom_dimension(X: CQObject, Y: CQObject) -> int:
    return sum(len(v) * Y.size(n) for n, v in X.mult.items())


def from_crystal(B: Crystal) -> CQObject:
    return CQObject(cr.decompose(B).multiplicities)


def from_crystal_morphism(beta: CrystalMorphism, source: Optional[CQObject] = None,
                          target: Optional[CQObject] = None) -> CQMorphism:
    """Entry ``(w, v)`` is 1 exactly when ``beta`` sends highest-weight ``v`` to ``w``."""
    source = source or from_crystal(beta.source)
    target = target or from_crystal(beta.target)
    blocks = {}
    for n, vs in source.mult.items():
        ws = target.mult.get(n, ())
        rows = [[Fraction(int(beta(v) == w)) for v in vs] for w in ws]
        blocks[n] = RatMatrix(rows, rows=len(ws), cols=len(vs))
    return CQMorphism(source, target, blocks)


@lru_cache(maxsize=None)
def multiplicity_table(i: int, j: int) -> dict[int, tuple]:
    """``V_ij^k``: highest-weight words of weight ``k`` in ``b(i) (x) b(j)``."""
    return dict(cr.decompose(cr.tensor(cr.b(i), cr.b(j))).multiplicities)


def _tensor_index(A: CQObject, B: CQObject) -> dict[int, list]:
    """Per outer weight, ``(i, j, index in V_i, index in W_j, t)`` in label order."""
    out: dict[int, list] = {}
    for i, vs in A.mult.items():
        for j, ws in B.mult.items():
            table = multiplicity_table(i, j)
            for a in range(len(vs)):
                for b_ in range(len(ws)):
                    for l, ts in table.items():
                        for t in ts:
                            out.setdefault(l, []).append((i, j, a, b_, t))
    return out


def tensor_objects(A: CQObject, B: CQObject) -> CQObject:
    """``U_l = disjoint union over (i, j) of V_i x W_j x V_ij^l`` with labels ``(v, w, t)``."""
    return CQObject({l: [(A.mult[i][a], B.mult[j][b_], t) for i, j, a, b_, t in entries]
                     for l, entries in _tensor_index(A, B).items()})


def tensor_morphisms(f: CQMorphism, g: CQMorphism) -> CQMorphism:
    """Blockwise ``f_i (x) g_j (x) id`` on the ``V_ij^l`` factor."""
    src = tensor_objects(f.source, g.source)
    tgt = tensor_objects(f.target, g.target)
    src_idx, tgt_idx = _tensor_index(f.source, g.source), _tensor_index(f.target, g.target)
    blocks = {}
    for l, cols in src_idx.items():
        rows_idx = tgt_idx.get(l, [])
        rows = []
        for i2, j2, a2, b2, t2 in rows_idx:
            row = []
            for i1, j1, a1, b1, t1 in cols:
                if (i1, j1, t1) != (i2, j2, t2):
                    row.append(Fraction(0))
                else:
                    row.append(f.entry(i1, a2, a1) * g.entry(j1, b2, b1))
            rows.append(row)
        blocks[l] = RatMatrix(rows, rows=len(rows_idx), cols=len(cols))
    return CQMorphism(src, tgt, blocks)


def tensor_element(A: Crystal, B: Crystal, a, b_, word) -> Optional[tuple]:
    """Highest-weight element of ``A (x) B`` named by ``(a, b_, word)``.

    ``a`` and ``b_`` are highest-weight elements of weights ``i`` and ``j``,
    and ``word = (v_x, v_y)`` is a highest-weight word of ``b(i) (x) b(j)``.
    The element is ``f^p a (x) f^q b_`` with ``x = i - 2p`` and ``y = j - 2q``.
    """
    x, y = word
    i, j = A.wt[a], B.wt[b_]
    p = (i - int(x[1:])) // 2
    q = (j - int(y[1:])) // 2
    return (cr.lower(A, a, p), cr.lower(B, b_, q))


def monoidality_defects(beta: CrystalMorphism, gamma: CrystalMorphism) -> list[tuple]:
    """Entries where ``F(beta) (x) F(gamma)`` and ``F(beta (x) gamma)`` disagree.

    Labels ``(v, w, t)`` of the tensor product are realized in the crystal
    tensor product through :func:`tensor_element`.
    """
    A, A2, B, B2 = beta.source, gamma.source, beta.target, gamma.target
    lhs = tensor_morphisms(from_crystal_morphism(beta), from_crystal_morphism(gamma))
    rhs = from_crystal_morphism(cr.tensor_morphisms(beta, gamma))
    src = {(n, lab): tensor_element(A, A2, *lab) for n, labs in lhs.source.mult.items() for lab in labs}
    tgt = {(n, lab): tensor_element(B, B2, *lab) for n, labs in lhs.target.mult.items() for lab in labs}
    out = []
    for n, labs in lhs.source.mult.items():
        for c, v in enumerate(labs):
            for r, w in enumerate(lhs.target.mult.get(n, ())):
                x, y = src[(n, v)], tgt[(n, w)]
                expected = rhs.entry(n, rhs.target.index(n, y), rhs.source.index(n, x))
                if lhs.entry(n, r, c) != expected:
                    out.append((n, v, w))
    return out


@lru_cache(maxsize=None)
def power_object(m: int) -> CQObject:
    """The object of ``b(1)^{(x)m}``, built by left-nested ``tensor_objects``."""
    if m == 0:
        return UNIT
    if m == 1:
        return CQObject({1: ("v1",)})
    return tensor_objects(power_object(m - 1), power_object(1))


@lru_cache(maxsize=None)
def _power_realization(m: int) -> dict:
    """Label of ``power_object(m)`` -> highest-weight element of ``tensor_power(m)``."""
    if m <= 1:
        return {v: v for vs in power_object(m).mult.values() for v in vs}
    prev = _power_realization(m - 1)
    A, B = cr.tensor_power(m - 1), cr.tensor_power(1)
    out = {}
    for vs in power_object(m).mult.values():
        for label in vs:
            v, w, t = label
            out[label] = tensor_element(A, B, prev[v], w, t)
    return out


def power_labels_to_crystal(m: int) -> dict:
    return dict(_power_realization(m))


def _matching_image(d) -> CQMorphism:
    beta = cr.eval_diagram(d)
    src, tgt = power_object(d.source), power_object(d.target)
    real_src, real_tgt = _power_realization(d.source), _power_realization(d.target)
    blocks = {}
    for n, vs in src.mult.items():
        ws = tgt.mult.get(n, ())
        rows = [[Fraction(int(beta(real_src[v]) == real_tgt[w])) for v in vs] for w in ws]
        blocks[n] = RatMatrix(rows, rows=len(ws), cols=len(vs))
    return CQMorphism(src, tgt, blocks)


_matching_image_cached = lru_cache(maxsize=None)(_matching_image)


@dataclass(frozen=True)
class KaroubiImage:
    """Image of a Karoubi object: the object plus, per summand and weight, a basis of the image."""

    obj: CQObject
    bases: tuple  # per summand: dict n -> RatMatrix (columns span the image)


def functor_object(X: CObject) -> KaroubiImage:
    mult: dict[int, list] = {}
    bases = []
    for s_idx, s in enumerate(X.summands):
        E = functor_from_c(s.idempotent)
        per_weight = {}
        for n in sorted(power_object(s.power).mult):
            cols = image_basis(E.block(n))
            if cols:
                per_weight[n] = RatMatrix(list(zip(*cols)), rows=E.block(n).rows, cols=len(cols))
                mult.setdefault(n, []).extend((s_idx, k) for k in range(len(cols)))
        bases.append(per_weight)
    return KaroubiImage(CQObject(mult), tuple(bases))


def functor_from_c(h: Union[HomElement, CMorphism]) -> CQMorphism:
    """The functor ``F -> b(1)`` on hom elements or on Karoubi morphisms."""
    if isinstance(h, CMorphism):
        return _functor_on_karoubi(h)
    out = zero(power_object(h.m), power_object(h.n))
    for d, c in h.terms():
        out = out + _matching_image_cached(d).scale(c)
    return out


def _functor_on_karoubi(f: CMorphism) -> CQMorphism:
    src, tgt = functor_object(f.source), functor_object(f.target)
    blocks = {}
    for n in set(src.obj.mult) & set(tgt.obj.mult):
        cols = []
        for s_idx, s in enumerate(f.source.summands):
            B_s = src.bases[s_idx].get(n)
            if B_s is None:
                continue
            for k in range(B_s.cols):
                col = []
                for t_idx, t in enumerate(f.target.summands):
                    B_t = tgt.bases[t_idx].get(n)
                    if B_t is None:
                        continue
                    image = functor_from_c(f.blocks[t_idx][s_idx]).block(n).apply(B_s.col(k))
                    x = solve_linear(B_t, image)
                    if x is None:
                        raise ArithmeticError("morphism leaves the image of the target idempotent")
                    col.extend(x)
                cols.append(col)
        blocks[n] = RatMatrix(list(zip(*cols)), rows=tgt.obj.size(n), cols=src.obj.size(n))
    return CQMorphism(src.obj, tgt.obj, blocks)


@dataclass
class Associator:
    """Bijections ``(alpha, s, t) -> (beta, s', t')`` for each outer weight ``l``."""

    i: int
    j: int
    k: int
    maps: dict[int, dict]

    def is_bijective(self) -> bool:
        for l, mp in self.maps.items():
            if len(set(mp.values())) != len(mp):
                return False
            if set(mp.values()) != set(right_labels(self.i, self.j, self.k, l)):
                return False
        return True


def left_labels(i: int, j: int, k: int, l: int) -> list[tuple]:
    """``disjoint union over alpha of V_ij^alpha x V_alpha,k^l``."""
    out = []
    for alpha, ss in multiplicity_table(i, j).items():
        for s in ss:
            for t in multiplicity_table(alpha, k).get(l, ()):
                out.append((alpha, s, t))
    return out


def right_labels(i: int, j: int, k: int, l: int) -> list[tuple]:
    """``disjoint union over beta of V_i,beta^l x V_jk^beta``."""
    out = []
    for beta, ts in multiplicity_table(j, k).items():
        for s in multiplicity_table(i, beta).get(l, ()):
            for t in ts:
                out.append((beta, s, t))
    return out


@lru_cache(maxsize=None)
def associator(i: int, j: int, k: int) -> Associator:
    """Relabelings induced by the strict associativity of the crystal tensor product."""
    Bij, Bjk = cr.tensor(cr.b(i), cr.b(j)), cr.tensor(cr.b(j), cr.b(k))
    ls = set()
    for alpha in multiplicity_table(i, j):
        ls.update(multiplicity_table(alpha, k))
    maps = {}
    for l in sorted(ls):
        flat_to_right = {}
        for beta, s, t in right_labels(i, j, k, l):
            x, u = s
            q = (beta - int(u[1:])) // 2
            yz = cr.lower(Bjk, t, q)
            flat_to_right[(x,) + yz] = (beta, s, t)
        mp = {}
        for alpha, s, t in left_labels(i, j, k, l):
            u, z = t
            p = (alpha - int(u[1:])) // 2
            xy = cr.lower(Bij, s, p)
            mp[(alpha, s, t)] = flat_to_right[xy + (z,)]
        maps[l] = mp
    return Associator(i, j, k, maps)


def pentagon_check(i: int, j: int, k: int, l: int) -> bool:
    """Both composite relabelings ``((ij)k)l -> i(j(kl))`` agree on every weight."""
    outer = set()
    for alpha in multiplicity_table(i, j):
        for gamma in multiplicity_table(alpha, k):
            outer.update(multiplicity_table(gamma, l))
    for m in sorted(outer):
        for alpha, ss in multiplicity_table(i, j).items():
            for s in ss:
                for gamma, ts in multiplicity_table(alpha, k).items():
                    for t in ts:
                        for u in multiplicity_table(gamma, l).get(m, ()):
                            # route through (ij)(kl)
                            delta, t1, t2 = associator(alpha, k, l).maps[m][(gamma, t, u)]
                            eps, r1, r2 = associator(i, j, delta).maps[m][(alpha, s, t1)]
                            route_a = (delta, t2, eps, r2, r1)
                            # route through (i(jk))l and i((jk)l)
                            beta, s1, s2 = associator(i, j, k).maps[gamma][(alpha, s, t)]
                            delta2, w1, w2 = associator(i, beta, l).maps[m][(gamma, s1, u)]
                            eps2, x1, x2 = associator(j, k, l).maps[delta2][(beta, s2, w2)]
                            route_b = (eps2, x2, delta2, x1, w1)
                            if route_a != route_b:
                                return False
    return True


def unit_check(j: int, k: int) -> bool:
    """The associator with a unit factor in front is the evident relabeling."""
    a = associator(0, j, k)
    for l, mp in a.maps.items():
        for (alpha, s, t), (beta, s2, t2) in mp.items():
            if alpha != j or beta != l or t2 != t:
                return False
    return True


@dataclass
class EquivalenceEntry:
    m: int
    n: int
    dim_c: int
    dim_cq: int
    dim_cg: int
    functor_rank: int

    @property
    def ok(self) -> bool:
        return self.dim_c == self.dim_cq == self.dim_cg == self.functor_rank


def check_hom(m: int, n: int) -> EquivalenceEntry:
    basis = hom_basis(m, n)
    dim_cq = hom_dimension(power_object(m), power_object(n))
    rows = [functor_from_c(HomElement.from_diagram(d)).coordinates() for d in basis]
    r = rank(RatMatrix(rows, rows=len(rows), cols=dim_cq)) if rows else 0
    return EquivalenceEntry(m, n, len(basis), dim_cq, cg_hom_dimension(m, n), r)


def verify_equivalence(bound: int) -> dict:
    """Hom dimensions, functor ranks and essential surjectivity for ``m + n <= bound``."""
    from .linear_category import decompose_object

    entries = [check_hom(m, n) for m in range(bound + 1) for n in range(bound + 1 - m)]
    # End(F^n) needs 2n <= bound
    surjective = {n: any(k == n for k, _ in decompose_object(n)) for n in range(bound // 2 + 1)}
    ok = all(e.ok for e in entries) and all(surjective.values())
    return {"ok": ok, "entries": entries, "essentially_surjective": surjective}


def object_to_json(X: CQObject) -> dict:
    return {"mult": {str(n): [render_label(v) for v in vs] for n, vs in X.mult.items()}}


def object_from_json(obj: dict) -> CQObject:
    try:
        return CQObject({int(n): tuple(vs) for n, vs in obj["mult"].items()})
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed CQ object JSON: {exc}") from exc


def morphism_to_json(f: CQMorphism) -> dict:
    return {"source": object_to_json(f.source), "target": object_to_json(f.target),
            "blocks": {str(n): matrix_to_json(M) for n, M in sorted(f.blocks.items())}}


def morphism_from_json(obj: dict) -> CQMorphism:
    source = object_from_json(obj["source"])
    target = object_from_json(obj["target"])
    blocks = {int(n): matrix_from_json(rows, source.size(int(n))) for n, rows in obj.get("blocks", {}).items()}
    return CQMorphism(source, target, blocks)
