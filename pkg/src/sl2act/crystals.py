"""Finite normal sl2-crystals, their morphisms and tensor products.

Element labels are hashable values: the string crystals ``b(n)`` use
``"v<k>"`` strings, tensor products use ordered pairs ``(a, b)`` and direct
sums wrap labels in :class:`Summand`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, Hashable, Iterable, Optional, Sequence

from .tl_diagram import DiagramResult, slice_decompose

Label = Hashable


@dataclass(frozen=True, order=True)
class Summand:
    index: int
    label: Any


def render_label(x: Label) -> str:
    if isinstance(x, tuple) and len(x) == 2:
        left, right = render_label(x[0]), render_label(x[1])
        if isinstance(x[1], tuple):
            right = f"({right})"
        return f"{left}⊗{right}"
    if isinstance(x, Summand):
        return f"[{x.index}]{render_label(x.label)}"
    return str(x)


class Crystal:
    """A finite sl2-crystal given by its structure maps.

    ``e`` and ``f`` map a label to a label, or to ``None`` for zero.  When
    ``eps``/``phi`` are omitted they are computed from string lengths.
    """

    def __init__(self, elements: Sequence[Label], wt: dict, e: dict, f: dict,
                 eps: Optional[dict] = None, phi: Optional[dict] = None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate crystal element labels")
        members = set(self.elements)
        for name, mp in (("wt", wt), ("e", e), ("f", f)):
            missing = members.difference(mp)
            if missing:
                raise ValueError(f"{name} is not defined on {sorted(map(render_label, missing))}")
        for name, mp in (("e", e), ("f", f)):
            for b in self.elements:
                t = mp[b]
                if t is not None and t not in members:
                    raise ValueError(f"{name}({render_label(b)}) = {render_label(t)} is not an element")
        self.wt = {b: int(wt[b]) for b in self.elements}
        self.e = {b: e[b] for b in self.elements}
        self.f = {b: f[b] for b in self.elements}
        self.eps = {b: int(eps[b]) for b in self.elements} if eps is not None else {
            b: _string_length(self.e, b, len(self.elements)) for b in self.elements}
        self.phi = {b: int(phi[b]) for b in self.elements} if phi is not None else {
            b: _string_length(self.f, b, len(self.elements)) for b in self.elements}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, b) -> bool:
        return b in self.wt

    def __eq__(self, other) -> bool:
        if not isinstance(other, Crystal):
            return NotImplemented
        return (self.elements == other.elements and self.wt == other.wt and self.e == other.e
                and self.f == other.f and self.eps == other.eps and self.phi == other.phi)

    def __repr__(self) -> str:
        return f"Crystal({len(self)} elements)"

    def highest_weight_elements(self) -> list[Label]:
        return [b for b in self.elements if self.e[b] is None]

    def with_changes(self, **maps) -> "Crystal":
        """Copy with some structure maps overridden (used to inject defects)."""
        data = dict(wt=self.wt, e=self.e, f=self.f, eps=self.eps, phi=self.phi)
        for k, v in maps.items():
            data[k] = {**data[k], **v}
        return Crystal(self.elements, **data)


def _string_length(step: dict, b: Label, bound: int) -> int:
    n = 0
    x = step[b]
    while x is not None:
        n += 1
        if n > bound:
            raise ValueError(f"infinite string through {render_label(b)}")
        x = step[x]
    return n


def b(n: int) -> Crystal:
    """The string crystal ``{v_n, v_{n-2}, ..., v_{-n}}``."""
    if n < 0:
        raise ValueError("highest weight must be nonnegative")
    weights = list(range(n, -n - 1, -2))
    labels = [f"v{k}" for k in weights]
    e = {f"v{k}": (None if k == n else f"v{k + 2}") for k in weights}
    f = {f"v{k}": (None if k == -n else f"v{k - 2}") for k in weights}
    wt = {f"v{k}": k for k in weights}
    return Crystal(labels, wt, e, f)


@dataclass(frozen=True)
class Violation:
    axiom: int
    element: Label
    message: str

    def __str__(self) -> str:
        return f"axiom ({self.axiom}) at {render_label(self.element)}: {self.message}"


def validate(B: Crystal) -> list[Violation]:
    """All axiom violations; an empty list means ``B`` is a normal crystal."""
    out = []
    wt, eps, phi, e, f = B.wt, B.eps, B.phi, B.e, B.f
    for x in B.elements:
        if phi[x] != eps[x] + wt[x]:
            out.append(Violation(1, x, f"phi={phi[x]} but eps+wt={eps[x] + wt[x]}"))
        y = e[x]
        if y is not None and (wt[y], eps[y], phi[y]) != (wt[x] + 2, eps[x] - 1, phi[x] + 1):
            out.append(Violation(2, x, "e does not shift (wt, eps, phi) by (+2, -1, +1)"))
        y = f[x]
        if y is not None and (wt[y], eps[y], phi[y]) != (wt[x] - 2, eps[x] + 1, phi[x] - 1):
            out.append(Violation(3, x, "f does not shift (wt, eps, phi) by (-2, +1, -1)"))
        y = f[x]
        if y is not None and e[y] != x:
            out.append(Violation(4, x, f"f maps it to {render_label(y)} but e does not map back"))
        y = e[x]
        if y is not None and f[y] != x:
            out.append(Violation(4, x, f"e maps it to {render_label(y)} but f does not map back"))
        try:
            le = _string_length(e, x, len(B))
            lf = _string_length(f, x, len(B))
        except ValueError as exc:
            out.append(Violation(5, x, str(exc)))
            continue
        if eps[x] != le:
            out.append(Violation(5, x, f"eps={eps[x]} but the e-string has length {le}"))
        if phi[x] != lf:
            out.append(Violation(5, x, f"phi={phi[x]} but the f-string has length {lf}"))
    return out


def tensor(A: Crystal, B: Crystal) -> Crystal:
    """Tensor product on ``A x B`` with the signature rule for e and f."""
    elements = [(a, c) for a in A.elements for c in B.elements]
    wt, e, f, eps, phi = {}, {}, {}, {}, {}
    for a, c in elements:
        x = (a, c)
        wt[x] = A.wt[a] + B.wt[c]
        if A.eps[a] > B.phi[c]:
            ea = A.e[a]
            e[x] = None if ea is None else (ea, c)
        else:
            ec = B.e[c]
            e[x] = None if ec is None else (a, ec)
        if A.eps[a] >= B.phi[c]:
            fa = A.f[a]
            f[x] = None if fa is None else (fa, c)
        else:
            fc = B.f[c]
            f[x] = None if fc is None else (a, fc)
        eps[x] = max(B.eps[c], A.eps[a] - B.wt[c])
        phi[x] = max(A.phi[a], B.phi[c] + A.wt[a])
    return Crystal(elements, wt, e, f, eps, phi)


def direct_sum(*crystals: Crystal) -> Crystal:
    elements, wt, e, f, eps, phi = [], {}, {}, {}, {}, {}
    for i, C in enumerate(crystals):
        def tag(x, i=i):
            return None if x is None else Summand(i, x)
        for x in C.elements:
            t = Summand(i, x)
            elements.append(t)
            wt[t], eps[t], phi[t] = C.wt[x], C.eps[x], C.phi[x]
            e[t], f[t] = tag(C.e[x]), tag(C.f[x])
    return Crystal(elements, wt, e, f, eps, phi)


def nest(flat: Sequence[Label]) -> Label:
    """Left-nested label of a flat word ``(x1, ..., xk)``; the empty word is ``"v0"``."""
    if not flat:
        return "v0"
    out = flat[0]
    for x in flat[1:]:
        out = (out, x)
    return out


def flatten(label: Label, k: int) -> tuple:
    """Inverse of :func:`nest` for a label of the ``k``-fold left-nested power."""
    if k == 0:
        return ()
    parts = []
    for _ in range(k - 1):
        label, last = label
        parts.append(last)
    parts.append(label)
    return tuple(reversed(parts))


@lru_cache(maxsize=None)
def tensor_power(k: int, n: int = 1) -> Crystal:
    """``b(n)`` tensored with itself ``k`` times, left-nested; ``b(0)`` for ``k = 0``."""
    if k == 0:
        return b(0)
    if k == 1:
        return b(n)
    return tensor(tensor_power(k - 1, n), b(n))


class CrystalMorphism:
    """A map ``source -> target | zero``; killed elements map to ``None``."""

    def __init__(self, source: Crystal, target: Crystal, assignment: dict):
        self.source = source
        self.target = target
        self.assignment = {x: assignment.get(x) for x in source.elements}
        for x, y in self.assignment.items():
            if y is not None and y not in target:
                raise ValueError(f"{render_label(x)} maps to a non-element {render_label(y)}")

    def __call__(self, x: Label) -> Optional[Label]:
        if x is None:
            return None
        return self.assignment[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrystalMorphism):
            return NotImplemented
        return (self.source.elements == other.source.elements
                and self.target.elements == other.target.elements
                and self.assignment == other.assignment)

    def __hash__(self) -> int:
        return hash(tuple(sorted(((render_label(k), render_label(v)) for k, v in self.assignment.items()))))

    def __repr__(self) -> str:
        live = {render_label(k): render_label(v) for k, v in self.assignment.items() if v is not None}
        return f"CrystalMorphism({live})"

    def is_zero(self) -> bool:
        return all(y is None for y in self.assignment.values())

    def then(self, other: "CrystalMorphism") -> "CrystalMorphism":
        """``other o self``."""
        return compose(other, self)

    def problems(self) -> list[str]:
        """Reasons this map fails to be a crystal morphism (empty if it is one)."""
        A, B = self.source, self.target
        out = []
        for x in A.elements:
            y = self.assignment[x]
            for op in ("e", "f"):
                lhs = self(getattr(A, op)[x])
                rhs = None if y is None else getattr(B, op)[y]
                if lhs != rhs:
                    out.append(f"{op}-equivariance fails at {render_label(x)}")
            if y is not None:
                for stat in ("wt", "eps", "phi"):
                    if getattr(A, stat)[x] != getattr(B, stat)[y]:
                        out.append(f"{stat} not preserved at {render_label(x)}")
        return out

    def is_morphism(self) -> bool:
        return not self.problems()


def compose(g: CrystalMorphism, f: CrystalMorphism) -> CrystalMorphism:
    if f.target.elements != g.source.elements:
        raise ValueError("cannot compose crystal morphisms: middle crystals differ")
    return CrystalMorphism(f.source, g.target, {x: g(f(x)) for x in f.source.elements})


def identity_morphism(B: Crystal) -> CrystalMorphism:
    return CrystalMorphism(B, B, {x: x for x in B.elements})


def zero_morphism(A: Crystal, B: Crystal) -> CrystalMorphism:
    return CrystalMorphism(A, B, {})


def tensor_morphisms(f: CrystalMorphism, g: CrystalMorphism) -> CrystalMorphism:
    src, tgt = tensor(f.source, g.source), tensor(f.target, g.target)
    out = {}
    for a, c in src.elements:
        fa, gc = f(a), g(c)
        out[(a, c)] = None if fa is None or gc is None else (fa, gc)
    return CrystalMorphism(src, tgt, out)


@dataclass
class Decomposition:
    """Isotypic decomposition ``B = (+)_n b(n) [x] V_n``.

    ``multiplicities[n]`` lists the highest-weight elements of weight ``n``;
    ``address[x] = (n, hw, p)`` says ``x = f^p(hw)``.
    """

    multiplicities: dict[int, tuple]
    address: dict = field(repr=False)

    def counts(self) -> dict[int, int]:
        return {n: len(v) for n, v in sorted(self.multiplicities.items())}

    def string(self, hw: Label) -> list[Label]:
        return [x for x, (_, h, _) in sorted(self.address.items(), key=lambda t: t[1][2]) if h == hw]


def decompose(B: Crystal) -> Decomposition:
    mult: dict[int, list] = {}
    address = {}
    for h in B.highest_weight_elements():
        n = B.wt[h]
        mult.setdefault(n, []).append(h)
        x, p = h, 0
        while x is not None:
            if x in address:
                raise ValueError(f"{render_label(x)} lies on two strings")
            address[x] = (n, h, p)
            x, p = B.f[x], p + 1
    if len(address) != len(B):
        raise ValueError("some elements are not reached from a highest-weight element")
    return Decomposition({n: tuple(v) for n, v in sorted(mult.items())}, address)


def lower(B: Crystal, x: Label, p: int) -> Optional[Label]:
    """``f^p x``."""
    for _ in range(p):
        if x is None:
            return None
        x = B.f[x]
    return x


def reassemble(B: Crystal, dec: Optional[Decomposition] = None) -> CrystalMorphism:
    """The isomorphism ``(+)_n b(n) [x] V_n -> B`` read off from the addresses."""
    dec = dec or decompose(B)
    pieces, index = [], []
    for n, hws in dec.multiplicities.items():
        for h in hws:
            pieces.append(b(n))
            index.append((n, h))
    S = direct_sum(*pieces)
    out = {}
    for i, (n, h) in enumerate(index):
        for p in range(n + 1):
            out[Summand(i, f"v{n - 2 * p}")] = lower(B, h, p)
    return CrystalMorphism(S, B, out)


def hom_enumerate(A: Crystal, B: Crystal) -> list[CrystalMorphism]:
    """Every crystal morphism ``A -> B``, the zero morphism first."""
    da, db = decompose(A), decompose(B)
    sources = [(n, h) for n, hs in da.multiplicities.items() for h in hs]
    choices = [[None] + list(db.multiplicities.get(n, ())) for n, _ in sources]
    out = []
    for pick in product(*choices):
        assignment = {}
        for (n, h), t in zip(sources, pick):
            for p in range(n + 1):
                assignment[lower(A, h, p)] = None if t is None else lower(B, t, p)
        out.append(CrystalMorphism(A, B, assignment))
    return out


def hom_count(A: Crystal, B: Crystal) -> int:
    """``prod_n (|W_n| + 1)^{|V_n|}``."""
    da, db = decompose(A).counts(), decompose(B).counts()
    out = 1
    for n, k in da.items():
        out *= (db.get(n, 0) + 1) ** k
    return out


def _apply_slice(kind: str, position: int, word: tuple) -> Optional[tuple]:
    if kind == "cup":
        return word[:position] + ("v-1", "v1") + word[position:]
    if word[position:position + 2] == ("v-1", "v1"):
        return word[:position] + word[position + 2:]
    return None


def eval_diagram(d: DiagramResult) -> CrystalMorphism:
    """Image of a diagram under ``F -> b(1)``: a morphism between tensor powers of ``b(1)``."""
    src, tgt = tensor_power(d.source), tensor_power(d.target)
    if d.is_zero:
        return zero_morphism(src, tgt)
    slices = slice_decompose(d)
    out = {}
    for x in src.elements:
        word: Optional[tuple] = flatten(x, d.source)
        for s in slices:
            word = _apply_slice(s.kind, s.position, word)
            if word is None:
                break
        out[x] = None if word is None else nest(word)
    return CrystalMorphism(src, tgt, out)


def to_dot(B: Crystal, name: str = "crystal") -> str:
    """Graphviz digraph with one edge per f-arrow."""
    ids = {x: f"n{i}" for i, x in enumerate(B.elements)}
    lines = [f"digraph {name} {{"]
    for x in B.elements:
        label = f"({render_label(x)}, {B.wt[x]}, {B.eps[x]}, {B.phi[x]})"
        lines.append(f'  {ids[x]} [label="{_dot_escape(label)}"];')
    for x in B.elements:
        y = B.f[x]
        if y is not None:
            lines.append(f'  {ids[x]} -> {ids[y]} [label="f"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_json(B: Crystal) -> dict:
    names = {x: render_label(x) for x in B.elements}
    if len(set(names.values())) != len(names):
        raise ValueError("element labels do not render uniquely")
    return {
        "elements": [{"id": names[x], "wt": B.wt[x]} for x in B.elements],
        "e": {names[x]: names[B.e[x]] for x in B.elements if B.e[x] is not None},
        "f": {names[x]: names[B.f[x]] for x in B.elements if B.f[x] is not None},
    }


def from_json(obj: dict) -> Crystal:
    """Load a crystal; eps and phi are recomputed from the e- and f-strings."""
    try:
        ids = [str(el["id"]) for el in obj["elements"]]
        wt = {str(el["id"]): int(el["wt"]) for el in obj["elements"]}
        e_raw, f_raw = obj.get("e", {}), obj.get("f", {})
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed crystal JSON: {exc}") from exc
    e = {x: e_raw.get(x) for x in ids}
    f = {x: f_raw.get(x) for x in ids}
    return Crystal(ids, wt, e, f)


def named(text: str) -> Crystal:
    """Parse shorthand like ``b2`` or ``b1*b1`` (tensor) or ``b1+b1`` (direct sum)."""
    text = text.replace(" ", "")
    if "+" in text:
        return direct_sum(*(named(s) for s in text.split("+")))
    if "*" in text:
        parts = [named(s) for s in text.split("*")]
        out = parts[0]
        for p in parts[1:]:
            out = tensor(out, p)
        return out
    if text.startswith("b") and text[1:].isdigit():
        return b(int(text[1:]))
    raise ValueError(f"unknown crystal name {text!r}")
