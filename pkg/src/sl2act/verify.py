"""Verification suites shared by the command line and the acceptance tests.

Each suite returns a :class:`SuiteResult` with a JSON-friendly ``details``
dict and a list of human-readable failures.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import crystals as cr
from . import crystals_q as cq
from . import graded_o as go
from . import tl_diagram as tl
from .clebsch_gordan import catalan, hom_dimension


@dataclass
class SuiteResult:
    name: str
    ok: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "seconds": round(self.seconds, 3),
                "details": self.details, "failures": [str(f) for f in self.failures]}

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if self.ok else f" ({len(self.failures)} failures; first: {self.failures[0]})"
        return f"{status} {self.name} [{self.seconds:.2f}s]{extra}"


def _timed(name: str, body: Callable[[], tuple[dict, list]]) -> SuiteResult:
    start = time.perf_counter()
    details, failures = body()
    return SuiteResult(name, not failures, time.perf_counter() - start, details, failures)


def homcount(bound: int = 12) -> SuiteResult:
    """Matchings counted against Catalan numbers and the Clebsch-Gordan oracle, ``m + n <= bound``."""
    def body():
        failures, checked = [], 0
        for m in range(bound + 1):
            for n in range(bound + 1 - m):
                count = len(tl.enumerate_matchings(m, n))
                expected = catalan((m + n) // 2) if (m + n) % 2 == 0 else 0
                oracle = hom_dimension(m, n)
                checked += 1
                if not count == expected == oracle:
                    failures.append(f"({m}, {n}): matchings {count}, catalan {expected}, oracle {oracle}")
        return {"bound": bound, "pairs": checked}, failures
    return _timed("homcount", body)


def _zigzags() -> list[tuple[str, list]]:
    """The two zigzags as lists of diagrams applied left to right."""
    i1 = tl.identity(1)
    return [("left", [tl.tensor(i1, tl.cup()), tl.tensor(tl.cap(), i1)]),
            ("right", [tl.tensor(tl.cup(), i1), tl.tensor(i1, tl.cap())])]


def relations(seed: int = 0) -> SuiteResult:
    """Loop is the identity and both zigzags vanish: in diagrams, in crystals and on graded O."""
    def body():
        failures = []
        loop = tl.compose(tl.cap(), tl.cup())
        if loop != tl.identity(0):
            failures.append("diagrams: cap o cup is not the empty diagram")
        for side, (first, second) in _zigzags():
            if not tl.compose(second, first).is_zero:
                failures.append(f"diagrams: {side} zigzag is not zero")

        crystal_loop = cr.compose(cr.eval_diagram(tl.cap()), cr.eval_diagram(tl.cup()))
        if crystal_loop != cr.identity_morphism(cr.tensor_power(0)):
            failures.append("crystals: cap o cup is not the identity of the unit")
        for side, (first, second) in _zigzags():
            g = cr.compose(cr.eval_diagram(second), cr.eval_diagram(first))
            if not g.is_zero():
                failures.append(f"crystals: {side} zigzag is not zero")

        samples = go.standard_samples(seed)
        report = go.verify_relations(samples)
        failures.extend(f"graded O: {f}" for f in report["failures"])
        return {"graded_samples": report["samples"]}, failures
    return _timed("relations", body)


def composition(bound: int = 4) -> SuiteResult:
    """Diagram composition against crystal-morphism composition, all ``m, n, p <= bound``."""
    def body():
        failures, pairs, zeros = [], 0, 0
        images = {}

        def image(d):
            if d not in images:
                images[d] = cr.eval_diagram(d)
            return images[d]

        for m, n, p in itertools.product(range(bound + 1), repeat=3):
            for f in tl.enumerate_matchings(m, n):
                for g in tl.enumerate_matchings(n, p):
                    pairs += 1
                    h = tl.compose(g, f)
                    zeros += h.is_zero
                    lhs = cr.eval_diagram(h)
                    if lhs != cr.compose(image(g), image(f)):
                        failures.append(f"{g!r} o {f!r}")
        return {"bound": bound, "pairs": pairs, "zero_composites": zeros}, failures
    return _timed("composition", body)


def isomorphism() -> SuiteResult:
    """``b(1) (x) b(1) = b(0) + b(2)`` with the expected highest-weight images, and uniqueness."""
    def body():
        failures = []
        B = cr.tensor(cr.b(1), cr.b(1))
        dec = cr.decompose(B)
        if dec.counts() != {0: 1, 2: 1}:
            failures.append(f"decomposition {dec.counts()}")
        expected = {0: ("v-1", "v1"), 2: ("v1", "v1")}
        for n, hw in expected.items():
            if dec.multiplicities.get(n) != (hw,):
                failures.append(f"highest weight of b({n}) is {dec.multiplicities.get(n)}, expected {hw}")
        iso = cr.reassemble(B, dec)
        if not iso.is_morphism() or sorted(map(str, (iso(x) for x in iso.source.elements))) != \
                sorted(map(str, B.elements)):
            failures.append("reassembly map is not a bijective morphism")
        S = cr.direct_sum(cr.b(0), cr.b(2))
        isos = [g for g in cr.hom_enumerate(S, B)
                if len({g(x) for x in S.elements} - {None}) == len(S)]
        if len(isos) != 1:
            failures.append(f"{len(isos)} isomorphisms b(0) + b(2) -> b(1) (x) b(1), expected 1")
        images = {cr.render_label(x): cr.render_label(iso(x)) for x in iso.source.elements}
        return {"counts": dec.counts(), "isomorphisms": len(isos), "images": images}, failures
    return _timed("isomorphism", body)


def counterexample() -> SuiteResult:
    """The strict crystal category is not the linear category: 2, 3 and 17 vs 5."""
    def body():
        b1, b11 = cr.b(1), cr.named("b1+b1")
        b3 = cr.tensor_power(3)
        into = cr.hom_count(b1, b11) - 1
        out_of = cr.hom_count(b11, b1) - 1
        ends = cr.hom_count(b3, b3) - 1
        dim = len(tl.enumerate_matchings(3, 3))
        failures = []
        if into != 2:
            failures.append(f"{into} nonzero morphisms b1 -> b1+b1, expected 2")
        if out_of != 3:
            failures.append(f"{out_of} nonzero morphisms b1+b1 -> b1, expected 3")
        if ends != 17:
            failures.append(f"{ends} nonzero endomorphisms of b1^3, expected 17")
        if dim != 5 or ends == dim:
            failures.append(f"End(F^3) has dimension {dim}")
        return {"b1_to_b1+b1": into, "b1+b1_to_b1": out_of, "end_b1^3": ends, "dim_end_F^3": dim}, failures
    return _timed("counterexample", body)


def equivalence(bound: int = 10) -> SuiteResult:
    """Hom dimensions and functor ranks agree for ``m + n <= bound``; every simple is reached."""
    def body():
        report = cq.verify_equivalence(bound)
        failures = [f"({e.m}, {e.n}): C {e.dim_c}, CQ {e.dim_cq}, oracle {e.dim_cg}, rank {e.functor_rank}"
                    for e in report["entries"] if not e.ok]
        failures += [f"b({n}) is not a summand of F^{n}" for n, ok in report["essentially_surjective"].items()
                     if not ok]
        return {"bound": bound, "entries": len(report["entries"])}, failures
    return _timed("equivalence", body)


def pentagon(bound: int = 2) -> SuiteResult:
    """Associator coherence for weights up to ``bound``, plus unit and monoidality checks."""
    def body():
        failures = []
        quads = list(itertools.product(range(bound + 1), repeat=4))
        failures += [f"pentagon {q}" for q in quads if not cq.pentagon_check(*q)]
        triples = list(itertools.product(range(bound + 1), repeat=3))
        failures += [f"associator {t} is not bijective" for t in triples if not cq.associator(*t).is_bijective()]
        failures += [f"unit {p}" for p in itertools.product(range(bound + 1), repeat=2) if not cq.unit_check(*p)]
        objs = [cr.b(i) for i in range(bound + 1)]
        tested = 0
        for A, B, A2, B2 in itertools.product(objs, repeat=4):
            for beta in cr.hom_enumerate(A, B):
                for gamma in cr.hom_enumerate(A2, B2):
                    tested += 1
                    if cq.monoidality_defects(beta, gamma):
                        failures.append(f"tensor of {beta!r} and {gamma!r}")
        return {"bound": bound, "quadruples": len(quads), "monoidality_pairs": tested}, failures
    return _timed("pentagon", body)


def action(seed: int = 0, bound: int = 3, stride: int = 10) -> SuiteResult:
    """Relations on the standard samples, functoriality of ``act``, and failure of the other convention."""
    def body():
        failures = []
        samples = go.standard_samples(seed)
        report = go.verify_relations(samples)
        failures.extend(str(f) for f in report["failures"])
        subset = samples[::stride]
        checked = 0
        for idx, X in zip(range(0, len(samples), stride), subset):
            act = go.Action(X)
            for m, n, p in itertools.product(range(bound + 1), repeat=3):
                for f in tl.enumerate_matchings(m, n):
                    for g in tl.enumerate_matchings(n, p):
                        checked += 1
                        if act(tl.compose(g, f)) != act(g) @ act(f):
                            failures.append(f"sample {idx}: act({g!r} o {f!r})")
        alt = go.verify_relations(samples, go.DOWN_UP)
        alt_rel = sorted({f.relation for f in alt["failures"]})
        if not {"ii", "iii"} & set(alt_rel):
            failures.append("down-then-up convention satisfies relations (ii) and (iii) on every sample")
        return {"samples": report["samples"], "composition_samples": len(subset), "composition_checks": checked,
                "alternative_failures": len(alt["failures"]), "alternative_relations": alt_rel}, failures
    return _timed("action", body)


def adjunction(seed: int = 0, spaces: int = 50, pairs: int = 20) -> SuiteResult:
    """``pi_* pi^* = id + id<2>`` exactly, and dimension-level adjunctions."""
    def body():
        rng = random.Random(seed)
        failures = []
        for idx in range(spaces):
            V = go.random_vs(rng)
            M = go.pi_upper(V)
            if go.pi_lower(M) != go.vs_sum(V.shift(2), V):
                failures.append(f"space {idx}: pi_* pi^* V is not V<2> + V")
            g = go.GradedMap.identity(V)
            if go.pi_lower_map(go.pi_upper_map(g)) != go.map_sum(g.shift(2), g):
                failures.append(f"space {idx}: pi_* pi^* id is not id<2> + id")
        dims = []
        for idx in range(pairs):
            V, M = go.random_vs(rng, density=0.6), go.random_block0(rng, density=0.6)
            rep = go.adjunction_check(V, M)
            dims.append([rep["left"][0], rep["right"][0]])
            if not rep["ok"]:
                failures.append(f"pair {idx}: left {rep['left']}, right {rep['right']}")
        return {"spaces": spaces, "pairs": pairs, "hom_dimensions": dims}, failures
    return _timed("adjunction", body)


SUITES = ("homcount", "relations", "composition", "isomorphism", "counterexample", "equivalence",
          "pentagon", "action", "adjunction")


def run_suite(name: str, bound: Optional[int] = None, seed: int = 0) -> SuiteResult:
    """Run one suite; ``bound`` overrides the suite's default size where it has one."""
    kw = {} if bound is None else {"bound": bound}
    if name == "homcount":
        return homcount(**kw)
    if name == "relations":
        return relations(seed)
    if name == "composition":
        return composition(**kw)
    if name == "isomorphism":
        return isomorphism()
    if name == "counterexample":
        return counterexample()
    if name == "equivalence":
        return equivalence(**kw)
    if name == "pentagon":
        return pentagon(**kw)
    if name == "action":
        return action(seed, **kw)
    if name == "adjunction":
        return adjunction(seed)
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")


def run(names, bound: Optional[int] = None, seed: int = 0) -> list[SuiteResult]:
    if names in ("all", ["all"], ("all",)):
        names = SUITES
    elif isinstance(names, str):
        names = [names]
    return [run_suite(n, bound, seed) for n in names]
