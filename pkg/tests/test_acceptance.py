"""Acceptance gate: eight criteria, each with its own time limit.

Run under pytest for pass/fail lines in the terminal summary, or directly
with ``python3 tests/test_acceptance.py``.
"""
import itertools
import time

import pytest

from sl2act import crystals as cr
from sl2act import crystals_q as cq
from sl2act import verify

RESULTS = []


def _record(number, title, ok, seconds, limit, note=""):
    within = seconds < limit
    status = "PASS" if ok and within else "FAIL"
    extra = f"; {note}" if note else ""
    RESULTS.append(f"criterion {number}: {status} {title} ({seconds:.2f}s of {limit}s{extra})")
    return ok and within


def _run(number, title, limit, body):
    start = time.perf_counter()
    ok, note = body()
    seconds = time.perf_counter() - start
    passed = _record(number, title, ok, seconds, limit, note)
    assert ok, note
    assert seconds < limit, f"took {seconds:.2f}s, limit {limit}s"
    return passed


def _failures(results):
    bad = [f for r in results for f in r.failures]
    return not bad, (bad[0] if bad else "")


def criterion_1():
    def body():
        r = verify.homcount(12)
        return r.ok and r.details["pairs"] == 91, "; ".join(r.failures[:3])
    return _run(1, "hom counts = Catalan = Clebsch-Gordan for m+n <= 12", 10, body)


def criterion_2():
    def body():
        r = verify.relations(seed=0)
        ok = r.ok and r.details["graded_samples"] >= 200
        return ok, "; ".join(map(str, r.failures[:3]))
    return _run(2, "relations in diagrams, crystals and graded O", 30, body)


def criterion_3():
    def body():
        r = verify.composition(4)
        return r.ok and r.details["pairs"] > 0, f"{r.details['pairs']} pairs, {r.details['zero_composites']} zero"
    return _run(3, "diagram composition = crystal composition for m,n,p <= 4", 60, body)


def criterion_4():
    def body():
        r = verify.isomorphism()
        images = r.details["images"]
        ok = r.ok and images.get("[0]v0") == "v-1⊗v1" and images.get("[1]v2") == "v1⊗v1"
        return ok, "; ".join(r.failures)
    return _run(4, "b1(x)b1 = 1 + b2 with v0 -> v-1(x)v1, v2 -> v1(x)v1", 1, body)


def criterion_5():
    def body():
        d = verify.counterexample().details
        ok = (d["b1_to_b1+b1"], d["b1+b1_to_b1"], d["end_b1^3"], d["dim_end_F^3"]) == (2, 3, 17, 5)
        b3 = cr.tensor_power(3)
        ok = ok and len(cr.hom_enumerate(b3, b3)) - 1 == 17
        return ok, f"{d}"
    return _run(5, "2 and 3 nonzero morphisms, 17 != 5", 5, body)


def criterion_6():
    def body():
        eq = verify.equivalence(10)
        pent = all(cq.pentagon_check(*q) for q in itertools.product(range(3), repeat=4))
        return eq.ok and pent and eq.details["entries"] == 66, "; ".join(eq.failures[:3]) or \
            ("" if pent else "pentagon failed")
    return _run(6, "monoidal equivalence for m+n <= 10 and pentagon <= 2", 120, body)


def criterion_7():
    def body():
        r = verify.action(seed=0, bound=3)
        d = r.details
        ok = r.ok and d["samples"] >= 200 and d["composition_samples"] >= 20 and d["alternative_failures"] > 0
        return ok, f"alternative convention fails ({', '.join(d['alternative_relations'])})" if ok else \
            "; ".join(map(str, r.failures[:3]))
    return _run(7, "action on graded O: relations, composition, alternative convention fails", 120, body)


def criterion_8():
    def body():
        r = verify.adjunction(seed=0, spaces=50, pairs=20)
        return r.ok, "; ".join(r.failures[:3])
    return _run(8, "pi_* pi^* = id + id<2> and adjunction dimensions", 10, body)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    criterion()


if __name__ == "__main__":
    for c in CRITERIA:
        try:
            c()
        except AssertionError:
            pass
    for line in RESULTS:
        print(line)
