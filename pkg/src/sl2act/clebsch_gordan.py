"""Clebsch-Gordan bookkeeping for tensor powers of the 2-dimensional sl2 irrep.

Used as an independent oracle for hom-space dimensions.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def tensor_power_multiplicities(m: int) -> dict[int, int]:
    """Multiplicity of L(j) in L^{(x)m}, via L(j) (x) L = L(j+1) + L(j-1)."""
    if m == 0:
        return {0: 1}
    prev = tensor_power_multiplicities(m - 1)
    out: dict[int, int] = {}
    for j, mult in prev.items():
        out[j + 1] = out.get(j + 1, 0) + mult
        if j >= 1:
            out[j - 1] = out.get(j - 1, 0) + mult
    return out


def hom_dimension(m: int, n: int) -> int:
    """dim Hom(L^{(x)m}, L^{(x)n}) by Schur's lemma."""
    a, b = tensor_power_multiplicities(m), tensor_power_multiplicities(n)
    return sum(mult * b.get(j, 0) for j, mult in a.items())


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def tensor_multiplicity(i: int, j: int, k: int) -> int:
    """Multiplicity of L(k) in L(i) (x) L(j)."""
    return int(abs(i - j) <= k <= i + j and (i + j - k) % 2 == 0)
