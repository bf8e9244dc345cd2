"""Nerve complex and homology of a finite groupoid, over exact rationals.

Degree-k chains are weights on composable k-strings (g_1, ..., g_k) with
src(g_i) = tgt(g_{i+1}); the differential is the alternating sum of the
face summation maps.  Betti numbers come from exact rank computations, so
statements like "betti_0 equals the orbit count" are tested with zero
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg_q
from .groupoid import FiniteGroupoid, orbits


def nerve(g: FiniteGroupoid, k: int) -> list[tuple[int, ...]]:
    """Composable k-strings in lexicographic arrow-index order; objects for k = 0."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k == 0:
        return [(x,) for x in g.objects()]
    strings: list[tuple[int, ...]] = [(a,) for a in g.arrows()]
    for _ in range(k - 1):
        strings = [s + (b,) for s in strings
                   for b in g.arrows() if g.src[s[-1]] == g.tgt[b]]
    return strings


def face(g: FiniteGroupoid, string: tuple[int, ...], i: int) -> tuple[int, ...]:
    """i-th face of a k-string: drop an end arrow or compose an adjacent pair.

    In degree one the two faces are the source and target objects.
    """
    k = len(string)
    if k == 1:
        return (g.src[string[0]],) if i == 0 else (g.tgt[string[0]],)
    if i == 0:
        return string[1:]
    if i == k:
        return string[:-1]
    return string[:i - 1] + (g.compose_table[(string[i - 1], string[i])],) + string[i + 1:]


def boundary_matrix(g: FiniteGroupoid, k: int) -> linalg_q.Matrix:
    """Matrix of the degree-k differential (alternating face summations).

    Rows are indexed by the degree k-1 nerve, columns by the degree-k
    nerve, both in the deterministic enumeration order of nerve().
    """
    if k < 1:
        raise ValueError("boundary matrices start at degree 1")
    domain = nerve(g, k)
    codomain = {s: i for i, s in enumerate(nerve(g, k - 1))}
    mat = linalg_q.zeros(len(codomain), len(domain))
    for col, s in enumerate(domain):
        sign = Fraction(1)
        for i in range(k + 1):
            mat[codomain[face(g, s, i)]][col] += sign
            sign = -sign
    return mat


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    nerve_size: int
    boundary_rank: int
    betti: int


@dataclass(frozen=True)
class HomologyReport:
    degrees: list[DegreeReport]

    def betti(self) -> list[int]:
        return [d.betti for d in self.degrees]


def homology(g: FiniteGroupoid, kmax: int) -> HomologyReport:
    """Betti numbers for degrees 0..kmax: dim C_k - rank d_k - rank d_{k+1}."""
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    sizes = [len(nerve(g, k)) for k in range(kmax + 1)]
    ranks = [0]  # rank of the (zero) differential out of degree 0
    for k in range(1, kmax + 2):
        ranks.append(linalg_q.rank(boundary_matrix(g, k)))
    degrees = [
        DegreeReport(k, sizes[k], ranks[k], sizes[k] - ranks[k] - ranks[k + 1])
        for k in range(kmax + 1)
    ]
    report = HomologyReport(degrees)
    if report.degrees[0].betti != len(orbits(g)):
        raise AssertionError("betti_0 disagrees with the orbit count")
    return report
