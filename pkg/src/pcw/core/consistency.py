"""Randomized consistency checking of user-supplied presentations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .presentation import GroupElement, PcPresentation, collect, random_element


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    witness: Optional[tuple] = None
    reason: str = ""
    checks: int = 0

    @property
    def label(self) -> str:
        return "ConsistentSoFar" if self.consistent else "Inconsistent"

    def __bool__(self):
        return self.consistent


def _assoc(a, b, c):
    return (a * b) * c == a * (b * c)


def _generator_triples(p: PcPresentation):
    # Overlaps g_k g_j g_i with k >= j >= i, the configurations where the
    # collector applies relations; signs vary over infinite generators, finite
    # ones also meet their power relations.
    n = p.ngens
    letters = {}
    for k in range(1, n + 1):
        letters[k] = [p.gen(k)]
        if p.orders[k - 1] is None:
            letters[k].append(p.gen(k, -1))
        else:
            letters[k].append(p.gen(k, p.orders[k - 1] - 1))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                yield from itertools.product(letters[k], letters[j], letters[i])


def check_consistency(p: PcPresentation, trials: int = 100, rng=None, exhaustive_generators: bool = True) -> ConsistencyVerdict:
    """Probabilistic test that ``p`` defines a group with unique normal forms.

    Runs associativity on generator overlaps, the mutual-inverse property of
    the ``u``/``v`` relations, power relations commuting with their base, and
    ``trials`` random associativity triples.
    """
    from ..rng import as_rng

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = as_rng(rng)
    checks = 0
    if p.ngens == 0:
        return ConsistencyVerdict(True, checks=0)

    for (i, j) in itertools.combinations(range(1, p.ngens + 1), 2):
        gi, gj = p.gen(i), p.gen(j)
        u = collect(p, p.conj_pos.get((i, j), ((j, 1),)))
        v = collect(p, p.conj_neg.get((i, j), ((j, 1),)))
        checks += 1
        # conjugating u_ij back by g_i^-1 must give g_j, and v_ij forward likewise
        if (u ^ ~gi) != gj or (v ^ gi) != gj:
            return ConsistencyVerdict(False, (gj, gi, ~gi), f"conj +/- relations for ({i},{j}) are not mutually inverse", checks)
    for i, r in enumerate(p.orders, 1):
        if r is None:
            continue
        gi = p.gen(i)
        w = collect(p, p.powers.get(i, ()))
        checks += 1
        if (w ^ gi) != w:
            return ConsistencyVerdict(False, (gi, p.gen(i, r - 1), gi), f"power relation of g{i} does not commute with g{i}", checks)

    if exhaustive_generators:
        for a, b, c in _generator_triples(p):
            checks += 1
            if not _assoc(a, b, c):
                return ConsistencyVerdict(False, (a, b, c), "associativity fails on generator overlap", checks)

    for _ in range(trials):
        a = random_element(p, 1, 8, rng)[1]
        b = random_element(p, 1, 8, rng)[1]
        c = random_element(p, 1, 8, rng)[1]
        checks += 1
        if not _assoc(a, b, c):
            return ConsistencyVerdict(False, (a, b, c), "associativity fails on random triple", checks)
    return ConsistencyVerdict(True, checks=checks)
