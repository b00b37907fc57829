"""Non-commutative ElGamal-style key transport, two variants.

``S`` and ``T`` are given as sets of 1-based generator indices; every
generator of ``S`` must commute with every generator of ``T``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from ..core.presentation import GroupElement, commutator, conjugate, inv, mul, power, random_element
from ..errors import NonCommutingSubgroups, SolverExhausted
from ..oracles import OracleResult, SearchBudget, csp_enumerate
from ..rng import as_rng


def _check_commuting(p, S, T):
    for i, j in itertools.product(S, T):
        if not commutator(p.gen(i), p.gen(j)).is_identity():
            raise NonCommutingSubgroups(f"g{i} and g{j} do not commute")


@dataclass
class ElGamalTranscript:
    b: GroupElement
    c: GroupElement  # Bob's public key <b, c = b^s>
    h: GroupElement
    E: GroupElement  # Alice's message <h = b^t, E = x^(c^t)>
    s: GroupElement
    t: GroupElement
    x: GroupElement
    x_recovered: GroupElement

    def ok(self) -> bool:
        return self.x_recovered == self.x


def elgamal_decrypt(s: GroupElement, h: GroupElement, E: GroupElement) -> GroupElement:
    ct = conjugate(h, s)  # h^s = c^t
    return conjugate(E, inv(ct))


def elgamal_csp(pg, S, T, rng, x=None, t=None, lengths=(3, 6)) -> ElGamalTranscript:
    rng = as_rng(rng)
    p = getattr(pg, "presentation", pg)
    _check_commuting(p, S, T)
    s = random_element(p, *lengths, rng, gens=S)[1]
    b = random_element(p, *lengths, rng)[1]
    c = conjugate(b, s)
    if x is None:
        x = random_element(p, *lengths, rng)[1]
    if t is None:
        t = random_element(p, *lengths, rng, gens=T)[1]
    h = conjugate(b, t)
    E = conjugate(x, conjugate(c, t))
    return ElGamalTranscript(b, c, h, E, s, t, x, elgamal_decrypt(s, h, E))


@dataclass
class PowerElGamalTranscript:
    g: GroupElement
    v: GroupElement  # g^n
    w: GroupElement  # s^-1 g s
    h: GroupElement  # t^-1 w^m t
    E: GroupElement  # x^-1 t^-1 v^m t x
    s: GroupElement
    n: int
    t: GroupElement
    m: int
    x: GroupElement
    E_prime: GroupElement  # Bob: s h^n s^-1
    x_recovered: Optional[GroupElement]
    solver: Optional[OracleResult] = None

    def identity_holds(self) -> bool:
        """``s h^n s^-1 = t^-1 v^m t``."""
        return self.E_prime == conjugate(power(self.v, self.m), self.t)

    def ok(self) -> bool:
        """Bob's recovered conjugator carries ``E'`` to ``E``; together with
        :meth:`identity_holds` both sides agree on the conjugation ``E' -> E``."""
        return self.x_recovered is not None and conjugate(self.E_prime, self.x_recovered) == self.E


def elgamal_power(
    pg,
    S,
    T,
    rng,
    budget: SearchBudget = SearchBudget(100_000, 4),
    n_max: int = 3,
    m_max: int = 3,
    x_len=(0, 2),
    lengths=(2, 4),
    x=None,
    n=None,
    m=None,
    solver=csp_enumerate,
) -> PowerElGamalTranscript:
    """Power-conjugacy variant.  Bob's public ``w`` is ``s^-1 g s`` so that
    ``w^n = s^-1 v s`` holds; Bob finishes with the supplied CSP solver."""
    rng = as_rng(rng)
    p = getattr(pg, "presentation", pg)
    _check_commuting(p, S, T)
    g = random_element(p, *lengths, rng)[1]
    s = random_element(p, *lengths, rng, gens=S)[1]
    if n is None:
        n = rng.randint(1, n_max)
    v = power(g, n)
    w = conjugate(g, s)
    if x is None:
        x = random_element(p, *x_len, rng)[1]
    if m is None:
        m = rng.randint(1, m_max)
    t = random_element(p, *lengths, rng, gens=T)[1]
    h = conjugate(power(w, m), t)
    E = conjugate(conjugate(power(v, m), t), x)
    E_prime = mul(mul(s, power(h, n)), inv(s))
    res = solver(pg, [(E_prime, E)], budget)
    tr = PowerElGamalTranscript(g, v, w, h, E, s, n, t, m, x, E_prime, res.witness if res.found else None, res)
    if not res.found:
        raise SolverExhausted(f"CSP solver exhausted after {res.nodes_explored} nodes")
    return tr
