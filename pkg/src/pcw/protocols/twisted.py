"""Fiat-Shamir style authentication over double twisted conjugacy.

Group inversion serves as the antihomomorphism ``*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core.presentation import GroupElement, inv, mul, random_element
from ..oracles import Endomorphism
from ..rng import as_rng


@dataclass
class TwistedKey:
    phi: Endomorphism
    psi: Endomorphism
    w: GroupElement
    t: GroupElement  # psi(s^-1) w phi(s)
    s: GroupElement  # private


@dataclass
class Round:
    u: GroupElement
    c: int
    v: GroupElement
    accepted: bool


@dataclass
class AuthTranscript:
    rounds: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return all(r.accepted for r in self.rounds)


def _twist(key: TwistedKey, v: GroupElement, middle: GroupElement) -> GroupElement:
    return mul(mul(key.psi(inv(v)), middle), key.phi(v))


def twisted_keygen(pg, phi: Endomorphism, psi: Endomorphism, rng, lengths=(4, 8)) -> TwistedKey:
    rng = as_rng(rng)
    p = getattr(pg, "presentation", pg)
    w = random_element(p, *lengths, rng)[1]
    key = TwistedKey(phi, psi, w, w, p.identity())
    # t == w would let anyone answer both challenges
    while key.t == w:
        key.s = random_element(p, *lengths, rng)[1]
        key.t = _twist(key, key.s, w)
    return key


def verify_round(key: TwistedKey, u: GroupElement, c: int, v: GroupElement) -> bool:
    """Challenge 0 expects ``u = psi(v^-1) t phi(v)``; challenge 1 expects
    ``u = psi(v^-1) w phi(v)``, which for ``v = s r`` telescopes to the
    commitment."""
    return _twist(key, v, key.t if c == 0 else key.w) == u


def twisted_auth_session(pg, key: TwistedKey, rounds: int, rng, lengths=(4, 8), cheat: bool = False) -> AuthTranscript:
    """Run ``rounds`` commitment/challenge/response exchanges.

    With ``cheat`` the prover does not use ``s``: it guesses the challenge
    and prepares a commitment that only answers that guess, so each round
    passes with probability 1/2.
    """
    rng = as_rng(rng)
    p = getattr(pg, "presentation", pg)
    out = AuthTranscript()
    for _ in range(rounds):
        r = random_element(p, *lengths, rng)[1]
        if cheat:
            guess = rng.getrandbits(1)
            u = _twist(key, r, key.t if guess == 0 else key.w)
        else:
            u = _twist(key, r, key.t)
        c = rng.getrandbits(1)
        if cheat:
            v = r
        else:
            v = r if c == 0 else mul(key.s, r)
        out.rounds.append(Round(u, c, v, verify_round(key, u, c, v)))
    return out


def heisenberg_automorphism(pg, m) -> Endomorphism:
    """Automorphism of the Heisenberg group lifting ``m`` in GL(2, Z) acting on
    the abelianization; the central generator goes to its power ``det m``."""
    p = getattr(pg, "presentation", pg)
    (m11, m12), (m21, m22) = m
    det = m11 * m22 - m12 * m21
    if det not in (1, -1):
        raise ValueError(f"matrix {m} is not in GL(2, Z)")
    images = [p.element((m11, m21, 0)), p.element((m12, m22, 0)), p.element((0, 0, det))]
    return Endomorphism(p, images)
