"""Ko-Lee key exchange over a platform with a certified commuting pair of subgroups."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.presentation import GroupElement, conjugate, random_element
from ..errors import NoCommutingPair
from ..rng import as_rng


@dataclass
class KoLeeTranscript:
    g: GroupElement
    g_a: GroupElement  # Alice -> Bob
    g_b: GroupElement  # Bob -> Alice
    a: GroupElement
    b: GroupElement
    key_alice: GroupElement
    key_bob: GroupElement

    def agreed(self) -> bool:
        return self.key_alice == self.key_bob


def kolee_run(pg, rng, g_len=(4, 8), key_len=(4, 8), a=None, b=None) -> KoLeeTranscript:
    if pg.commuting_pair is None:
        raise NoCommutingPair(f"{pg.name} has no certified commuting subgroups")
    rng = as_rng(rng)
    p = pg.presentation
    A, B = pg.commuting_pair
    g = random_element(p, *g_len, rng)[1]
    if a is None:
        a = random_element(p, *key_len, rng, gens=A)[1]
    if b is None:
        b = random_element(p, *key_len, rng, gens=B)[1]
    g_a, g_b = conjugate(g, a), conjugate(g, b)
    return KoLeeTranscript(g, g_a, g_b, a, b, conjugate(g_b, a), conjugate(g_a, b))


def kolee_finish(transcript: KoLeeTranscript, g_a: GroupElement, g_b: GroupElement) -> KoLeeTranscript:
    """Recompute both keys from (possibly tampered) messages."""
    t = transcript
    return KoLeeTranscript(t.g, g_a, g_b, t.a, t.b, conjugate(g_b, t.a), conjugate(g_a, t.b))
