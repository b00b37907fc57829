"""Commutator (AAG) key exchange."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..core.presentation import GroupElement, commutator, conjugate, inv, mul, power, product, random_element
from ..errors import DegenerateKey
from ..rng import as_rng

PUBLIC_FORMAT = "pcw-aag-public v1"
PRIVATE_FORMAT = "pcw-aag-private v1"


@dataclass(frozen=True)
class AagParams:
    N1: int
    N2: int
    L1: int
    L2: int
    L: int

    def __post_init__(self):
        if min(self.N1, self.N2, self.L1, self.L2, self.L) < 1 or self.L1 > self.L2:
            raise ValueError(f"invalid AAG parameters {self}")


@dataclass
class AagTranscript:
    params: AagParams
    a_gens: tuple
    b_gens: tuple
    a_conj: tuple  # a'_i = B^-1 a_i B, sent by Bob
    b_conj: tuple  # b'_j = A^-1 b_j A, sent by Alice
    # private material
    alice_factors: tuple = ()  # (s_k, eps_k), s_k 1-based into a_gens
    bob_factors: tuple = ()
    A: Optional[GroupElement] = None
    B: Optional[GroupElement] = None
    key_alice: Optional[GroupElement] = None
    key_bob: Optional[GroupElement] = None
    group_name: str = ""
    seed: Optional[int] = None
    attempts: int = 1

    @property
    def group(self):
        return self.a_gens[0].group

    @property
    def key(self) -> GroupElement:
        return self.key_alice

    def public(self) -> dict:
        p = self.params
        return {
            "format": PUBLIC_FORMAT,
            "group": self.group_name,
            "params": {"N1": p.N1, "N2": p.N2, "L1": p.L1, "L2": p.L2, "L": p.L},
            "seed": self.seed,
            "a_gens": [list(x.exps) for x in self.a_gens],
            "b_gens": [list(x.exps) for x in self.b_gens],
            "a_conj": [list(x.exps) for x in self.a_conj],
            "b_conj": [list(x.exps) for x in self.b_conj],
        }

    def private(self) -> dict:
        return {
            "format": PRIVATE_FORMAT,
            "alice_factors": [list(f) for f in self.alice_factors],
            "bob_factors": [list(f) for f in self.bob_factors],
            "A": list(self.A.exps),
            "B": list(self.B.exps),
            "key": list(self.key_alice.exps),
        }

    @classmethod
    def from_public(cls, data: dict, group) -> "AagTranscript":
        """Rebuild the public half of a transcript over the presentation ``group``."""
        if data.get("format") != PUBLIC_FORMAT:
            raise ValueError(f"not an AAG public transcript: {data.get('format')!r}")
        p = getattr(group, "presentation", group)
        el = lambda v: GroupElement(p, tuple(int(e) for e in v))  # noqa: E731
        return cls(
            params=AagParams(**data["params"]),
            a_gens=tuple(el(v) for v in data["a_gens"]),
            b_gens=tuple(el(v) for v in data["b_gens"]),
            a_conj=tuple(el(v) for v in data["a_conj"]),
            b_conj=tuple(el(v) for v in data["b_conj"]),
            group_name=data.get("group", ""),
            seed=data.get("seed"),
        )


def _private_key(gens: Sequence[GroupElement], L: int, rng):
    factors = tuple((rng.randrange(len(gens)) + 1, rng.sign()) for _ in range(L))
    return factors, _evaluate(gens, factors)


def _evaluate(gens, factors) -> GroupElement:
    return product((power(gens[s - 1], e) for s, e in factors), gens[0].group)


def aag_run(
    g,
    params: AagParams,
    rng,
    a_pool: Sequence[int] | None = None,
    b_pool: Sequence[int] | None = None,
    max_attempts: int = 10,
) -> AagTranscript:
    """Run one honest session.

    ``a_pool`` / ``b_pool`` optionally restrict the letters of Alice's and
    Bob's public words to given generator indices.  A session whose key is the
    identity is redrawn, up to ``max_attempts`` times.
    """
    rng = as_rng(rng)
    p = getattr(g, "presentation", g)
    name = getattr(g, "name", p.name)
    for attempt in range(1, max_attempts + 1):
        a_gens = tuple(random_element(p, params.L1, params.L2, rng, a_pool, reduced=True)[1] for _ in range(params.N1))
        b_gens = tuple(random_element(p, params.L1, params.L2, rng, b_pool, reduced=True)[1] for _ in range(params.N2))
        alice_factors, A = _private_key(a_gens, params.L, rng)
        bob_factors, B = _private_key(b_gens, params.L, rng)
        b_conj = tuple(conjugate(b, A) for b in b_gens)
        a_conj = tuple(conjugate(a, B) for a in a_gens)
        # each side uses only its own factorization and the other's conjugates
        key_alice = mul(inv(A), _evaluate(a_conj, alice_factors))
        key_bob = mul(inv(B), _evaluate(b_conj, bob_factors))
        assert mul(key_alice, key_bob).is_identity(), "AAG keys disagree"
        assert key_alice == commutator(A, B)
        if key_alice.is_identity():
            continue
        return AagTranscript(
            params, a_gens, b_gens, a_conj, b_conj,
            alice_factors, bob_factors, A, B, key_alice, key_bob,
            group_name=name, seed=getattr(rng, "seed_value", None), attempts=attempt,
        )
    raise DegenerateKey(f"shared key was the identity in {max_attempts} attempts")


def alice_key_from_conjugator(transcript: AagTranscript, factors) -> GroupElement:
    """Shared key from any factorization over ``a_gens`` that conjugates the
    ``b_gens`` to the ``b_conj`` (what an attacker recovers)."""
    A = _evaluate(transcript.a_gens, factors)
    return mul(inv(A), _evaluate(transcript.a_conj, factors))
