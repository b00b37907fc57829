"""Length-based attack on AAG: a beam search of memory ``M``.

Each state is ``(length, tuple, word)``: the intercepted tuple conjugated by
the inverse of the candidate key built so far.  A state is expanded by
conjugating its tuple by every ``a_i^{+-1}``; the ``M`` shortest children
survive.  Lengths are summed normal-form lengths ``sum |e|``; ties break on
the serialized tuple, then on the word.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from ..core.presentation import GroupElement, conjugate, inv, mul, power, product
from ..protocols.aag import AagTranscript, alice_key_from_conjugator


@dataclass(frozen=True)
class LbaConfig:
    memory: int = 2
    max_iterations: int = 10_000
    time_budget: Optional[float] = None  # seconds, checked once per iteration
    side: str = "alice"
    detect_cycles: bool = True

    def __post_init__(self):
        if self.memory < 1:
            raise ValueError("memory must be >= 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.side not in ("alice", "bob"):
            raise ValueError(f"side must be 'alice' or 'bob', got {self.side!r}")


@dataclass
class AttackResult:
    outcome: str  # "Success" | "Fail"
    attack: str
    side: str = "alice"
    word: tuple = ()  # ((i, eps), ...) over the victim's public generators
    key: Optional[GroupElement] = None
    iterations: int = 0
    expansions: int = 0
    peak_set_size: int = 0
    verified: bool = False
    reason: str = ""
    key_matrix: Optional[tuple] = None

    @property
    def success(self) -> bool:
        return self.outcome == "Success"

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "attack": self.attack,
            "side": self.side,
            "word": [list(f) for f in self.word],
            "key": list(self.key.exps) if self.key is not None else None,
            "iterations": self.iterations,
            "expansions": self.expansions,
            "peak_set_size": self.peak_set_size,
            "verified": self.verified,
            "reason": self.reason,
            "key_matrix": [[str(x) for x in row] for row in self.key_matrix] if self.key_matrix else None,
        }


def _tuple_length(c) -> int:
    return sum(x.length() for x in c)


def _serial(c) -> tuple:
    return tuple(x.exps for x in c)


def victim_view(t: AagTranscript, side: str):
    """(own generators, other generators, other conjugated) for the attacked party."""
    if side == "alice":
        return t.a_gens, t.b_gens, t.b_conj
    return t.b_gens, t.a_gens, t.a_conj


def key_from_factors(t: AagTranscript, side: str, factors) -> GroupElement:
    """Shared key implied by a recovered factorization of the victim's key."""
    if side == "alice":
        return alice_key_from_conjugator(t, factors)
    B = product((power(t.b_gens[s - 1], e) for s, e in factors), t.group)
    return inv(mul(inv(B), product((power(t.b_conj[s - 1], e) for s, e in factors), t.group)))


def verify_recovery(t: AagTranscript, side: str, factors) -> bool:
    """Conjugating the other party's generators by the recovered key must
    reproduce the intercepted conjugates exactly."""
    gens, other, other_conj = victim_view(t, side)
    key = product((power(gens[s - 1], e) for s, e in factors), t.group)
    return all(conjugate(x, key) == y for x, y in zip(other, other_conj))


def _success(t, cfg, word, it, exp, peak) -> AttackResult:
    # the state word is a_{l1} ... a_{lk}; the tuple equals b conjugated by
    # A l1 ... lk, so the candidate key is its inverse
    factors = tuple((s, -e) for s, e in reversed(word))
    ok = verify_recovery(t, cfg.side, factors)
    if not ok:
        raise AssertionError("LBA produced an unsound success")
    return AttackResult(
        "Success", "lba", cfg.side, factors, key_from_factors(t, cfg.side, factors),
        it, exp, peak, True,
    )


def lba(t: AagTranscript, cfg: LbaConfig = LbaConfig(), trace=None) -> AttackResult:
    """``trace``, if given, is called with the surviving states after each iteration."""
    gens, target, intercepted = victim_view(t, cfg.side)
    target = tuple(target)
    start = tuple(intercepted)
    letters = []
    for i, a in enumerate(gens, 1):
        letters.append(((i, 1), a, inv(a)))
        letters.append(((i, -1), inv(a), a))
    if start == target:
        return _success(t, cfg, (), 0, 0, 1)
    S = [(_tuple_length(start), start, ())]
    seen = set()
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    expansions = 0
    peak = 1
    coll = t.group.collector
    for it in range(1, cfg.max_iterations + 1):
        if deadline is not None and time.monotonic() > deadline:
            return AttackResult("Fail", "lba", cfg.side, iterations=it - 1, expansions=expansions,
                                peak_set_size=peak, reason="time budget")
        children = []
        for _, c, x in S:
            for letter, a, a_inv in letters:
                expansions += 1
                # c^a = a^-1 c a, entrywise
                d = tuple(GroupElement(t.group, coll.mul(coll.mul(a_inv.exps, ci.exps), a.exps)) for ci in c)
                w = x + (letter,)
                if d == target:
                    return _success(t, cfg, w, it, expansions, max(peak, len(children) + 1))
                children.append((_tuple_length(d), d, w))
        peak = max(peak, len(children))
        children.sort(key=lambda s: (s[0], _serial(s[1]), s[2]))
        S = children[: cfg.memory]
        if trace is not None:
            trace(S)
        if cfg.detect_cycles:
            # selection only looks at tuples, so a repeated tuple multiset
            # repeats forever and success is impossible
            sig = tuple(_serial(c) for _, c, _ in S)
            if sig in seen:
                return AttackResult("Fail", "lba", cfg.side, iterations=it, expansions=expansions,
                                    peak_set_size=peak, reason="cycle")
            seen.add(sig)
    return AttackResult("Fail", "lba", cfg.side, iterations=cfg.max_iterations, expansions=expansions,
                        peak_set_size=peak, reason="iteration limit")
