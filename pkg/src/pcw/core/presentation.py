"""Polycyclic presentations and their elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

from ..errors import BadRange, GroupMismatch, MalformedWord, PresentationError
from . import words as W
from .collect import DEFAULT_BUDGET, Collector


class PcPresentation:
    """Polycyclic presentation on generators ``g_1 .. g_n``.

    ``orders[i-1]`` is the relative order ``r_i`` (an int >= 2) or ``None`` for
    an infinite factor.  ``conj_pos[(i, j)]`` is the word ``u_ij`` with
    ``g_j^(g_i) = u_ij``, ``conj_neg[(i, j)]`` the word ``v_ij`` with
    ``g_j^(g_i^-1) = v_ij`` and ``powers[i]`` the word ``w_ii`` with
    ``g_i^r_i = w_ii``.  Absent conjugation entries mean ``g_i`` and ``g_j``
    commute; absent power entries mean ``g_i^r_i = 1``.

    Instances are treated as immutable.  Equality is structural.
    """

    def __init__(
        self,
        ngens: int,
        orders: Sequence[Optional[int]],
        conj_pos: Mapping | None = None,
        conj_neg: Mapping | None = None,
        powers: Mapping | None = None,
        name: str = "",
        budget: int = DEFAULT_BUDGET,
    ):
        if ngens < 0:
            raise PresentationError("ngens must be non-negative")
        orders = tuple(None if r is None else int(r) for r in orders)
        if len(orders) != ngens:
            raise PresentationError(f"expected {ngens} orders, got {len(orders)}")
        for i, r in enumerate(orders, 1):
            if r is not None and r < 2:
                raise PresentationError(f"relative order of g{i} must be >= 2 or infinite")
        self.ngens = ngens
        self.orders = orders
        self.name = name
        self.budget = budget
        self.conj_pos = self._check_conj(conj_pos or {}, "conj +")
        self.conj_neg = self._check_conj(conj_neg or {}, "conj -")
        pw = {}
        for i, w in (powers or {}).items():
            if not 1 <= i <= ngens or orders[i - 1] is None:
                raise PresentationError(f"power relation for g{i}, which has no finite order")
            w = W.normalize(w)
            self._check_later(w, i, f"pow {i}")
            pw[i] = w
        self.powers = pw

    def _check_conj(self, rel, label):
        out = {}
        for (i, j), w in rel.items():
            if not 1 <= i < j <= self.ngens:
                raise PresentationError(f"{label}: bad index pair ({i}, {j})")
            w = W.normalize(w)
            self._check_later(w, i, f"{label} {i} {j}")
            out[(i, j)] = w
        return out

    def _check_later(self, w, i, label):
        for k, _ in w:
            if not i < k <= self.ngens:
                raise PresentationError(f"{label}: word uses g{k}, only g{i + 1}..g{self.ngens} allowed")

    # ------------------------------------------------------------------

    @cached_property
    def _key(self):
        return (
            self.ngens,
            self.orders,
            tuple(sorted(self.conj_pos.items())),
            tuple(sorted(self.conj_neg.items())),
            tuple(sorted(self.powers.items())),
        )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<PcPresentation{label} ngens={self.ngens} hirsch={hirsch_length(self)}>"

    @cached_property
    def collector(self) -> Collector:
        return Collector(self, self.budget)

    # convenience constructors for elements

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def gen(self, k: int, e: int = 1) -> "GroupElement":
        """``g_k^e`` (1-based) in normal form."""
        return collect(self, ((k, e),))

    def gens(self) -> list["GroupElement"]:
        return [self.gen(k) for k in range(1, self.ngens + 1)]

    def element(self, exps) -> "GroupElement":
        """Element from an exponent vector, reduced to normal form."""
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.ngens:
            raise MalformedWord(f"expected {self.ngens} exponents, got {len(exps)}")
        return collect(self, tuple((k, e) for k, e in enumerate(exps, 1) if e))

    def word_element(self, word) -> "GroupElement":
        return collect(self, word)


@dataclass(frozen=True)
class GroupElement:
    group: PcPresentation = field(repr=False)
    exps: tuple

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)

    def __invert__(self) -> "GroupElement":
        return inv(self)

    def __pow__(self, e: int) -> "GroupElement":
        return power(self, e)

    def __xor__(self, x: "GroupElement") -> "GroupElement":
        """``a ^ x`` is the conjugate ``x^-1 a x``."""
        return conjugate(self, x)

    def is_identity(self) -> bool:
        return not any(self.exps)

    def word(self) -> W.Word:
        return tuple((k, e) for k, e in enumerate(self.exps, 1) if e)

    def length(self) -> int:
        """Sum of absolute normal-form exponents."""
        return sum(abs(e) for e in self.exps)

    def __str__(self):
        return W.to_str(self.word())


def _same(a: GroupElement, b: GroupElement):
    if a.group is not b.group and a.group != b.group:
        raise GroupMismatch("elements belong to different presentations")


def collect(p: PcPresentation, w) -> GroupElement:
    W.validate(w, p.ngens)
    return GroupElement(p, p.collector.collect(w))


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    _same(a, b)
    return GroupElement(a.group, a.group.collector.mul(a.exps, b.exps))


def inv(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, a.group.collector.inv(a.exps))


def power(a: GroupElement, e: int) -> GroupElement:
    return GroupElement(a.group, a.group.collector.pow(a.exps, e))


def conjugate(a: GroupElement, x: GroupElement) -> GroupElement:
    """``a^x = x^-1 a x``."""
    _same(a, x)
    return GroupElement(a.group, a.group.collector.conj(a.exps, x.exps))


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """``[a, b] = a^-1 b^-1 a b``."""
    _same(a, b)
    c = a.group.collector
    return GroupElement(a.group, c.mul(c.inv(c.mul(b.exps, a.exps)), c.mul(a.exps, b.exps)))


def product(elements, group: PcPresentation | None = None) -> GroupElement:
    it = iter(elements)
    try:
        acc = next(it)
    except StopIteration:
        if group is None:
            raise ValueError("empty product needs a group")
        return group.identity()
    for x in it:
        acc = mul(acc, x)
    return acc


def hirsch_length(p: PcPresentation) -> int:
    return sum(1 for r in p.orders if r is None)


def random_word(p: PcPresentation, len_min: int, len_max: int, rng, gens=None, reduced: bool = False) -> W.Word:
    """Uniform length in ``[len_min, len_max]``, uniform letters with uniform sign.

    ``gens`` optionally restricts the letters to a subset of 1-based generators.
    With ``reduced`` a letter is redrawn whenever it would cancel its
    predecessor, so the result is a freely reduced word of exactly the drawn
    letter length.
    """
    if len_min < 0 or len_min > len_max:
        raise BadRange(f"bad length range [{len_min}, {len_max}]")
    pool = list(gens) if gens is not None else list(range(1, p.ngens + 1))
    if not pool and len_max > 0:
        raise BadRange("no generators to draw from")
    length = rng.randint(len_min, len_max)
    letters = []
    while len(letters) < length:
        k = pool[rng.randrange(len(pool))]
        x = k if rng.getrandbits(1) else -k
        if reduced and letters and letters[-1] == -x:
            continue
        letters.append(x)
    return W.from_letters(letters)


def random_element(p: PcPresentation, len_min: int, len_max: int, rng, gens=None, reduced: bool = False):
    w = random_word(p, len_min, len_max, rng, gens, reduced)
    return w, collect(p, w)


def random_normal_form(p: PcPresentation, length: int, rng, gens=None) -> GroupElement:
    """Element whose normal form has ``sum |e| == length`` (for torsion-free
    generators): ``length`` generator draws, one uniform sign per generator."""
    pool = list(gens) if gens is not None else list(range(1, p.ngens + 1))
    if length and not pool:
        raise BadRange("no generators to draw from")
    counts = [0] * p.ngens
    for _ in range(length):
        counts[pool[rng.randrange(len(pool))] - 1] += 1
    exps = [c * (1 if rng.getrandbits(1) else -1) if c else 0 for c in counts]
    return p.element(exps)
