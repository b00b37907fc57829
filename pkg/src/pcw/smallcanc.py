"""Small cancellation presentations and Dehn's algorithm.

Words over an alphabet of ``m`` letters are tuples of nonzero ints: ``k`` is
the ``k``-th letter and ``-k`` its inverse.  On the wire letters are
``a, b, c, ...`` with capitals for inverses.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import GenerationTimeout, MalformedWord, MetricNotVerified, NotCyclicallyReduced

SIXTH = Fraction(1, 6)

Word = tuple


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def is_cyclically_reduced(w: Word) -> bool:
    if not w or free_reduce(w) != tuple(w):
        return False
    return len(w) == 1 or w[0] != -w[-1]


def symmetrize(relators: Iterable[Word]) -> tuple:
    """All cyclic shifts of the relators and of their inverses, deduplicated and sorted."""
    rels = [tuple(r) for r in relators]
    if not rels:
        raise NotCyclicallyReduced("need at least one relator")
    out = set()
    for r in rels:
        if not is_cyclically_reduced(r):
            raise NotCyclicallyReduced(f"relator {to_text(r)!r} is not cyclically reduced")
        for w in (r, inverse(r)):
            for s in range(len(w)):
                out.add(w[s:] + w[:s])
    return tuple(sorted(out))


def _common_prefix(u: Word, v: Word) -> int:
    n = 0
    for x, y in zip(u, v):
        if x != y:
            break
        n += 1
    return n


def max_piece(symmetrized: tuple) -> int:
    # in sorted order the longest common prefix of any pair is attained by neighbours
    return max((_common_prefix(u, v) for u, v in zip(symmetrized, symmetrized[1:])), default=0)


@dataclass(frozen=True)
class SmallCancPresentation:
    alphabet_size: int
    relators: tuple
    symmetrized: tuple = field(repr=False)
    lam: Fraction

    @property
    def verified(self) -> bool:
        return self.lam < SIXTH

    @property
    def _index(self):
        # prefix tables keyed by the shortest length that is more than half a relator
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {}
            for r in self.symmetrized:
                m = len(r) // 2 + 1
                idx.setdefault(m, {}).setdefault(r[:m], []).append(r)
            object.__setattr__(self, "_idx", idx)
        return idx


def make_presentation(alphabet_size: int, relators: Iterable[Word]) -> SmallCancPresentation:
    rels = tuple(tuple(r) for r in relators)
    for r in rels:
        for x in r:
            if not x or abs(x) > alphabet_size:
                raise MalformedWord(f"letter {x} outside alphabet of size {alphabet_size}")
    sym = symmetrize(rels)
    pres = SmallCancPresentation(alphabet_size, rels, sym, Fraction(0))
    return SmallCancPresentation(alphabet_size, rels, sym, check_metric(pres))


def check_metric(p: SmallCancPresentation) -> Fraction:
    """Exact ratio of the longest piece to the shortest relator."""
    return Fraction(max_piece(p.symmetrized), min(len(r) for r in p.relators))


def dehn_reduce(p: SmallCancPresentation, w: Word) -> Word:
    """Dehn's algorithm: free reduction plus replacing any subword that is more
    than half of a symmetrized relator by the inverse of the rest.

    For a C'(1/6) presentation the result is empty exactly when ``w`` is trivial.
    """
    if not p.verified:
        raise MetricNotVerified(f"presentation has lambda = {p.lam}, need < 1/6")
    idx = p._index
    lengths = sorted(idx)
    w = list(free_reduce(w))
    start = 0
    while True:
        hit = None
        n = len(w)
        for pos in range(start, n):
            for m in lengths:
                if pos + m > n:
                    break
                cands = idx[m].get(tuple(w[pos:pos + m]))
                if cands:
                    r = cands[0]
                    L = m
                    while L < len(r) and pos + L < n and w[pos + L] == r[L]:
                        L += 1
                    hit = (pos, L, r)
                    break
            if hit:
                break
        if hit is None:
            return tuple(w)
        pos, L, r = hit
        w[pos:pos + L] = inverse(r[L:])
        w = list(free_reduce(w))
        start = max(0, pos - max(lengths) - 1)


def is_trivial(p: SmallCancPresentation, w: Word) -> bool:
    return not dehn_reduce(p, w)


# ------------------------------------------------------------------ sampling


def random_reduced_word(alphabet_size: int, length: int, rng) -> Word:
    out: list[int] = []
    while len(out) < length:
        x = rng.randint(1, alphabet_size) * rng.sign()
        if out and out[-1] == -x:
            continue
        out.append(x)
    return tuple(out)


def _is_proper_power(w: Word) -> bool:
    n = len(w)
    return any(n % d == 0 and w == w[:d] * (n // d) for d in range(1, n))


def random_cyclic_word(alphabet_size: int, length: int, rng) -> Word:
    while True:
        w = random_reduced_word(alphabet_size, length, rng)
        if is_cyclically_reduced(w) and not _is_proper_power(w):
            return w


def generate_relator_set(
    alphabet_size: int,
    count: int,
    min_len: int,
    rng,
    max_len: int | None = None,
    max_attempts: int = 2000,
) -> SmallCancPresentation:
    """Rejection-sample ``count`` random relators until the set is C'(1/6).

    Relators are added one at a time; a candidate is kept only if the growing
    set still has ``lambda < 1/6``.  Lengths are uniform in ``[min_len, max_len]``
    (default ``max_len = min_len + min_len // 2``).  Lengths below 13 are
    allowed but rarely succeed, since pieces of length 2 already break the
    bound; over two letters they always time out.
    """
    if alphabet_size < 2:
        raise ValueError("alphabet_size must be >= 2")
    if min_len < 1:
        raise ValueError("min_len must be positive")
    if max_len is None:
        max_len = min_len + min_len // 2
    rels: list[Word] = []
    attempts = 0
    while len(rels) < count:
        attempts += 1
        if attempts > max_attempts:
            raise GenerationTimeout(
                f"no C'(1/6) set of {count} relators of length >= {min_len} over {alphabet_size} letters "
                f"after {max_attempts} attempts"
            )
        cand = random_cyclic_word(alphabet_size, rng.randint(min_len, max_len), rng)
        trial = make_presentation(alphabet_size, rels + [cand])
        if trial.verified:
            rels.append(cand)
    return make_presentation(alphabet_size, rels)


def _random_conjugate(p: SmallCancPresentation, rng, max_conj: int) -> Word:
    r = p.symmetrized[rng.randrange(len(p.symmetrized))]
    x = random_reduced_word(p.alphabet_size, rng.randint(0, max_conj), rng)
    return x + r + inverse(x)


def _trivial_word(p: SmallCancPresentation, rng, max_conj: int) -> Word:
    while True:
        w = free_reduce(
            letter for _ in range(rng.randint(1, 3)) for letter in _random_conjugate(p, rng, max_conj)
        )
        if w:
            return w


def encode_bit(p: SmallCancPresentation, bit: int, rng, max_conj: int = 3) -> Word:
    """Codeword for one bit: trivial in the group for 1, nontrivial for 0.

    A 0-codeword copies its length from a freshly drawn 1-codeword, so both
    kinds share one length distribution.
    """
    if not p.verified:
        raise MetricNotVerified(f"presentation has lambda = {p.lam}, need < 1/6")
    w = _trivial_word(p, rng, max_conj)
    if bit:
        return w
    while True:
        cand = random_reduced_word(p.alphabet_size, len(w), rng)
        if dehn_reduce(p, cand):
            return cand


def decode_bit(p: SmallCancPresentation, w: Word) -> int:
    return 0 if dehn_reduce(p, w) else 1


# ------------------------------------------------------------------ text I/O

_LOWER = string.ascii_lowercase


def to_text(w: Word) -> str:
    return "".join(_LOWER[x - 1] if x > 0 else _LOWER[-x - 1].upper() for x in w)


def from_text(s: str) -> Word:
    out = []
    for ch in s.strip():
        if ch in _LOWER:
            out.append(_LOWER.index(ch) + 1)
        elif ch.lower() in _LOWER:
            out.append(-(_LOWER.index(ch.lower()) + 1))
        else:
            raise MalformedWord(f"bad letter {ch!r}")
    return tuple(out)


def dump_relators(p: SmallCancPresentation) -> str:
    return "".join(to_text(r) + "\n" for r in p.relators)


def parse_relators(text: str, alphabet_size: int | None = None) -> SmallCancPresentation:
    rels = [from_text(line) for line in text.splitlines() if line.strip()]
    if alphabet_size is None:
        alphabet_size = max((abs(x) for r in rels for x in r), default=1)
    return make_presentation(alphabet_size, rels)
