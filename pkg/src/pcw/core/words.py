"""Words in polycyclic generators.

A word is a tuple of syllables ``(k, e)`` meaning ``g_k^e`` with 1-based
generator index ``k`` and nonzero integer exponent ``e``.  Adjacent syllables
always carry distinct generators (see :func:`normalize`).
"""

from __future__ import annotations

import re
from typing import Iterable, Tuple

from ..errors import MalformedWord

Syllable = Tuple[int, int]
Word = Tuple[Syllable, ...]

EMPTY: Word = ()

_TOKEN = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def normalize(syllables: Iterable[Syllable]) -> Word:
    """Merge adjacent syllables on the same generator and drop zero exponents."""
    out: list[list[int]] = []
    for k, e in syllables:
        k, e = int(k), int(e)
        if e == 0:
            continue
        if out and out[-1][0] == k:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([k, e])
    return tuple((k, e) for k, e in out)


def from_letters(letters: Iterable[int]) -> Word:
    """Build a word from signed generator letters, e.g. ``[1, 2, -1]``."""
    return normalize((abs(x), 1 if x > 0 else -1) for x in letters)


def inverse(w: Word) -> Word:
    return tuple((k, -e) for k, e in reversed(w))


def concat(*words: Word) -> Word:
    return normalize(s for w in words for s in w)


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = inverse(w), -n
    return normalize(s for _ in range(n) for s in w)


def letter_length(w: Word) -> int:
    """Number of letters once every syllable is expanded into +-1 exponents."""
    return sum(abs(e) for _, e in w)


def max_generator(w: Word) -> int:
    return max((k for k, _ in w), default=0)


def validate(w: Word, ngens: int) -> None:
    for k, e in w:
        if not isinstance(k, int) or not 1 <= k <= ngens:
            raise MalformedWord(f"generator index {k!r} outside 1..{ngens}")
        if e == 0:
            raise MalformedWord(f"zero exponent on g{k}")


def to_str(w: Word) -> str:
    """Serialize as space separated ``g<k>^<e>`` tokens; the empty word is ``1``."""
    if not w:
        return "1"
    return " ".join(f"g{k}^{e}" for k, e in w)


def from_str(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    syllables = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise MalformedWord(f"bad token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        syllables.append((int(m.group(1)), e))
    return normalize(syllables)
