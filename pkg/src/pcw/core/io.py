"""Text format for polycyclic presentations.

::

    pcgroup v1
    ngens 3
    order 2 5
    conj + 1 2 g2^1 g3^1
    conj - 1 2 g2^1 g3^-1
    pow 2 g3^1

Generators without an ``order`` line are infinite.  Blank lines and text after
``#`` are ignored.  The empty word is written ``1``.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import MalformedWord, PresentationError
from . import words as W
from .presentation import PcPresentation

HEADER = "pcgroup v1"


def parse_presentation(text: str, name: str = "") -> PcPresentation:
    lines = text.splitlines()
    ngens = None
    orders: dict[int, int] = {}
    conj = {"+": {}, "-": {}}
    powers = {}
    seen_header = False

    def index(tok, lineno):
        try:
            k = int(tok)
        except ValueError:
            raise PresentationError(f"expected generator index, got {tok!r}", lineno) from None
        if ngens is None:
            raise PresentationError("ngens must precede relations", lineno)
        if not 1 <= k <= ngens:
            raise PresentationError(f"generator index {k} out of range 1..{ngens}", lineno)
        return k

    def word(toks, lineno):
        try:
            w = W.from_str(" ".join(toks))
        except MalformedWord as exc:
            raise PresentationError(str(exc), lineno) from None
        for k, _ in w:
            if not 1 <= k <= ngens:
                raise PresentationError(f"generator index {k} out of range 1..{ngens}", lineno)
        return w

    def later(w, i, lineno):
        for k, _ in w:
            if k <= i:
                raise PresentationError(f"relation word uses g{k}, only generators after g{i} allowed", lineno)
        return w

    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise PresentationError(f"expected header {HEADER!r}", lineno)
            seen_header = True
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "ngens":
            if ngens is not None:
                raise PresentationError("duplicate ngens", lineno)
            if len(toks) != 2 or not toks[1].isdigit():
                raise PresentationError("usage: ngens N", lineno)
            ngens = int(toks[1])
        elif kind == "order":
            if len(toks) != 3:
                raise PresentationError("usage: order i r", lineno)
            i = index(toks[1], lineno)
            if i in orders:
                raise PresentationError(f"duplicate order for g{i}", lineno)
            try:
                r = int(toks[2])
            except ValueError:
                raise PresentationError(f"bad order {toks[2]!r}", lineno) from None
            if r < 2:
                raise PresentationError("relative order must be >= 2", lineno)
            orders[i] = r
        elif kind == "conj":
            if len(toks) < 4 or toks[1] not in conj:
                raise PresentationError("usage: conj +|- i j <word>", lineno)
            i, j = index(toks[2], lineno), index(toks[3], lineno)
            if not i < j:
                raise PresentationError(f"conj needs i < j, got ({i}, {j})", lineno)
            table = conj[toks[1]]
            if (i, j) in table:
                raise PresentationError(f"duplicate conj {toks[1]} relation for ({i}, {j})", lineno)
            table[(i, j)] = later(word(toks[4:], lineno), i, lineno)
        elif kind == "pow":
            if len(toks) < 2:
                raise PresentationError("usage: pow i <word>", lineno)
            i = index(toks[1], lineno)
            if i in powers:
                raise PresentationError(f"duplicate pow relation for g{i}", lineno)
            powers[i] = (later(word(toks[2:], lineno), i, lineno), lineno)
        else:
            raise PresentationError(f"unknown directive {kind!r}", lineno)

    if not seen_header:
        raise PresentationError("missing header")
    if ngens is None:
        raise PresentationError("missing ngens line")
    for i, (_, lineno) in powers.items():
        if i not in orders:
            raise PresentationError(f"pow relation for g{i} without an order line", lineno)
    try:
        return PcPresentation(
            ngens,
            [orders.get(i) for i in range(1, ngens + 1)],
            conj["+"],
            conj["-"],
            {i: w for i, (w, _) in powers.items()},
            name=name,
        )
    except PresentationError:
        raise


def dump_presentation(p: PcPresentation) -> str:
    out = [HEADER, f"ngens {p.ngens}"]
    for i, r in enumerate(p.orders, 1):
        if r is not None:
            out.append(f"order {i} {r}")
    for sign, table in (("+", p.conj_pos), ("-", p.conj_neg)):
        for (i, j), w in sorted(table.items()):
            if w == ((j, 1),):
                continue
            out.append(f"conj {sign} {i} {j} {W.to_str(w)}")
    for i, w in sorted(p.powers.items()):
        out.append(f"pow {i} {W.to_str(w)}")
    return "\n".join(out) + "\n"


def load_presentation(path) -> PcPresentation:
    path = Path(path)
    return parse_presentation(path.read_text(), name=path.stem)
