"""Secret sharing over small-cancellation presentations.

Each participant receives a private C'(1/6) presentation together with one
codeword per bit of their share; a codeword is trivial in the group exactly
when the bit is 1, and the participant decodes it with Dehn's algorithm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .. import smallcanc as sc
from ..errors import InsufficientShares, MetricNotVerified
from ..rng import as_rng

SHARE_FORMAT = "pcw-share v1"


@dataclass(frozen=True)
class SmallCancConfig:
    alphabet_size: int = 4
    relators: int = 3
    min_len: int = 20
    max_conj: int = 3


@dataclass
class ShareBundle:
    index: int  # 1-based participant id
    scheme: str  # "nn" or "tn"
    presentation: sc.SmallCancPresentation
    codewords: tuple
    t: int | None = None
    p: int | None = None

    def decode(self) -> list[int]:
        if not self.presentation.verified:
            raise MetricNotVerified(f"share {self.index}: lambda = {self.presentation.lam}")
        return [sc.decode_bit(self.presentation, w) for w in self.codewords]

    def to_json(self) -> dict:
        return {
            "format": SHARE_FORMAT,
            "scheme": self.scheme,
            "index": self.index,
            "t": self.t,
            "p": self.p,
            "alphabet": self.presentation.alphabet_size,
            "relators": [sc.to_text(r) for r in self.presentation.relators],
            "codewords": [sc.to_text(w) for w in self.codewords],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "ShareBundle":
        if data.get("format") != SHARE_FORMAT:
            raise ValueError(f"not a share bundle: {data.get('format')!r}")
        pres = sc.make_presentation(data["alphabet"], [sc.from_text(r) for r in data["relators"]])
        return cls(
            data["index"], data["scheme"], pres,
            tuple(sc.from_text(w) for w in data["codewords"]), data.get("t"), data.get("p"),
        )


def _bits(value: int, k: int) -> list[int]:
    return [(value >> (k - 1 - i)) & 1 for i in range(k)]


def _int(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def _as_bits(secret) -> list[int]:
    if isinstance(secret, str):
        if not secret or set(secret) - {"0", "1"}:
            raise ValueError(f"secret must be a nonempty bit string, got {secret!r}")
        return [int(c) for c in secret]
    return [int(b) & 1 for b in secret]


def _encode(index, scheme, bits, rng, cfg: SmallCancConfig, t=None, p=None) -> ShareBundle:
    pres = sc.generate_relator_set(cfg.alphabet_size, cfg.relators, cfg.min_len, rng.spawn(f"pres{index}"))
    words = tuple(sc.encode_bit(pres, b, rng, cfg.max_conj) for b in bits)
    return ShareBundle(index, scheme, pres, words, t, p)


def split_xor(bits: Sequence[int], n: int, rng) -> list[list[int]]:
    """Uniform decomposition of ``bits`` into ``n`` vectors whose XOR is ``bits``."""
    parts = [[rng.getrandbits(1) for _ in bits] for _ in range(n - 1)]
    last = list(bits)
    for part in parts:
        last = [x ^ y for x, y in zip(last, part)]
    return parts + [last]


def ss_deal_nn(secret, n: int, rng, cfg: SmallCancConfig = SmallCancConfig()) -> list[ShareBundle]:
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = as_rng(rng)
    bits = _as_bits(secret)
    return [_encode(j, "nn", part, rng, cfg) for j, part in enumerate(split_xor(bits, n, rng), 1)]


def ss_reconstruct_nn(shares: Sequence[ShareBundle]) -> str:
    if not shares:
        raise InsufficientShares("no shares supplied")
    decoded = [s.decode() for s in shares]
    acc = decoded[0]
    for d in decoded[1:]:
        if len(d) != len(acc):
            raise ValueError("shares encode different bit lengths")
        acc = [x ^ y for x, y in zip(acc, d)]
    return "".join(map(str, acc))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def lagrange_at_zero(points: Sequence[tuple[int, int]], p: int) -> int:
    total = 0
    for i, (xi, yi) in enumerate(points):
        num, den = 1, 1
        for j, (xj, _) in enumerate(points):
            if i != j:
                num = num * (-xj) % p
                den = den * (xi - xj) % p
        total = (total + yi * num * pow(den, -1, p)) % p
    return total


def ss_deal_tn(secret: int, t: int, n: int, p: int, rng, cfg: SmallCancConfig = SmallCancConfig()) -> list[ShareBundle]:
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not (1 <= t <= n < p):
        raise ValueError(f"need 1 <= t <= n < p, got t={t}, n={n}, p={p}")
    if not 0 <= secret < p:
        raise ValueError(f"secret must lie in [0, {p})")
    rng = as_rng(rng)
    coeffs = [secret] + [rng.randrange(p) for _ in range(t - 1)]
    k = p.bit_length()
    return [_encode(j, "tn", _bits(poly_eval(coeffs, j, p), k), rng, cfg, t, p) for j in range(1, n + 1)]


def ss_reconstruct_tn(shares: Sequence[ShareBundle]) -> int:
    if not shares:
        raise InsufficientShares("no shares supplied")
    t, p = shares[0].t, shares[0].p
    if any(s.t != t or s.p != p for s in shares):
        raise ValueError("shares come from different dealings")
    distinct = {s.index: s for s in shares}
    if len(distinct) < t:
        raise InsufficientShares(f"need {t} distinct shares, got {len(distinct)}")
    chosen = sorted(distinct.values(), key=lambda s: s.index)[:t]
    points = [(s.index, _int(s.decode()) % p) for s in chosen]
    return lagrange_at_zero(points, p)
