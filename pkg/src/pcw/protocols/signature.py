"""Conjugacy-based signature scheme.

Keys: a certified element ``g`` whose centralizer is ``<g>``, a private
``s`` and highly composite ``n``; the public key is ``x = (g^n)^s``.
A signature on ``m`` is ``(y, alpha, n_j)`` with ``y = (g^n_i)^t``,
``h = H(m || f(y))``, ``alpha = t^-1 s h y`` for a random factorization
``n = n_i n_j``.  Verification checks ``(y^n_j)^alpha = x^(h y)``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ..core.presentation import GroupElement, commutator, conjugate, inv, mul, power, random_element
from ..errors import FactorReuse, NoCertifiedElement
from ..rng import as_rng

DEFAULT_N = 2**4 * 3**2 * 5
MAX_SIGNATURES = 8
HASH_BOUND = 256  # hash exponents land in [-HASH_BOUND, HASH_BOUND]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def encode_element(y: GroupElement) -> bytes:
    """Canonical serialization ``f``: the normal-form exponents as ASCII."""
    return ",".join(str(e) for e in y.exps).encode()


def hash_to_group(p, data: bytes) -> GroupElement:
    """``H``: SHA-256 digest chunks reduced to small exponents, one per generator."""
    stream = b""
    counter = 0
    while len(stream) < 4 * p.ngens:
        stream += hashlib.sha256(counter.to_bytes(4, "big") + data).digest()
        counter += 1
    span = 2 * HASH_BOUND + 1
    exps = [int.from_bytes(stream[4 * k:4 * k + 4], "big") % span - HASH_BOUND for k in range(p.ngens)]
    return p.element(exps)


@dataclass
class SignatureKeypair:
    g: GroupElement
    s: GroupElement
    n: int
    x: GroupElement
    used_factors: list = field(default_factory=list)

    @property
    def public(self) -> GroupElement:
        return self.x


@dataclass(frozen=True)
class Signature:
    y: GroupElement
    alpha: GroupElement
    n_j: int


def sig_keygen(pg, rng, n: int = DEFAULT_N, s_len=(4, 8), element: int = 0) -> SignatureKeypair:
    if not getattr(pg, "self_centralizing", ()):
        raise NoCertifiedElement(f"{getattr(pg, 'name', pg)} ships no self-centralizing element")
    rng = as_rng(rng)
    p = pg.presentation
    g = p.element(pg.self_centralizing[element])
    # s must not centralize g, otherwise x = g^n leaks the key
    while True:
        s = random_element(p, *s_len, rng)[1]
        if not commutator(g, s).is_identity():
            break
    x = conjugate(power(g, n), s)
    return SignatureKeypair(g, s, n, x)


def sig_sign(kp: SignatureKeypair, message: bytes, rng, t_len=(4, 8)) -> Signature:
    if len(kp.used_factors) >= MAX_SIGNATURES:
        raise FactorReuse(f"keypair has issued {MAX_SIGNATURES} signatures; regenerate s and n")
    free = [d for d in divisors(kp.n) if d not in kp.used_factors]
    if not free:
        raise FactorReuse("every factor of n has been used")
    rng = as_rng(rng)
    p = kp.g.group
    n_i = free[rng.randrange(len(free))]
    n_j = kp.n // n_i
    t = random_element(p, *t_len, rng)[1]
    y = conjugate(power(kp.g, n_i), t)
    h = hash_to_group(p, message + encode_element(y))
    alpha = mul(mul(mul(inv(t), kp.s), h), y)
    kp.used_factors.append(n_i)
    sig = Signature(y, alpha, n_j)
    assert sig_verify(kp.x, message, sig), "honest signature failed verification"
    return sig


def sig_verify(public: GroupElement, message: bytes, sig: Signature) -> bool:
    p = public.group
    h = hash_to_group(p, message + encode_element(sig.y))
    lhs = conjugate(power(sig.y, sig.n_j), sig.alpha)
    rhs = conjugate(public, mul(h, sig.y))
    return lhs == rhs


KEY_FORMAT = "pcw-sig-key v1"
PUBLIC_FORMAT = "pcw-sig-public v1"
SIG_FORMAT = "pcw-sig v1"


def _check(data, fmt):
    if data.get("format") != fmt:
        raise ValueError(f"expected {fmt!r}, got {data.get('format')!r}")


def keypair_to_json(kp: SignatureKeypair, group: str = "") -> dict:
    return {
        "format": KEY_FORMAT,
        "group": group,
        "n": kp.n,
        "g": list(kp.g.exps),
        "s": list(kp.s.exps),
        "x": list(kp.x.exps),
        "used_factors": list(kp.used_factors),
    }


def keypair_from_json(data: dict, p) -> SignatureKeypair:
    _check(data, KEY_FORMAT)
    el = lambda v: GroupElement(p, tuple(v))  # noqa: E731
    return SignatureKeypair(el(data["g"]), el(data["s"]), data["n"], el(data["x"]), list(data["used_factors"]))


def public_to_json(kp: SignatureKeypair, group: str = "") -> dict:
    return {"format": PUBLIC_FORMAT, "group": group, "x": list(kp.x.exps)}


def public_from_json(data: dict, p) -> GroupElement:
    _check(data, PUBLIC_FORMAT)
    return GroupElement(p, tuple(data["x"]))


def signature_to_json(sig: Signature) -> dict:
    return {"format": SIG_FORMAT, "y": list(sig.y.exps), "alpha": list(sig.alpha.exps), "n_j": sig.n_j}


def signature_from_json(data: dict, p) -> Signature:
    _check(data, SIG_FORMAT)
    return Signature(GroupElement(p, tuple(data["y"])), GroupElement(p, tuple(data["alpha"])), data["n_j"])
