"""Field-based attack on AAG through a faithful matrix image.

Bob's key ``B`` lies in the matrix algebra spanned by words in the ``b_j``.
Any ``X`` in that span with ``a_i X = X a'_i`` for all ``i`` equals ``Z B``
with ``Z`` commuting with every ``a_i``.  Writing ``X`` as a combination of
words and evaluating the same combination ``Y`` on the ``b'_j = A^-1 b_j A``
gives ``Y = A^-1 X A``, so ``Y^-1 X = A^-1 B^-1 A B`` is the shared key.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .. import linalg as la
from ..errors import RepMismatch, SingularSystem
from ..platform import matrix_of
from ..protocols.aag import AagTranscript
from .lba import AttackResult


def _reduce(vec, basis_rows, pivots):
    """Reduce ``vec`` against an echelon basis; return the residue."""
    v = list(vec)
    for row, p in zip(basis_rows, pivots):
        if v[p]:
            f = v[p] / row[p]
            v = [x - f * y for x, y in zip(v, row)]
    return v


def algebra_span(gens_left, gens_right, limit: int | None = None):
    """Spanning words of the unital algebra generated by ``gens_left``.

    Returns pairs ``(M, N)`` where ``M`` is a basis matrix built as a word in
    ``gens_left`` and ``N`` is the same word evaluated on ``gens_right``.
    """
    n = len(gens_left[0])
    limit = limit or n * n
    basis, rows, pivots = [], [], []

    def add(M, N):
        res = _reduce([Fraction(x) for x in la.flatten(M)], rows, pivots)
        nz = next((k for k, x in enumerate(res) if x), None)
        if nz is None:
            return False
        rows.append(res)
        pivots.append(nz)
        basis.append((M, N))
        return True

    add(la.identity(n), la.identity(n))
    frontier = list(basis)
    while frontier and len(basis) < limit:
        nxt = []
        for (M, N), (g, h) in itertools.product(frontier, zip(gens_left, gens_right)):
            cand = (la.mul(M, g), la.mul(N, h))
            if add(*cand):
                nxt.append(cand)
                if len(basis) >= limit:
                    break
        frontier = nxt
    return basis


def _combinations(r: int, max_coeff: int = 3):
    """Deterministic sweep of small integer coefficient vectors."""
    for k in range(r):
        yield tuple(1 if i == k else 0 for i in range(r))
    for c in range(1, max_coeff + 1):
        for vec in itertools.product(range(-c, c + 1), repeat=r):
            if any(vec) and max(map(abs, vec)) == c:
                yield vec
        if r > 6:
            break


def _combine(basis_mats, coeffs, n):
    acc = la.zeros(n, n)
    for M, c in zip(basis_mats, coeffs):
        if c:
            acc = la.add(acc, la.scale(M, c))
    return acc


def field_based_attack(t: AagTranscript, pg, max_tries: int = 2000) -> AttackResult:
    rep = pg.matrix_image
    if rep is None:
        raise SingularSystem(f"{pg.name} ships no matrix image")
    mats = lambda xs: [matrix_of(x, rep) for x in xs]  # noqa: E731
    a, a_conj = mats(t.a_gens), mats(t.a_conj)
    b, b_conj = mats(t.b_gens), mats(t.b_conj)
    inv_b = [la.inverse(m) for m in b]
    inv_bc = [la.inverse(m) for m in b_conj]
    span = algebra_span(b + inv_b, b_conj + inv_bc)
    n = rep.dim
    # unknowns: coefficients of X in the span; equations: a_i X - X a'_i = 0
    eqs = []
    for ai, aci in zip(a, a_conj):
        cols = [la.flatten(la.sub(la.mul(ai, M), la.mul(M, aci))) for M, _ in span]
        eqs.extend(zip(*cols))
    null = la.nullspace(eqs)
    if not null:
        raise SingularSystem("conjugacy system has only the zero solution")
    lefts = [M for M, _ in span]
    rights = [N for _, N in span]
    for tries, coeffs in enumerate(_combinations(len(null))):
        if tries >= max_tries:
            break
        lam = [sum(c * v[k] for c, v in zip(coeffs, null)) for k in range(len(span))]
        X = _combine(lefts, lam, n)
        if la.det(X) == 0:
            continue
        Y = _combine(rights, lam, n)
        if la.det(Y) == 0:
            continue
        kappa = la.mul(la.inverse(Y), X)
        note = f"span {len(span)}, nullity {len(null)}"
        try:
            key = pg.element_from_matrix(kappa)
        except RepMismatch as exc:
            # no decoder for this image: report the key as a matrix only
            return AttackResult("Success", "field", "bob", iterations=tries + 1, peak_set_size=len(span),
                                reason=f"{note}; {exc}", key_matrix=kappa)
        if matrix_of(key, rep) != kappa:
            raise AssertionError("decoded key does not reproduce its matrix")
        return AttackResult("Success", "field", "bob", key=key, iterations=tries + 1,
                            peak_set_size=len(span), verified=True, reason=note, key_matrix=kappa)
    raise SingularSystem(f"no invertible solution among {min(tries + 1, max_tries)} combinations (nullity {len(null)})")
