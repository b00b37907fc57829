"""Concrete platform groups, with exact matrix images where available."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg as la
from .core import PcPresentation, check_consistency, commutator
from .core.presentation import GroupElement, collect, hirsch_length
from .errors import (
    BadDimension,
    InconsistentPresentation,
    NonCommutingUnits,
    NonUnimodular,
    RepMismatch,
    UnknownPlatform,
)


@dataclass(frozen=True)
class MatrixRep:
    """Exact images of the polycyclic generators in ``GL(dim, Q)``."""

    dim: int
    images: tuple
    presentation: PcPresentation = field(repr=False, compare=False)

    def __post_init__(self):
        if len(self.images) != self.presentation.ngens:
            raise RepMismatch("need one image per generator")
        for m in self.images:
            if la.dims(m) != (self.dim, self.dim):
                raise RepMismatch(f"image is not {self.dim}x{self.dim}")
        object.__setattr__(self, "_inverses", tuple(la.inverse(m) for m in self.images))

    def word_matrix(self, word):
        acc = la.identity(self.dim)
        for k, e in word:
            base = self.images[k - 1] if e > 0 else self._inverses[k - 1]
            for _ in range(abs(e)):
                acc = la.mul(acc, base)
        return acc

    def verify(self) -> bool:
        """Check every defining relation holds for the images."""
        p = self.presentation
        for i, j in itertools.combinations(range(1, p.ngens + 1), 2):
            gi, gj, gi_inv = self.images[i - 1], self.images[j - 1], self._inverses[i - 1]
            u = p.conj_pos.get((i, j), ((j, 1),))
            v = p.conj_neg.get((i, j), ((j, 1),))
            if la.mul(gi_inv, la.mul(gj, gi)) != self.word_matrix(u):
                return False
            if la.mul(gi, la.mul(gj, gi_inv)) != self.word_matrix(v):
                return False
        for i, r in enumerate(p.orders, 1):
            if r is not None and la.power(self.images[i - 1], r) != self.word_matrix(p.powers.get(i, ())):
                return False
        return True


def matrix_of(g: GroupElement, rep: MatrixRep):
    if g.group is not rep.presentation and g.group != rep.presentation:
        raise RepMismatch("representation belongs to a different group")
    acc = la.identity(rep.dim)
    for k, e in enumerate(g.exps):
        if e:
            acc = la.mul(acc, la.power(rep.images[k], e))
    return acc


@dataclass
class PlatformGroup:
    presentation: PcPresentation
    name: str
    matrix_image: Optional[MatrixRep] = None
    commuting_pair: Optional[tuple] = None
    # exponent vectors of elements whose centralizer is exactly their cyclic group
    self_centralizing: tuple = ()
    decode: Optional[object] = field(default=None, repr=False)

    @property
    def hirsch(self) -> int:
        return hirsch_length(self.presentation)

    def verify(self, trials: int = 500, seed: int = 0):
        verdict = check_consistency(self.presentation, trials, seed)
        if not verdict:
            raise InconsistentPresentation(f"{self.name}: {verdict.reason}")
        if self.commuting_pair is not None:
            A, B = self.commuting_pair
            p = self.presentation
            for a, b in itertools.product(A, B):
                if not commutator(p.gen(a), p.gen(b)).is_identity():
                    raise InconsistentPresentation(f"{self.name}: g{a} and g{b} do not commute")
        if self.matrix_image is not None and not self.matrix_image.verify():
            raise InconsistentPresentation(f"{self.name}: matrix image violates a relation")
        return verdict

    def element_from_matrix(self, m) -> GroupElement:
        """Inverse of :func:`matrix_of` for platforms that ship a decoder."""
        if self.decode is None:
            raise RepMismatch(f"{self.name} has no matrix decoder")
        return self.presentation.element(self.decode(m))


def _finish(pg: PlatformGroup, check: bool) -> PlatformGroup:
    if check:
        pg.verify()
    return pg


# ---------------------------------------------------------------- unitriangular


def _ut_positions(n: int):
    """Transvection positions ordered by superdiagonal, then by row."""
    return [(i, i + d) for d in range(1, n) for i in range(n - d)]


def _transvection(n, i, j, e=1):
    return tuple(tuple(1 if r == c else (e if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n))


def _ut_decode(n: int, m) -> tuple:
    positions = _ut_positions(n)
    exps = []
    cur = m
    for d in range(1, n):
        level = [(i, i + d) for i in range(n - d)]
        es = [cur[i][j] for i, j in level]
        exps.extend(es)
        p = la.identity(n)
        for (i, j), e in zip(level, es):
            p = la.mul(p, _transvection(n, i, j, e))
        cur = la.mul(la.inverse(p), cur)
    if cur != la.identity(n):
        raise RepMismatch("matrix is not integral unitriangular")
    assert len(exps) == len(positions)
    return tuple(int(e) for e in exps)


def unitriangular(n: int, check: bool = True) -> PlatformGroup:
    """``UT(n, Z)`` on its elementary transvections ``I + E_ij`` (i < j)."""
    if n < 3:
        raise BadDimension("unitriangular needs n >= 3")
    positions = _ut_positions(n)
    ngens = len(positions)
    mats = [_transvection(n, i, j) for i, j in positions]
    inv = [_transvection(n, i, j, -1) for i, j in positions]

    def word(m):
        return tuple((k + 1, e) for k, e in enumerate(_ut_decode(n, m)) if e)

    conj_pos, conj_neg = {}, {}
    for a, b in itertools.combinations(range(ngens), 2):
        u = word(la.mul(inv[a], la.mul(mats[b], mats[a])))
        v = word(la.mul(mats[a], la.mul(mats[b], inv[a])))
        if u != ((b + 1, 1),):
            conj_pos[(a + 1, b + 1)] = u
        if v != ((b + 1, 1),):
            conj_neg[(a + 1, b + 1)] = v
    pres = PcPresentation(ngens, [None] * ngens, conj_pos, conj_neg, name=f"ut{n}")
    rep = MatrixRep(n, tuple(mats), pres)
    return _finish(PlatformGroup(pres, f"ut{n}", rep, decode=lambda m: _ut_decode(n, m)), check)


def heisenberg(check: bool = True) -> PlatformGroup:
    """Integer Heisenberg group: ``g2^(g1) = g2 g3``, ``g3`` central.

    The element ``g1^a g2^b g3^c`` corresponds to ``[[1, b, c], [0, 1, a], [0, 0, 1]]``.
    """
    pres = PcPresentation(
        3,
        [None, None, None],
        {(1, 2): ((2, 1), (3, 1))},
        {(1, 2): ((2, 1), (3, -1))},
        name="heisenberg",
    )
    images = (
        ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((1, 0, 1), (0, 1, 0), (0, 0, 1)),
    )
    rep = MatrixRep(3, images, pres)

    def decode(m):
        if m[0][0] != 1 or m[1][1] != 1 or m[2][2] != 1 or m[1][0] or m[2][0] or m[2][1]:
            raise RepMismatch("not a Heisenberg matrix")
        return (int(m[1][2]), int(m[0][1]), int(m[0][2]))

    return _finish(PlatformGroup(pres, "heisenberg", rep, decode=decode), check)


# ------------------------------------------------------------------ semidirect


def semidirect_from_action(degree: int, action_matrices: Sequence, name: str = "", check: bool = True) -> PlatformGroup:
    """``Z^degree`` semidirect ``Z^k`` with the k unit generators acting by the given matrices.

    Generators ``g_1..g_k`` are the units, ``g_{k+1}..g_{k+degree}`` the
    translation basis.  A unit conjugates the translation with coordinate
    vector ``v`` to ``M v`` (column convention, so column ``j`` of ``M`` is the
    image of the ``j``-th basis translation).
    """
    if degree < 1:
        raise BadDimension("degree must be positive")
    mats = [la.mat(m) for m in action_matrices]
    for m in mats:
        if la.dims(m) != (degree, degree):
            raise BadDimension(f"action matrix is not {degree}x{degree}")
        if any(not isinstance(x, int) for row in m for x in row):
            raise NonUnimodular("action matrices must be integral")
        if la.det(m) not in (1, -1):
            raise NonUnimodular("action matrix has determinant other than +-1")
    for a, b in itertools.combinations(mats, 2):
        if la.mul(a, b) != la.mul(b, a):
            raise NonCommutingUnits("action matrices must commute")
    k = len(mats)
    d = degree
    ngens = k + d
    conj_pos, conj_neg = {}, {}
    for i, m in enumerate(mats):
        minv = la.inverse(m)
        for j in range(d):
            col = [m[r][j] for r in range(d)]
            icol = [minv[r][j] for r in range(d)]
            conj_pos[(i + 1, k + j + 1)] = tuple((k + r + 1, int(c)) for r, c in enumerate(col) if c)
            conj_neg[(i + 1, k + j + 1)] = tuple((k + r + 1, int(c)) for r, c in enumerate(icol) if c)
    name = name or f"semidirect{d}x{k}"
    pres = PcPresentation(ngens, [None] * ngens, conj_pos, conj_neg, name=name)

    # element u^n t_v  ->  diag([[ (M^n)^T, 0 ], [v^T, 1]],  [[I_k, 0], [n^T, 1]])
    def image(n_vec, v_vec):
        top = la.identity(d)
        for m, e in zip(mats, n_vec):
            if e:
                top = la.mul(top, la.power(m, e))
        top = la.transpose(top)
        upper = tuple(tuple(row) + (0,) for row in top) + (tuple(v_vec) + (1,),)
        lower = tuple(tuple(int(r == c) for c in range(k)) + (0,) for r in range(k)) + (tuple(n_vec) + (1,),)
        return la.block_diag(upper, lower)

    images = []
    for i in range(k):
        images.append(image([int(i == r) for r in range(k)], [0] * d))
    for j in range(d):
        images.append(image([0] * k, [int(j == r) for r in range(d)]))
    rep = MatrixRep(d + k + 2, tuple(images), pres)

    def decode(x):
        n_vec = tuple(int(x[d + 1 + k][d + 1 + c]) for c in range(k))
        v_vec = tuple(int(x[d][c]) for c in range(d))
        if image(n_vec, v_vec) != la.mat(x):
            raise RepMismatch("matrix is not in the image of the group")
        return n_vec + v_vec

    certified = ()
    if k == 1 and la.det(la.sub(mats[0], la.identity(d))) != 0:
        # u^m t_v commutes with u iff M v = v, so C(u) = <u> when M - I is invertible
        certified = ((1,) + (0,) * d,)
    pg = PlatformGroup(pres, name, rep, self_centralizing=certified, decode=decode)
    pg.action_matrices = tuple(mats)
    return _finish(pg, check)


def _biquadratic_mult(p: int, q: int, x):
    """Multiplication-by-``x`` matrix on the basis (1, sqrt p, sqrt q, sqrt pq)."""
    x0, x1, x2, x3 = x
    cols = [
        (x0, x1, x2, x3),
        (p * x1, x0, p * x3, x2),
        (q * x2, q * x3, x0, x1),
        (p * q * x3, q * x2, p * x1, x0),
    ]
    return tuple(tuple(cols[c][r] for c in range(4)) for r in range(4))


NUMBER_FIELDS = {
    # Z[sqrt 2] with unit 1 + sqrt 2
    "zsqrt2": (2, [((1, 2), (1, 1))]),
    # Z[theta], theta^2 = theta + 1, unit theta
    "golden": (2, [((0, 1), (1, 1))]),
    # Z[sqrt 2, sqrt 3] with units 1 + sqrt 2, 2 + sqrt 3, sqrt 2 + sqrt 3
    "biquadratic": (
        4,
        [
            _biquadratic_mult(2, 3, (1, 1, 0, 0)),
            _biquadratic_mult(2, 3, (2, 0, 1, 0)),
            _biquadratic_mult(2, 3, (0, 1, 1, 0)),
        ],
    ),
}


def companion(coeffs) -> tuple:
    """Companion matrix of the monic ``x^d + c_{d-1} x^{d-1} + ... + c_0``
    (``coeffs = [c_0, ..., c_{d-1}]``), acting on the power basis by
    multiplication with ``x``."""
    d = len(coeffs)
    return tuple(
        tuple((1 if r == c + 1 else 0) if c < d - 1 else -coeffs[r] for c in range(d))
        for r in range(d)
    )


def trinomial(degree: int, units: int = 1, check: bool = True) -> PlatformGroup:
    """``Z[x]/(x^d - x - 1)`` semidirect the units ``x``, ``x - 1``, ``x + 1``.

    All three are units because ``f(0) = -1``, ``f(1) = -1`` and
    ``f(-1) = +-1``; they commute as polynomials in ``x``.  Hirsch length is
    ``degree + units``.
    """
    if degree < 2:
        raise BadDimension("degree must be >= 2")
    if not 1 <= units <= 3:
        raise BadDimension("between 1 and 3 units are available")
    c = companion([-1, -1] + [0] * (degree - 2))
    eye = la.identity(degree)
    mats = [c, la.sub(c, eye), la.add(c, eye)][:units]
    return semidirect_from_action(degree, mats, name=f"tri{degree}u{units}", check=check)


def number_field(name: str, check: bool = True) -> PlatformGroup:
    degree, mats = NUMBER_FIELDS[name]
    return semidirect_from_action(degree, mats, name=name, check=check)


# -------------------------------------------------------------- direct product


def _shift_word(w, off):
    return tuple((k + off, e) for k, e in w)


def direct_product(a: PlatformGroup, b: PlatformGroup, check: bool = True) -> PlatformGroup:
    pa, pb = a.presentation, b.presentation
    off = pa.ngens
    conj_pos = dict(pa.conj_pos)
    conj_neg = dict(pa.conj_neg)
    for (i, j), w in pb.conj_pos.items():
        conj_pos[(i + off, j + off)] = _shift_word(w, off)
    for (i, j), w in pb.conj_neg.items():
        conj_neg[(i + off, j + off)] = _shift_word(w, off)
    powers = dict(pa.powers)
    for i, w in pb.powers.items():
        powers[i + off] = _shift_word(w, off)
    name = f"{a.name}x{b.name}"
    pres = PcPresentation(pa.ngens + pb.ngens, pa.orders + pb.orders, conj_pos, conj_neg, powers, name=name)
    rep = None
    if a.matrix_image is not None and b.matrix_image is not None:
        ra, rb = a.matrix_image, b.matrix_image
        ia = tuple(la.block_diag(m, la.identity(rb.dim)) for m in ra.images)
        ib = tuple(la.block_diag(la.identity(ra.dim), m) for m in rb.images)
        rep = MatrixRep(ra.dim + rb.dim, ia + ib, pres)
    pair = (tuple(range(1, off + 1)), tuple(range(off + 1, off + pb.ngens + 1)))
    pg = PlatformGroup(pres, name, rep, commuting_pair=pair)
    pg.factors = (a, b)
    return _finish(pg, check)


def project(g: GroupElement, pg: PlatformGroup, factor: int) -> GroupElement:
    a, b = pg.factors
    n = a.presentation.ngens
    if factor == 0:
        return GroupElement(a.presentation, g.exps[:n])
    return GroupElement(b.presentation, g.exps[n:])


def by_name(spec: str, check: bool = True) -> PlatformGroup:
    """Platform from a short name: ``heisenberg``, ``ut:<n>``, a number field
    key, ``tri:<degree>:<units>``, or ``A*B`` for a direct product."""
    if "*" in spec:
        left, right = spec.split("*", 1)
        return direct_product(by_name(left, check), by_name(right, check), check)
    if spec == "heisenberg":
        return heisenberg(check)
    if spec.startswith("ut:"):
        return unitriangular(int(spec[3:]), check)
    if spec in NUMBER_FIELDS:
        return number_field(spec, check)
    if spec.startswith("tri:"):
        parts = spec.split(":")
        return trinomial(int(parts[1]), int(parts[2]) if len(parts) > 2 else 1, check)
    raise UnknownPlatform(f"unknown platform {spec!r}")


# ---------------------------------------------------------------- file formats


def _int_tokens(text: str) -> list[int]:
    toks = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for tok in raw.split("#", 1)[0].split():
            try:
                toks.append(int(tok))
            except ValueError:
                raise BadDimension(f"line {lineno}: expected an integer, got {tok!r}") from None
    return toks


def _matrices(toks: list[int], n: int) -> list:
    if n < 1 or len(toks) % (n * n):
        raise BadDimension(f"{len(toks)} entries do not form {n}x{n} matrices")
    return [
        la.mat([toks[s + r * n:s + (r + 1) * n] for r in range(n)])
        for s in range(0, len(toks), n * n)
    ]


def parse_action(text: str):
    """Semidirect input: the degree, then each unit's action matrix, all as
    whitespace separated integers in row-major order."""
    toks = _int_tokens(text)
    if not toks:
        raise BadDimension("empty action file")
    d = toks[0]
    return d, _matrices(toks[1:], d)


def dump_action(degree: int, mats) -> str:
    lines = [str(degree)]
    for m in mats:
        lines.append("")
        lines.extend(" ".join(str(x) for x in row) for row in m)
    return "\n".join(lines) + "\n"


def parse_rep(text: str, presentation: PcPresentation) -> MatrixRep:
    """Matrix image file: the dimension, then one matrix per generator."""
    toks = _int_tokens(text)
    if not toks:
        raise BadDimension("empty representation file")
    mats = _matrices(toks[1:], toks[0])
    if len(mats) != presentation.ngens:
        raise RepMismatch(f"{len(mats)} matrices for {presentation.ngens} generators")
    rep = MatrixRep(toks[0], tuple(mats), presentation)
    if not rep.verify():
        raise RepMismatch("matrices violate a relation of the presentation")
    return rep


def dump_rep(rep: MatrixRep) -> str:
    return dump_action(rep.dim, rep.images)


def resolve(spec: str, check: bool = True) -> PlatformGroup:
    """Platform from a name (see :func:`by_name`), a presentation file,
    ``semidirect:<action file>`` or ``product:<spec>,<spec>``."""
    from pathlib import Path

    from .core.io import load_presentation

    if spec.startswith("semidirect:"):
        path = Path(spec.split(":", 1)[1])
        d, mats = parse_action(path.read_text())
        return semidirect_from_action(d, mats, name=path.stem, check=check)
    if spec.startswith("product:"):
        left, right = spec.split(":", 1)[1].split(",", 1)
        return direct_product(resolve(left, check), resolve(right, check), check)
    path = Path(spec)
    if path.is_file():
        p = load_presentation(path)
        return _finish(PlatformGroup(p, p.name or path.stem), check)
    return by_name(spec, check)
