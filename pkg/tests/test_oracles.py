import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcw.core import words as W
from pcw.core import collect, conjugate, inv, mul, power, random_element
from pcw.errors import InvalidEndomorphism
from pcw.oracles import (
    Endomorphism,
    SearchBudget,
    csp_enumerate,
    identity_endomorphism,
    inner_automorphism,
    power_csp_enumerate,
    twisted_csp_enumerate,
)
from pcw.platform import by_name
from pcw.protocols.twisted import heisenberg_automorphism
from pcw.rng import Rng

SMALL = SearchBudget(20_000, 6)


def test_csp_trivial_pair(heis):
    a = heis.presentation.element((2, -1, 3))
    res = csp_enumerate(heis, [(a, a)])
    assert res.found and res.radius == 0 and res.witness.is_identity()


def test_csp_planted_generator(heis):
    p = heis.presentation
    a = p.element((1, 2, 0))
    b = conjugate(a, p.gen(1))
    res = csp_enumerate(heis, [(a, b)], SMALL)
    assert res.found and res.radius == 1
    assert conjugate(a, res.witness) == b


def test_csp_abelianization_obstruction(heis):
    p = heis.presentation
    a, b = p.element((1, 0, 0)), p.element((2, 0, 0))
    # conjugation preserves the image in Z^2 = G / <g3>
    assert a.exps[:2] != b.exps[:2]
    res = csp_enumerate(heis, [(a, b)], SearchBudget(2_000, 10))
    assert not res.found


@pytest.mark.parametrize("name", ["heisenberg", "zsqrt2", "ut:4"])
def test_csp_finds_within_planted_radius(name):
    pg = by_name(name, check=False)
    p = pg.presentation
    rng = Rng(17)
    for _ in range(5):
        w, c = random_element(p, 1, 3, rng)
        pairs = [(a, conjugate(a, c)) for a in (random_element(p, 4, 6, rng)[1] for _ in range(2))]
        res = csp_enumerate(pg, pairs, SearchBudget(200_000, 4))
        assert res.found
        assert res.radius <= W.letter_length(w)
        assert all(conjugate(a, res.witness) == b for a, b in pairs)
        assert collect(p, res.witness_word) == res.witness


def test_csp_deterministic(zsqrt2):
    p = zsqrt2.presentation
    a = p.element((1, 2, -1))
    b = conjugate(a, p.element((0, 1, 1)))
    r1 = csp_enumerate(zsqrt2, [(a, b)], SMALL)
    r2 = csp_enumerate(zsqrt2, [(a, b)], SMALL)
    assert r1 == r2


def test_power_csp_equal(heis):
    a = heis.presentation.element((1, 1, 0))
    res = power_csp_enumerate(heis, a, a, SMALL)
    assert res.found and res.power == 1 and res.witness.is_identity()


def test_power_csp_square(heis):
    p = heis.presentation
    a, b = p.element((0, 0, 1)), p.element((0, 0, 2))
    res = power_csp_enumerate(heis, a, b, SMALL)
    assert res.found and res.power == 2 and res.witness.is_identity()


def test_power_csp_planted_cube(heis):
    p = heis.presentation
    a = p.element((1, -1, 2))
    b = conjugate(power(a, 3), inv(p.gen(2)))  # b^(g2) = a^3
    res = power_csp_enumerate(heis, a, b, SMALL)
    assert res.found
    assert power(a, res.power) == conjugate(b, res.witness)


def test_twisted_identity_case(heis):
    p = heis.presentation
    w = p.element((1, 2, 3))
    idm = identity_endomorphism(p)
    res = twisted_csp_enumerate(heis, w, w, idm, idm, SMALL)
    assert res.found and res.witness.is_identity()


def test_twisted_with_identity_maps_agrees_with_csp(heis):
    p = heis.presentation
    idm = identity_endomorphism(p)
    rng = Rng(21)
    for _ in range(20):
        a0 = random_element(p, 1, 3, rng)[1]
        w = random_element(p, 3, 6, rng)[1]
        t = conjugate(w, a0)
        tw = twisted_csp_enumerate(heis, w, t, idm, idm, SMALL)
        cs = csp_enumerate(heis, [(w, t)], SMALL)
        assert tw.found and cs.found and tw.radius == cs.radius


def test_twisted_planted(heis):
    p = heis.presentation
    phi = heisenberg_automorphism(heis, ((2, 1), (1, 1)))
    psi = inner_automorphism(p, p.element((0, 1, 0)))
    rng = Rng(5)
    for _ in range(5):
        a0 = random_element(p, 1, 3, rng)[1]
        w = random_element(p, 3, 6, rng)[1]
        t = mul(mul(psi(inv(a0)), w), phi(a0))
        res = twisted_csp_enumerate(heis, w, t, phi, psi, SMALL)
        assert res.found
        a = res.witness
        assert mul(mul(psi(inv(a)), w), phi(a)) == t


def test_endomorphism_rejects_non_homomorphism(heis):
    p = heis.presentation
    with pytest.raises(InvalidEndomorphism):
        # g3 must go to [phi(g1), phi(g2)]-compatible image; this one is not
        Endomorphism(p, [p.gen(1), p.gen(2), p.gen(1)])


@given(st.integers(0, 2**32))
def test_inner_automorphism_is_conjugation(seed):
    pg = by_name("ut:4", check=False)
    p = pg.presentation
    rng = Rng(seed)
    y, x = (random_element(p, 0, 6, rng)[1] for _ in range(2))
    assert inner_automorphism(p, y)(x) == conjugate(x, y)


@given(st.integers(0, 2**32))
def test_endomorphism_composition(seed):
    pg = by_name("heisenberg", check=False)
    p = pg.presentation
    rng = Rng(seed)
    f = heisenberg_automorphism(pg, ((1, 1), (0, 1)))
    g = inner_automorphism(p, random_element(p, 0, 4, rng)[1])
    x = random_element(p, 0, 8, rng)[1]
    assert f.compose(g)(x) == f(g(x))
