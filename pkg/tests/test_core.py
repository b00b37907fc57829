import collections
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles_closed_form import heis_conj, heis_inv, heis_mul, ut3_conj, ut3_inv, ut3_mul
from pcw.core import (
    PcPresentation,
    check_consistency,
    collect,
    commutator,
    conjugate,
    dump_presentation,
    hirsch_length,
    inv,
    mul,
    parse_presentation,
    power,
    random_element,
)
from pcw.core import words as W
from pcw.core.collect import Collector
from pcw.errors import BadRange, BudgetExceeded, GroupMismatch, MalformedWord, PresentationError
from pcw.platform import by_name
from pcw.rng import Rng

small = st.integers(-6, 6)
triple = st.tuples(small, small, small)


# ------------------------------------------------------------------ words


def test_word_roundtrip_text():
    w = ((1, 2), (3, -1), (2, 5))
    assert W.from_str(W.to_str(w)) == w
    assert W.to_str(()) == "1"
    assert W.from_str("1") == ()


def test_word_normalize_merges_and_drops():
    assert W.normalize([(1, 2), (1, -2), (2, 1), (2, 3)]) == ((2, 4),)


def test_malformed_word_rejected(heis):
    with pytest.raises(MalformedWord):
        W.from_str("x3")
    with pytest.raises(MalformedWord):
        collect(heis.presentation, ((4, 1),))


@given(st.lists(st.tuples(st.integers(1, 5), st.integers(-3, 3).filter(bool)), max_size=12))
def test_word_inverse_is_involution(syllables):
    w = W.normalize(syllables)
    assert W.inverse(W.inverse(w)) == w
    assert W.normalize(W.concat(w, W.inverse(w))) == ()


# ------------------------------------------------------------------ collection, Heisenberg


def test_collect_g2_g1(heis):
    assert collect(heis.presentation, ((2, 1), (1, 1))).exps == (1, 1, 1)


def test_collect_empty_word_is_identity(heis, ut4):
    for pg in (heis, ut4):
        assert collect(pg.presentation, ()).is_identity()


def test_collect_commutator_word(heis):
    w = ((1, 1), (2, 1), (1, -1), (2, -1))
    assert collect(heis.presentation, w).exps == (0, 0, -1)


def test_mul_examples(heis):
    p = heis.presentation
    assert mul(p.element((1, 1, 0)), p.element((1, 0, 0))).exps == (2, 1, 1)
    assert mul(p.element((1, 0, 0)), p.element((0, 1, 0))).exps == (1, 1, 0)
    x = p.element((3, -2, 7))
    assert mul(x, p.identity()) == x


def test_inv_examples(heis):
    p = heis.presentation
    assert inv(p.element((1, 1, 0))).exps == (-1, -1, 1)
    assert inv(p.identity()).is_identity()


def test_conjugate_examples(heis):
    p = heis.presentation
    assert conjugate(p.element((0, 1, 0)), p.element((1, 0, 0))).exps == (0, 1, 1)
    z = p.element((0, 0, 5))
    for x in [p.element((1, 2, 3)), p.element((-4, 0, 1))]:
        assert conjugate(z, x) == z
        assert conjugate(x, p.identity()) == x


def test_commutator_examples(heis):
    p = heis.presentation
    assert commutator(p.gen(1), p.gen(2)).exps == (0, 0, -1)
    a = p.element((2, -1, 4))
    assert commutator(a, a).is_identity()


@given(triple, triple)
def test_heisenberg_matches_closed_form(x, y):
    p = by_name("heisenberg", check=False).presentation
    X, Y = p.element(x), p.element(y)
    assert mul(X, Y).exps == heis_mul(x, y)
    assert inv(X).exps == heis_inv(x)
    assert conjugate(X, Y).exps == heis_conj(x, y)


@given(triple, triple)
def test_ut3_matches_closed_form(x, y):
    p = by_name("ut:3", check=False).presentation
    X, Y = p.element(x), p.element(y)
    assert mul(X, Y).exps == ut3_mul(x, y)
    assert inv(X).exps == ut3_inv(x)
    assert conjugate(X, Y).exps == ut3_conj(x, y)


def test_large_exponents_stay_exact(heis):
    p = heis.presentation
    big = 10**30
    x = p.element((big, big, 0))
    assert mul(x, x).exps == heis_mul((big, big, 0), (big, big, 0))


# ------------------------------------------------------------------ algebraic properties


def _elements(pg, seed, count, lo=0, hi=10):
    rng = Rng(seed)
    return [random_element(pg.presentation, lo, hi, rng)[1] for _ in range(count)]


@pytest.mark.parametrize("name", ["heisenberg", "ut:4", "zsqrt2", "golden", "tri:4:2", "heisenberg*heisenberg"])
@given(seed=st.integers(0, 2**32))
def test_associativity_and_inverse(name, seed):
    pg = by_name(name, check=False)
    a, b, c = _elements(pg, seed, 3)
    assert (a * b) * c == a * (b * c)
    assert (a * ~a).is_identity()
    assert ~~a == a
    assert commutator(a, b) == inv(commutator(b, a))


@given(seed=st.integers(0, 2**32))
def test_conjugation_is_right_action(seed):
    pg = by_name("ut:4", check=False)
    a, x, y = _elements(pg, seed, 3)
    assert conjugate(conjugate(a, x), y) == conjugate(a, x * y)
    assert (a ^ x) == conjugate(a, x)


@given(seed=st.integers(0, 2**32), e=st.integers(-12, 12))
def test_power_matches_repeated_product(seed, e):
    pg = by_name("zsqrt2", check=False)
    (a,) = _elements(pg, seed, 1)
    expected = a.group.identity()
    for _ in range(abs(e)):
        expected = expected * (a if e > 0 else ~a)
    assert power(a, e) == expected


def _pad_with_relators(p, w, rng):
    """Insert trivial words (relator instances) at random cut points."""
    letters = list(w)
    for _ in range(3):
        i, j = sorted(rng.sample(range(1, p.ngens + 1), 2))
        u = p.conj_pos.get((i, j), ((j, 1),))
        # g_i^-1 g_j g_i u^-1 = 1
        rel = ((i, -1), (j, 1), (i, 1)) + W.inverse(u)
        cut = rng.randint(0, len(letters))
        letters[cut:cut] = list(rel)
    return W.normalize(letters)


@pytest.mark.parametrize("name", ["heisenberg", "ut:4", "zsqrt2"])
def test_normal_form_unique_under_inserted_relators(name):
    pg = by_name(name, check=False)
    p = pg.presentation
    rng = Rng(11)
    for _ in range(1000 if name == "heisenberg" else 200):
        w = random_element(p, 0, 10, rng)[0]
        assert collect(p, w) == collect(p, _pad_with_relators(p, w, rng))


# ------------------------------------------------------------------ random elements


def test_random_element_empty_range(heis):
    w, x = random_element(heis.presentation, 0, 0, Rng(1))
    assert w == () and x.is_identity()


def test_random_element_replays(heis):
    p = heis.presentation
    assert random_element(p, 2, 2, Rng(42)) == random_element(p, 2, 2, Rng(42))


def test_random_element_bad_range(heis):
    with pytest.raises(BadRange):
        random_element(heis.presentation, 3, 2, Rng(0))


def test_random_letters_uniform(ut4):
    p = ut4.presentation
    rng = Rng(5)
    counts = collections.Counter()
    for _ in range(10_000):
        for k, e in random_element(p, 1, 1, rng)[0]:
            counts[(k, e)] += 1
    cells = [(k, s) for k in range(1, p.ngens + 1) for s in (1, -1)]
    n = sum(counts.values())
    expected = n / len(cells)
    chi2 = sum((counts[c] - expected) ** 2 / expected for c in cells)
    # 11 degrees of freedom: mean 11, sd sqrt(22); allow 3 sd
    assert chi2 < 11 + 3 * 22**0.5


# ------------------------------------------------------------------ hirsch length, growth


def test_hirsch_lengths(heis, ut4):
    assert hirsch_length(heis.presentation) == 3
    assert hirsch_length(ut4.presentation) == 6
    finite = PcPresentation(2, [2, 3])
    assert hirsch_length(finite) == 0


def test_growth_count_matches_brute_force(heis):
    """Distinct elements of word length <= 4: BFS over normal forms equals
    collecting every word explicitly."""
    p = heis.presentation
    letters = [(k, s) for k in (1, 2, 3) for s in (1, -1)]
    brute = set()
    for n in range(5):
        for word in itertools.product(letters, repeat=n):
            brute.add(collect(p, word).exps)
    seen = {p.identity().exps}
    frontier = [p.identity().exps]
    coll = p.collector
    for _ in range(4):
        nxt = []
        for v in frontier:
            for k, s in letters:
                c = coll.mul_gen(v, k - 1, s)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    assert len(seen) == len(brute)


# ------------------------------------------------------------------ finite orders


def test_finite_orders_reduce_exponents():
    # Z/3 acting on Z/7 by doubling, an automorphism of order 3
    p = PcPresentation(2, [3, 7], {(1, 2): ((2, 2),)}, {(1, 2): ((2, 4),)})
    assert check_consistency(p, 50, Rng(1)).consistent
    x = p.element((5, 20))
    assert x.exps == (2, 6)
    rng = Rng(3)
    for _ in range(200):
        y = random_element(p, 0, 12, rng)[1]
        assert 0 <= y.exps[0] < 3 and 0 <= y.exps[1] < 7
    # the group has order 21
    elems = {collect(p, w).exps for w in itertools.product([(1, 1), (2, 1)], repeat=8)}
    assert len(elems) == 21


# ------------------------------------------------------------------ consistency


def test_consistency_of_shipped_groups(heis, ut4):
    for pg in (heis, ut4):
        assert check_consistency(pg.presentation, 100, Rng(0)).label == "ConsistentSoFar"


def test_trivial_group_consistent():
    assert check_consistency(PcPresentation(0, []), 5, Rng(0)).consistent


def test_corrupted_heisenberg_is_inconsistent(heis):
    p = heis.presentation
    bad = PcPresentation(3, [None] * 3, {(1, 2): ((2, 1), (3, 2))}, dict(p.conj_neg))
    verdict = check_consistency(bad, 100, Rng(0))
    assert verdict.label == "Inconsistent"
    assert verdict.witness is not None


def test_budget_exceeded():
    p = by_name("zsqrt2", check=False).presentation
    coll = Collector(p, budget=5)
    with pytest.raises(BudgetExceeded):
        coll.collect(((1, 40), (2, 1), (1, -40), (3, 5)))


def test_group_mismatch(heis, ut3):
    with pytest.raises(GroupMismatch):
        mul(heis.presentation.gen(1), by_name("zsqrt2", check=False).presentation.gen(1))


# ------------------------------------------------------------------ presentation file format


def test_presentation_roundtrip(ut4):
    text = dump_presentation(ut4.presentation)
    assert text.startswith("pcgroup v1\nngens 6\n")
    assert parse_presentation(text) == ut4.presentation


def test_presentation_with_orders_roundtrip():
    text = "pcgroup v1\nngens 2\norder 1 3\norder 2 7\nconj + 1 2 g2^2  # action\nconj - 1 2 g2^4\n"
    p = parse_presentation(text)
    assert p.orders == (3, 7)
    assert parse_presentation(dump_presentation(p)) == p


@pytest.mark.parametrize(
    "body, lineno",
    [
        ("ngens 3\nconj + 1 2 g2^1 g3^1\nconj + 1 2 g2^1\n", 4),
        ("ngens 3\nconj + 1 4 g3^1\n", 3),
        ("ngens 3\norder 2 5\norder 2 5\n", 4),
        ("ngens 3\nconj + 2 3 g1^1\n", 3),
        ("ngens 3\nfrobnicate 1\n", 3),
    ],
)
def test_presentation_errors_carry_line_numbers(body, lineno):
    with pytest.raises(PresentationError) as err:
        parse_presentation("pcgroup v1\n" + body)
    assert err.value.lineno == lineno
