"""Budgeted breadth-first search oracles for conjugacy-type problems.

Every search walks conjugator words in the generator letters
``g_1^(+-1), ..., g_n^(+-1)`` (in that fixed order) breadth first, and
deduplicates by normal form.  A ``Found`` witness is therefore of minimal word
length among all solutions reachable within the budget, and it is re-checked
with plain group arithmetic before being returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import words as W
from .core.presentation import GroupElement, PcPresentation, collect, conjugate, inv, mul, power
from .errors import GroupMismatch, InvalidEndomorphism

FOUND = "Found"
EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 100_000
    max_radius: int = 10

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_radius < 1:
            raise ValueError("search budget limits must be positive")


@dataclass(frozen=True)
class OracleResult:
    outcome: str
    nodes_explored: int
    radius: int
    witness: Optional[GroupElement] = None
    witness_word: W.Word = ()
    power: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.outcome == FOUND

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "nodes_explored": self.nodes_explored, "radius": self.radius}
        if self.found:
            out["witness"] = list(self.witness.exps)
            out["witness_word"] = W.to_str(self.witness_word)
            if self.power is not None:
                out["power"] = self.power
        return out


class Endomorphism:
    """Endomorphism of a polycyclic group given by the images of its generators.

    Construction checks that every defining relation maps to a relation that
    holds in the group (decided by collection).
    """

    def __init__(self, group: PcPresentation, images: Sequence[GroupElement], verify: bool = True):
        if len(images) != group.ngens:
            raise InvalidEndomorphism(f"need {group.ngens} generator images, got {len(images)}")
        for x in images:
            if x.group != group:
                raise GroupMismatch("image outside the group")
        self.group = group
        self.images = tuple(images)
        self._inv_images = tuple(inv(x) for x in images)
        if verify:
            self._verify()

    def word_image(self, word) -> GroupElement:
        acc = self.group.identity()
        for k, e in word:
            acc = mul(acc, power(self.images[k - 1], e))
        return acc

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.word_image(x.word())

    def _verify(self):
        p = self.group
        for i in range(1, p.ngens + 1):
            for j in range(i + 1, p.ngens + 1):
                gi, gj = self.images[i - 1], self.images[j - 1]
                u = p.conj_pos.get((i, j), ((j, 1),))
                v = p.conj_neg.get((i, j), ((j, 1),))
                if conjugate(gj, gi) != self.word_image(u):
                    raise InvalidEndomorphism(f"relation g{j}^g{i} = u_{i}{j} is not preserved")
                if conjugate(gj, self._inv_images[i - 1]) != self.word_image(v):
                    raise InvalidEndomorphism(f"relation g{j}^(g{i}^-1) = v_{i}{j} is not preserved")
        for i, r in enumerate(p.orders, 1):
            if r is not None and power(self.images[i - 1], r) != self.word_image(p.powers.get(i, ())):
                raise InvalidEndomorphism(f"power relation of g{i} is not preserved")

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """``self after other``."""
        return Endomorphism(self.group, [self(x) for x in other.images], verify=False)


def identity_endomorphism(p: PcPresentation) -> Endomorphism:
    return Endomorphism(p, p.gens(), verify=False)


def inner_automorphism(p: PcPresentation, y: GroupElement) -> Endomorphism:
    """``x -> y^-1 x y``."""
    return Endomorphism(p, [conjugate(g, y) for g in p.gens()], verify=False)


def _letters(p: PcPresentation):
    out = []
    for k in range(1, p.ngens + 1):
        out.append((k, 1))
        out.append((k, -1))
    return out


def _word_from_parents(parents, key):
    letters = []
    while True:
        prev, letter = parents[key]
        if prev is None:
            break
        letters.append(letter)
        key = prev
    return W.normalize(reversed(letters))


def _bfs(p: PcPresentation, start_state, step, accept, budget: SearchBudget):
    """Generic BFS over normal forms of conjugator candidates.

    ``start_state`` is the per-node payload at the identity, ``step(state,
    letter)`` advances it by one generator letter and ``accept(state)`` returns
    a truthy payload on success.  With ``step=None`` no payload is carried and
    ``accept`` receives the node's exponent vector instead.  Returns ``(node_vec, word, payload, radius,
    nodes)`` or ``(None, None, None, radius, nodes)``.
    """
    coll = p.collector
    ident = p.identity().exps
    parents = {ident: (None, None)}
    nodes = 1
    hit = accept(ident) if step is None else accept(start_state)
    if hit:
        return ident, (), hit, 0, nodes
    letters = _letters(p)
    frontier = deque([(ident, start_state)])
    radius = 0
    while frontier and radius < budget.max_radius:
        radius += 1
        nxt = deque()
        for vec, state in frontier:
            for letter in letters:
                child = coll.mul_gen(vec, letter[0] - 1, letter[1])
                if child in parents:
                    continue
                parents[child] = (vec, letter)
                nodes += 1
                if step is None:
                    cstate = None
                    hit = accept(child)
                else:
                    cstate = step(state, letter)
                    hit = accept(cstate)
                if hit:
                    return child, _word_from_parents(parents, child), hit, radius, nodes
                if nodes >= budget.max_nodes:
                    return None, None, None, radius, nodes
                nxt.append((child, cstate))
        frontier = nxt
    return None, None, None, radius, nodes


def _conj_by_letter(coll, x, letter):
    k, e = letter
    y = coll.mul_gen(x, k - 1, e)
    # g^-e * y
    g_inv = coll.zero[: k - 1] + (-e,) + coll.zero[k:]
    return coll.mul(g_inv, y)


def _check_group(p, elements):
    for x in elements:
        if x.group != p:
            raise GroupMismatch("oracle input outside the platform group")


def csp_enumerate(g, pairs, budget: SearchBudget = SearchBudget()) -> OracleResult:
    """Simultaneous conjugacy search: find ``c`` with ``a_i^c = b_i`` for all pairs."""
    p = getattr(g, "presentation", g)
    pairs = list(pairs)
    _check_group(p, [x for pair in pairs for x in pair])
    coll = p.collector
    vec_pairs = [(a.exps, b.exps) for a, b in pairs]

    # a^c = b  <=>  a c = c b; pairs are tested lazily, most nodes fail the first
    def accept(c):
        return all(coll.mul(a, c) == coll.mul(c, b) for a, b in vec_pairs)

    vec, word, _, radius, nodes = _bfs(p, None, None, accept, budget)
    if vec is None:
        return OracleResult(EXHAUSTED, nodes, radius)
    c = GroupElement(p, vec)
    for a, b in pairs:
        assert conjugate(a, c) == b, "csp witness failed re-verification"
    assert collect(p, word) == c
    return OracleResult(FOUND, nodes, radius, c, word)


def power_csp_enumerate(g, a: GroupElement, b: GroupElement, budget: SearchBudget = SearchBudget(), max_power: int | None = None) -> OracleResult:
    """Find ``n >= 1`` and ``c`` with ``a^n = b^c``.

    Powers ``a^1 .. a^max_power`` are tabulated up front (default
    ``max_radius + 1``); every visited conjugate ``b^c`` is looked up in the
    table, so each BFS layer tries all exponents at once.  Among hits at the
    shortest radius the smallest ``n`` is returned.
    """
    p = getattr(g, "presentation", g)
    _check_group(p, [a, b])
    coll = p.collector
    if max_power is None:
        max_power = budget.max_radius + 1
    table = {}
    x = p.identity()
    for n in range(1, max_power + 1):
        x = mul(x, a)
        table.setdefault(x.exps, n)

    def step(state, letter):
        return _conj_by_letter(coll, state, letter)

    def accept(state):
        return table.get(state)

    vec, word, n, radius, nodes = _bfs(p, b.exps, step, accept, budget)
    if vec is None:
        return OracleResult(EXHAUSTED, nodes, radius)
    c = GroupElement(p, vec)
    assert power(a, n) == conjugate(b, c), "power csp witness failed re-verification"
    return OracleResult(FOUND, nodes, radius, c, word, power=n)


def twisted_csp_enumerate(
    g,
    w: GroupElement,
    t: GroupElement,
    phi: Endomorphism,
    psi: Endomorphism | None = None,
    budget: SearchBudget = SearchBudget(),
) -> OracleResult:
    """Find ``a`` with ``t = psi(a^-1) w phi(a)``; ``psi`` defaults to the identity."""
    p = getattr(g, "presentation", g)
    _check_group(p, [w, t])
    if psi is None:
        psi = identity_endomorphism(p)
    for f in (phi, psi):
        if f.group != p:
            raise InvalidEndomorphism("endomorphism of a different group")
    coll = p.collector
    img = {}
    for k in range(1, p.ngens + 1):
        img[(k, 1)] = (phi.images[k - 1].exps, psi.images[k - 1].exps)
        img[(k, -1)] = (phi._inv_images[k - 1].exps, psi._inv_images[k - 1].exps)
    w_v, t_v = w.exps, t.exps

    # state = (phi(a), psi(a)); accept when w phi(a) == psi(a) t
    def step(state, letter):
        f, s = img[letter]
        return coll.mul(state[0], f), coll.mul(state[1], s)

    def accept(state):
        return coll.mul(w_v, state[0]) == coll.mul(state[1], t_v)

    ident = p.identity().exps
    vec, word, _, radius, nodes = _bfs(p, (ident, ident), step, accept, budget)
    if vec is None:
        return OracleResult(EXHAUSTED, nodes, radius)
    a = GroupElement(p, vec)
    assert mul(mul(psi(inv(a)), w), phi(a)) == t, "twisted csp witness failed re-verification"
    return OracleResult(FOUND, nodes, radius, a, word)
