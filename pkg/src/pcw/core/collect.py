"""Collection to normal form.

Elements are exponent vectors ``(e_1, ..., e_n)`` standing for
``g_1^e_1 ... g_n^e_n``.  A word is collected from the left: syllables are
consumed left to right, and each incoming syllable ``g_i^a`` is moved into
place across the already-collected tail ``T`` (generators > i) using

    T g_i^a = g_i^a T^(g_i^a),

where conjugation by ``g_i^a`` acts on the subgroup ``<g_{i+1}, ..., g_n>``
through the images of its generators (the ``u_ij`` / ``v_ij`` relations,
composed by repeated squaring for ``|a| > 1``).  Power relations
``g_i^r_i = w_ii`` fold finite exponents back into ``[0, r_i)``.  Every
recursive call works in a strictly smaller subgroup, so the procedure
terminates on any presentation; on a consistent one the result is the
unique normal form.
"""

from __future__ import annotations

from ..errors import BudgetExceeded

DEFAULT_BUDGET = 10_000_000

Vec = tuple

_CACHE_LIMIT = 50_000


class Collector:
    def __init__(self, pres, budget: int = DEFAULT_BUDGET):
        self.pres = pres
        self.n = n = pres.ngens
        self.rel = [r or 0 for r in pres.orders]
        self.budget = budget
        self.zero: Vec = (0,) * n
        self._steps = 0
        self._images_cache: dict = {}
        self._image_powers: dict = {}
        self._power_vecs: dict = {}
        self._fixed: dict = {}

    # ----------------------------------------------------------------- public

    def collect(self, word) -> Vec:
        self._steps = 0
        x = self.zero
        for k, e in word:
            x = self._mgp(x, k - 1, e)
        return x

    def mul(self, x: Vec, y: Vec) -> Vec:
        self._steps = 0
        return self._mul(x, y)

    def inv(self, x: Vec) -> Vec:
        self._steps = 0
        return self._inv(x)

    def pow(self, x: Vec, e: int) -> Vec:
        self._steps = 0
        return self._pow(x, e)

    def conj(self, x: Vec, y: Vec) -> Vec:
        """``y^-1 x y``."""
        self._steps = 0
        return self._mul(self._inv(y), self._mul(x, y))

    def mul_gen(self, x: Vec, k: int, e: int) -> Vec:
        """``x * g_k^e`` with 0-based ``k``."""
        self._steps = 0
        return self._mgp(x, k, e)

    @property
    def steps(self) -> int:
        return self._steps

    # --------------------------------------------------------------- internal

    def _tick(self):
        self._steps += 1
        if self._steps > self.budget:
            raise BudgetExceeded(
                f"collection exceeded {self.budget} rewrite steps in {self.pres.name or 'presentation'}"
            )

    def _mgp(self, x: Vec, i: int, a: int) -> Vec:
        if a == 0:
            return x
        self._tick()
        e = x[i] + a
        r = self.rel[i]
        extra = None
        if r:
            q, e = divmod(e, r)
            if q:
                extra = self._pow(self._power_vec(i), q)
        j = i + 1
        tail = x[j:]
        if not any(tail):
            if extra is None:
                return x[:i] + (e,) + tail
            return x[:i] + (e,) + extra[j:]
        fixed = self._fixed.get(i)
        if fixed is None:
            fixed = self._fixed_by(i)
        if all(fixed[k] for k, c in enumerate(tail, j) if c):
            # g_i commutes with every generator in the tail
            moved = self.zero[:j] + tail
        else:
            moved = self._apply(i, self._images(i, a), self.zero[:j] + tail)
        if extra is not None:
            moved = self._mul(extra, moved)
        return x[:i] + (e,) + moved[j:]

    def _mul(self, x: Vec, y: Vec) -> Vec:
        n = self.n
        f = 0
        while f < n and not y[f]:
            f += 1
        if f == n:
            return x
        if not any(x[f + 1:]):
            s = x[f] + y[f]
            r = self.rel[f]
            if not r or 0 <= s < r:
                return x[:f] + (s,) + y[f + 1:]
        for j in range(f, n):
            if y[j]:
                x = self._mgp(x, j, y[j])
        return x

    def _inv(self, x: Vec) -> Vec:
        r = self.zero
        for k in range(self.n - 1, -1, -1):
            if x[k]:
                r = self._mgp(r, k, -x[k])
        return r

    def _pow(self, x: Vec, e: int) -> Vec:
        if e == 0:
            return self.zero
        if e == 1:
            return x
        if e < 0:
            x, e = self._inv(x), -e
            if e == 1:
                return x
        nz = [k for k, v in enumerate(x) if v]
        if not nz:
            return x
        if len(nz) == 1:
            k = nz[0]
            return self._mgp(self.zero, k, x[k] * e)
        result = None
        base = x
        while True:
            if e & 1:
                result = base if result is None else self._mul(result, base)
            e >>= 1
            if not e:
                return result
            base = self._mul(base, base)

    def _fixed_by(self, i: int):
        """Flags for generators ``g_j`` (j > i) that commute with ``g_i``."""
        pos, neg = self._images(i, 1), self._images(i, -1)
        flags = [False] * self.n
        for k in range(i + 1, self.n):
            unit = self.zero[:k] + (1,) + self.zero[k + 1:]
            flags[k] = pos[k] == unit and neg[k] == unit
        self._fixed[i] = flags
        return flags

    def _power_vec(self, i: int) -> Vec:
        v = self._power_vecs.get(i)
        if v is None:
            v = self.zero
            for k, e in self.pres.powers.get(i + 1, ()):
                v = self._mgp(v, k - 1, e)
            self._power_vecs[i] = v
        return v

    def _apply(self, i: int, images, z: Vec) -> Vec:
        """Image of ``z`` (supported on generators > i) under an automorphism
        given by generator ``images``."""
        result = None
        powers = self._image_powers
        for j in range(i + 1, self.n):
            c = z[j]
            if c:
                key = (id(images), j, c)
                p = powers.get(key)
                if p is None:
                    p = self._pow(images[j], c)
                    if len(powers) > _CACHE_LIMIT:
                        powers.clear()
                    powers[key] = p
                result = p if result is None else self._mul(result, p)
        return self.zero if result is None else result

    def _images(self, i: int, a: int):
        """Images of ``g_j`` (j > i) under conjugation by ``g_i^a``."""
        key = (i, a)
        cached = self._images_cache.get(key)
        if cached is not None:
            return cached
        if a == 1 or a == -1:
            rels = self.pres.conj_pos if a == 1 else self.pres.conj_neg
            images = [None] * self.n
            for j in range(i + 1, self.n):
                word = rels.get((i + 1, j + 1))
                if word is None:
                    images[j] = self.zero[:j] + (1,) + self.zero[j + 1:]
                else:
                    v = self.zero
                    for k, e in word:
                        v = self._mgp(v, k - 1, e)
                    images[j] = v
        else:
            s = 1 if a > 0 else -1
            m = abs(a)
            if m % 2 == 0:
                first = second = self._images(i, s * (m // 2))
            else:
                first, second = self._images(i, s * (m - 1)), self._images(i, s)
            # g^(a) = g^(b) g^(c): conjugating by g^b then g^c
            images = [None] * self.n
            for j in range(i + 1, self.n):
                images[j] = self._apply(i, second, first[j])
        if len(self._images_cache) > _CACHE_LIMIT:
            # power memo is keyed on id() of cached image tuples
            self._images_cache.clear()
            self._image_powers.clear()
        images = tuple(images)
        self._images_cache[key] = images
        return images
