"""Split lattice sequences, the filtration a_n, duality and the doubling construction.

A lattice sequence in diagonal form is ``Lambda(k) = sum_j p^{mu(j, k)} e_j``
with ``mu(j, k)`` nondecreasing in ``k`` and ``mu(j, k + e) = mu(j, k) + 1``.
Only the exponents over one period are stored.

Forms are *monomial*: ``h(e_i, e_pi(i))`` has valuation ``alpha_i`` and all
other pairings vanish, for an involutive permutation ``pi``.  A diagonal form
is the case ``pi = id``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BasisMismatch, InputError, InvalidLatticeSequence, NotInNormalizer, NotSelfDual


@dataclass(frozen=True)
class LatticeSequence:
    e: int
    mu: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mu = tuple(tuple(int(x) for x in row) for row in self.mu)
        object.__setattr__(self, "mu", mu)
        if self.e < 1:
            raise InvalidLatticeSequence("period must be positive")
        for j, row in enumerate(mu):
            if len(row) != self.e:
                raise InvalidLatticeSequence(f"row {j} has {len(row)} entries, period is {self.e}")
            for k in range(self.e):
                nxt = row[k + 1] if k + 1 < self.e else row[0] + 1
                if nxt < row[k]:
                    raise InvalidLatticeSequence(f"row {j} decreases at k={k}: sequence must be decreasing as lattices")

    @property
    def dim(self) -> int:
        return len(self.mu)

    def exponent(self, j: int, k: int) -> int:
        q, r = divmod(k, self.e)
        return self.mu[j][r] + q

    def lattice(self, k: int) -> tuple[int, ...]:
        return tuple(self.exponent(j, k) for j in range(self.dim))

    def shifted(self, s: int) -> "LatticeSequence":
        """The sequence k -> Lambda(k + s)."""
        return LatticeSequence(self.e, tuple(tuple(self.exponent(j, k + s) for k in range(self.e)) for j in range(self.dim)))

    def quotient_dims(self) -> list[int]:
        """dim_k Lambda(i)/Lambda(i+1) for i over one period."""
        return [sum(self.exponent(j, i + 1) - self.exponent(j, i) for j in range(self.dim)) for i in range(self.e)]

    def to_json(self) -> dict:
        return {"e": self.e, "mu": [list(r) for r in self.mu]}

    @classmethod
    def from_json(cls, data: dict) -> "LatticeSequence":
        if set(data) - {"e", "mu"}:
            raise InputError(f"unknown lattice fields {sorted(set(data) - {'e', 'mu'})}")
        return cls(int(data["e"]), tuple(tuple(r) for r in data["mu"]))


def standard_chain(N: int) -> LatticeSequence:
    """The Iwahori chain: Lambda(k) has exponent ceil((k - j)/N) on e_j."""
    return LatticeSequence(N, tuple(tuple(-(-(k - j) // N) for k in range(N)) for j in range(N)))


# -- filtration ------------------------------------------------------------------------


def a_n(L: LatticeSequence, n: int) -> list[list[int]]:
    """Bounds m with a_n(Lambda) = {a : val(a_ij) >= m_ij}."""
    N = L.dim
    return [[max(L.exponent(i, k + n) - L.exponent(j, k) for k in range(L.e)) for j in range(N)] for i in range(N)]


def in_a_n(vals, L: LatticeSequence, n: int) -> bool:
    """Membership of a matrix given by entry valuations (None for zero entries)."""
    bounds = a_n(L, n)
    return all(v is None or v >= b for row, brow in zip(vals, bounds) for v, b in zip(row, brow))


def min_plus(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    n = len(A)
    return [[min(A[i][k] + B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def nu_lambda(L: LatticeSequence, g) -> int:
    """n with g Lambda(k) = Lambda(k + n) for a diagonal g given by entry valuations."""
    v = list(g)
    if len(v) != L.dim:
        raise BasisMismatch("diagonal element has the wrong size")
    lo = L.e * (min(v) - 2) if v else 0
    hi = L.e * (max(v) + 2) if v else 0
    for n in range(lo, hi + 1):
        if all(L.exponent(j, k) + v[j] == L.exponent(j, k + n) for j in range(L.dim) for k in range(L.e)):
            return n
    raise NotInNormalizer("g does not map the sequence onto a translate of itself")


# -- forms and duality -----------------------------------------------------------------


@dataclass(frozen=True)
class MonomialForm:
    perm: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if len(self.alpha) != n or sorted(self.perm) != list(range(n)):
            raise InputError("perm must be a permutation matching alpha")
        for i in range(n):
            if self.perm[self.perm[i]] != i:
                raise InputError("perm must be an involution")
            if self.alpha[i] != self.alpha[self.perm[i]]:
                raise InputError("paired basis vectors must have equal valuations")

    @property
    def dim(self) -> int:
        return len(self.perm)

    @classmethod
    def diagonal(cls, alpha) -> "MonomialForm":
        alpha = tuple(alpha)
        return cls(tuple(range(len(alpha))), alpha)

    @classmethod
    def from_form(cls, form) -> "MonomialForm":
        """A diagonal FormDescriptor (no hyperbolic planes) as a monomial form."""
        if getattr(form, "hyperbolic", 0):
            raise BasisMismatch("expand hyperbolic planes before pairing with a split basis")
        return cls.diagonal(tuple(x.val for x in form.diag))

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "alpha": list(self.alpha)}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialForm":
        if "perm" not in data:
            return cls.diagonal(tuple(data["alpha"]))
        return cls(tuple(data["perm"]), tuple(data["alpha"]))


def _as_monomial(h) -> MonomialForm:
    return h if isinstance(h, MonomialForm) else MonomialForm.from_form(h)


def dual_lattice(l, h) -> tuple[int, ...]:
    """Exponents of L# = {v : h(v, L) in p} for L = sum p^{l_i} e_i."""
    h = _as_monomial(h)
    if len(l) != h.dim:
        raise BasisMismatch("lattice and form have different dimensions")
    return tuple(1 - h.alpha[i] - l[h.perm[i]] for i in range(h.dim))


def contains(l, m) -> bool:
    """L contains M (exponentwise l <= m)."""
    return all(a <= b for a, b in zip(l, m))


def is_self_dual(L: LatticeSequence, h) -> int | None:
    """The witness d with Lambda(d - k) = Lambda(k)# for all k, or None."""
    h = _as_monomial(h)
    if h.dim != L.dim:
        raise BasisMismatch("lattice sequence and form have different dimensions")
    if L.dim == 0:
        return 0
    target = 1 - h.alpha[0] - L.exponent(h.perm[0], 0)
    # exponent(0, d) is nondecreasing in d and grows by one per period
    lo = L.e * (target - L.mu[0][0] - 2)
    hi = L.e * (target - L.mu[0][0] + 2)
    for d in range(lo, hi + 1):
        if L.exponent(0, d) != target:
            continue
        if all(
            L.exponent(i, d - k) == 1 - h.alpha[i] - L.exponent(h.perm[i], k)
            for i in range(L.dim)
            for k in range(L.e)
        ):
            return d
    return None


def is_regular(L: LatticeSequence) -> bool:
    return len(set(L.quotient_dims())) == 1


def is_vertex(l, h) -> bool:
    """pi L# is strictly inside L, and L is inside L#."""
    ld = dual_lattice(l, h)
    pild = tuple(x + 1 for x in ld)
    return contains(ld, l) and contains(l, pild) and tuple(l) != pild


def dagger(L: LatticeSequence, h) -> tuple[LatticeSequence, MonomialForm]:
    """Sum of 2e shifts of a self-dual sequence with the anti-diagonal form.

    Block ``e-1-s`` carries Lambda(k - s) and block ``e+s`` carries
    Lambda(k + s), for s = 0..e-1; block b of the new form pairs with block
    2e-1-b.  The result is self-dual (same witness) and regular.
    """
    h = _as_monomial(h)
    d = is_self_dual(L, h)
    if d is None:
        raise NotSelfDual("the sequence is not self-dual for this form")
    e, N = L.e, L.dim
    blocks = [None] * (2 * e)
    for s in range(e):
        blocks[e - 1 - s] = L.shifted(-s)
        blocks[e + s] = L.shifted(s)
    mu = tuple(row for blk in blocks for row in blk.mu)
    perm = tuple((2 * e - 1 - b) * N + h.perm[i] for b in range(2 * e) for i in range(N))
    alpha = tuple(h.alpha[i] for b in range(2 * e) for i in range(N))
    return LatticeSequence(e, mu), MonomialForm(perm, alpha)


# -- random generation (for property tests and the acceptance suite) ---------------------


def random_sequence(N: int, e: int, rng: random.Random) -> LatticeSequence:
    rows = []
    for _ in range(N):
        base = rng.randrange(-2, 3)
        jumps = sorted(rng.randrange(e) for _ in range(rng.randrange(0, 2)))
        row = [base + sum(1 for j in jumps if j < k) for k in range(e)]
        if row[-1] > row[0] + 1:  # pragma: no cover
            row = [base] * e
        rows.append(tuple(row))
    return LatticeSequence(e, tuple(rows))


def random_self_dual(N: int, e: int, rng: random.Random) -> tuple[LatticeSequence, MonomialForm, int]:
    """A random self-dual split sequence with a random monomial form and its witness.

    Paired basis vectors get a random sequence and its dual partner.  A fixed
    basis vector gets mu(k) = ceil((k - c)/e) with 2c = d - 1 + alpha*e, which
    forces the parity of d - 1 + alpha*e.
    """
    idx = list(range(N))
    rng.shuffle(idx)
    perm = list(range(N))
    i = 0
    while i + 1 < N:
        if rng.random() < 0.5:
            a, b = idx[i], idx[i + 1]
            perm[a], perm[b] = b, a
            i += 2
        else:
            i += 1
    fixed = [a for a in range(N) if perm[a] == a]
    d = rng.randrange(-e, e + 1)
    if fixed and e % 2 == 0 and d % 2 == 0:
        d += 1
    alpha = [0] * N
    mu: list = [None] * N
    for a in range(N):
        if perm[a] == a:
            alpha[a] = (d - 1) % 2 if e % 2 else rng.randrange(0, 2)
            c = (d - 1 + alpha[a] * e) // 2
            mu[a] = tuple(-(-(k - c) // e) for k in range(e))
        elif perm[a] > a:
            b = perm[a]
            alpha[a] = alpha[b] = rng.randrange(0, 2)
            row = random_sequence(1, e, rng)
            mu[a] = row.mu[0]
            mu[b] = tuple(1 - alpha[a] - row.exponent(0, d - m) for m in range(e))
    return LatticeSequence(e, tuple(mu)), MonomialForm(tuple(perm), tuple(alpha)), d
