"""Exact cohomology of irreducible homogeneous bundles on P^n.

An irreducible homogeneous bundle is encoded by its Levi weight: a pair
``(lam, t)`` where ``lam`` is a non-increasing integer vector of length n
acting on the tautological quotient bundle Q, and ``t`` is an integer twist
normalised so that O(1) is ``(0,...,0 | -1)``.  Concretely the bundle is
S_lam(Q) tensored with O(-t).  Anchors for the convention:

>>> bott_cohomology(line_bundle(2, 3)).dims()
{0: 10}
>>> bott_cohomology(tangent_bundle(2)).dims()
{0: 8}
>>> bott_cohomology(LeviWeight(3, (0, 0, -1), 1)).dims()   # 1-forms on P^3
{1: 1}

Cohomology is concentrated in at most one degree: append ``t`` to ``lam``,
add the staircase vector ``rho = (n, ..., 1, 0)``, and either two entries
collide (no cohomology at all) or the number of inversions needed to sort
the result strictly decreasing is the one degree carrying sections, whose
dimension is a Weyl dimension.  All arithmetic is exact; dimensions are
plain Python integers of unbounded size.

Every function here is pure and every value immutable, so the module is
safe to use from concurrent code without locking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations


@dataclass(frozen=True)
class LeviWeight:
    """Weight data (lam on Q, twist t) of an irreducible bundle on P^n."""

    n: int
    lam: tuple[int, ...]
    t: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ambient P^n needs n >= 1, got n={self.n}")
        if len(self.lam) != self.n:
            raise ValueError(
                f"weight vector has length {len(self.lam)}, expected n={self.n}"
            )
        if any(a < b for a, b in zip(self.lam, self.lam[1:])):
            raise ValueError(f"weight vector {self.lam} is not non-increasing")

    def literal(self):
        """Render in the CLI/JSON literal syntax, e.g. ``"1,0|-1"``."""
        return ",".join(str(a) for a in self.lam) + "|" + str(self.t)


def parse_weight(text):
    """Parse a weight literal ``"lam_1,...,lam_n|t"`` into a LeviWeight.

    >>> parse_weight("1,0|-1") == tangent_bundle(2)
    True
    """
    body, sep, tail = text.partition("|")
    if not sep:
        raise ValueError(f"weight literal {text!r} is missing the '|t' part")
    try:
        lam = tuple(int(tok) for tok in body.split(","))
        t = int(tail)
    except ValueError:
        raise ValueError(f"weight literal {text!r} has a non-integer token") from None
    return LeviWeight(len(lam), lam, t)


def structure_sheaf(n):
    return LeviWeight(n, (0,) * n, 0)


def line_bundle(n, k):
    """O(k) on P^n."""
    return LeviWeight(n, (0,) * n, -k)


def tangent_bundle(n):
    """Theta = Q(1) on P^n."""
    return LeviWeight(n, (1,) + (0,) * (n - 1), -1)


@dataclass(frozen=True)
class HomogeneousBundle:
    """Formal direct sum of Levi weights on a common P^n (possibly empty)."""

    summands: tuple[LeviWeight, ...]

    def __post_init__(self):
        ns = {w.n for w in self.summands}
        if len(ns) > 1:
            raise ValueError(f"summands live on different spaces: n in {sorted(ns)}")
        ordered = tuple(sorted(self.summands, key=lambda w: (w.lam, w.t)))
        object.__setattr__(self, "summands", ordered)

    def is_zero(self):
        return not self.summands

    def rank(self):
        return sum(levi_rank(w) for w in self.summands)


@dataclass(frozen=True)
class CohomologyTable:
    """Map from cohomological degree to exact dimension; zeros omitted."""

    entries: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, dims):
        for deg, dim in dims.items():
            if deg < 0 or dim < 0:
                raise ValueError(f"bad table entry h^{deg} = {dim}")
        return cls(tuple(sorted((d, v) for d, v in dims.items() if v)))

    def dims(self):
        return dict(self.entries)

    def get(self, degree):
        return dict(self.entries).get(degree, 0)

    def euler(self):
        return sum((-1) ** deg * dim for deg, dim in self.entries)

    def reflect(self, top):
        """The table read backwards from degree ``top`` (Serre reflection)."""
        return CohomologyTable.from_dict({top - d: v for d, v in self.entries})

    def max_degree(self):
        return max((d for d, _ in self.entries), default=0)

    def is_zero(self):
        return not self.entries

    def __add__(self, other):
        dims = dict(self.entries)
        for deg, dim in other.entries:
            dims[deg] = dims.get(deg, 0) + dim
        return CohomologyTable.from_dict(dims)


EMPTY_TABLE = CohomologyTable(())


def weyl_dim(mu):
    """Dimension of the GL(len(mu)) representation with highest weight mu.

    The product of (mu_i - mu_j + j - i)/(j - i) over i < j; evaluated as an
    exact rational that must reduce to an integer.
    """
    acc = Fraction(1)
    for i, j in combinations(range(len(mu)), 2):
        acc *= Fraction(mu[i] - mu[j] + j - i, j - i)
    if acc.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {mu} is not integral: {acc}")
    return int(acc)


def levi_rank(w):
    """Fibre rank of the bundle, the Weyl dimension of lam over GL(n)."""
    return weyl_dim(w.lam)


@lru_cache(maxsize=None)
def bott_cohomology(w):
    """Full cohomology table of a LeviWeight; at most one degree is nonzero."""
    alpha = w.lam + (w.t,)
    rho = tuple(range(w.n, -1, -1))
    beta = tuple(a + r for a, r in zip(alpha, rho))
    if len(set(beta)) < len(beta):
        return EMPTY_TABLE
    inversions = sum(
        1 for i, j in combinations(range(len(beta)), 2) if beta[i] < beta[j]
    )
    mu = tuple(b - r for b, r in zip(sorted(beta, reverse=True), rho))
    return CohomologyTable.from_dict({inversions: weyl_dim(mu)})


def cohomology_sum(bundle):
    """Degree-wise sum of bott_cohomology over the summands."""
    table = EMPTY_TABLE
    for w in bundle.summands:
        table = table + bott_cohomology(w)
    return table


def twist(w, m):
    """Tensor with O(m): the twist convention stores O(1) at t = -1."""
    return LeviWeight(w.n, w.lam, w.t - m)


def dual(w):
    """The dual bundle: reverse and negate lam, negate t."""
    return LeviWeight(w.n, tuple(-a for a in reversed(w.lam)), -w.t)


def serre_dual(w):
    """Weight of w-dual tensored with the canonical bundle O(-n-1)."""
    return twist(dual(w), -(w.n + 1))


def normalize(w):
    """Shift lam so its last entry is 0, absorbing the determinant into t.

    ``(lam + c, t + c)`` and ``(lam, t)`` name the same bundle because the
    determinant of Q is O(1); the normal form makes such pairs comparable.
    """
    c = w.lam[-1]
    return LeviWeight(w.n, tuple(a - c for a in w.lam), w.t - c)


def sym_power_decompose(power, n):
    """Sym^l of (O + Theta) on P^n, as the sum of Sym^a Theta for a <= l."""
    if power < 0:
        raise ValueError(f"symmetric power must be >= 0, got {power}")
    parts = []
    for a in range(power + 1):
        lam = (a,) + (0,) * (n - 1) if n > 1 else (a,)
        parts.append(LeviWeight(n, lam, -a))
    return HomogeneousBundle(tuple(parts))


def exterior_power_theta(p, n):
    """Wedge^p Theta = Wedge^p Q tensor O(p), as a LeviWeight."""
    if not 0 <= p <= n:
        raise ValueError(f"wedge power p={p} out of range 0..{n}")
    return LeviWeight(n, (1,) * p + (0,) * (n - p), -p)


def form_bundle(p, n):
    """Omega^p on P^n, derived as Wedge^(n-p) Theta tensor O(-n-1)."""
    return twist(exterior_power_theta(n - p, n), -(n + 1))


def tensor_with_sym(w, a):
    """Decompose (Sym^a Theta) tensor w into irreducibles.

    Horizontal-strip Pieri rule on the Q-weight, with the twist bookkeeping
    Sym^a Theta = Sym^a Q tensor O(a).
    """
    if a < 0:
        raise ValueError(f"symmetric power must be >= 0, got {a}")
    n, lam = w.n, w.lam
    results = []

    def grow(i, prefix, remaining):
        if i == n:
            if remaining == 0:
                results.append(LeviWeight(n, tuple(prefix), w.t - a))
            return
        low = lam[i]
        high = lam[i - 1] if i else lam[0] + remaining
        high = min(high, lam[i] + remaining)
        for mu_i in range(low, high + 1):
            grow(i + 1, prefix + [mu_i], remaining - (mu_i - lam[i]))

    grow(0, [], a)
    return HomogeneousBundle(tuple(results))
