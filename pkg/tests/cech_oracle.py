"""Independent Cech cohomology oracle for small projective spaces.

Dimensions h^i(P^n, F) are computed from the standard (n+1)-chart affine
cover by exact integer linear algebra on Laurent-monomial blocks.  Supported
sheaves:

  * line bundles O(d),
  * twisted tangent bundles Theta(m), resolved by the Euler inclusion
        0 -> O(m) -> O(m+1)^(n+1) -> Theta(m) -> 0,
  * twisted p-form bundles Omega^p(k), resolved by the spliced Euler-Koszul
    complex
        0 -> Omega^p(k) -> Wedge^p(O(-1)^(n+1))(k) -> ... -> O(k) -> 0.

Everything is spelled out at the level of monomials, cofaces and integer
matrix ranks.  No weight sorting, no dimension formulas, no duality tricks:
this file must stay independent of the package under test so that agreement
between the two is meaningful.  Intended for n <= 2; cost grows quickly in n.
"""

from functools import lru_cache
from itertools import combinations
from math import gcd


# ---------------------------------------------------------------------------
# integer linear algebra


def matrix_rank(rows):
    """Rank over Q of an integer matrix (list of equal-length lists)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pr = m[row]
        for i in range(row + 1, len(m)):
            if m[i][col]:
                a, b = pr[col], m[i][col]
                m[i] = [a * x - b * y for x, y in zip(m[i], pr)]
                g = 0
                for x in m[i]:
                    g = gcd(g, x)
                if g > 1:
                    m[i] = [x // g for x in m[i]]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


# ---------------------------------------------------------------------------
# multidegree enumeration


def _compositions(total, length):
    if total < 0:
        return
    if length == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, length - 1):
            yield (head,) + rest


def regular_multidegrees(d, n):
    """Exponent vectors a >= 0 of degree d (the monomial basis of H^0(O(d)))."""
    yield from _compositions(d, n + 1)


def irregular_multidegrees(d, n):
    """Exponent vectors with every entry <= -1 and total degree d."""
    for b in _compositions(-d - (n + 1), n + 1):
        yield tuple(-x - 1 for x in b)


def negativity_pattern(a):
    return frozenset(i for i, ai in enumerate(a) if ai < 0)


# ---------------------------------------------------------------------------
# monomial-map complexes of line bundles


class MonomialMapComplex:
    """Bounded complex of direct sums of line bundles with monomial maps.

    ``levels`` maps a homological degree to the list of twists of the line
    bundle summands sitting there.  ``arrows`` maps a degree to a dict
    ``{(u, v): [(coeff, shift), ...]}`` describing the map from summand u at
    that degree to summand v one degree up; ``shift`` is the exponent vector
    of the monomial.  ``hypercohomology`` returns H^* of the total Cech
    complex, which equals H^*(P^n, F) whenever the sheaf complex is a right
    resolution of F placed so that F sits in degree 0.
    """

    def __init__(self, n, levels, arrows=None):
        self.n = n
        self.levels = {lvl: tuple(tw) for lvl, tw in levels.items()}
        self.arrows = {lvl: dict(mp) for lvl, mp in (arrows or {}).items()}
        for lvl, mp in self.arrows.items():
            for (u, v), entries in mp.items():
                for _, shift in entries:
                    if min(shift) < 0:
                        raise ValueError("monomial shifts must be effective")
                    if sum(shift) != self.levels[lvl + 1][v] - self.levels[lvl][u]:
                        raise ValueError("arrow degree mismatch")

    # -- block structure -----------------------------------------------------

    def _seeds(self):
        for lvl, twists in self.levels.items():
            for u, d in enumerate(twists):
                yield from ((lvl, u, a) for a in regular_multidegrees(d, self.n))
                yield from ((lvl, u, a) for a in irregular_multidegrees(d, self.n))

    def _neighbours(self, vert):
        lvl, u, a = vert
        for (src, dst), entries in self.arrows.get(lvl, {}).items():
            if src == u:
                for _, shift in entries:
                    yield (lvl + 1, dst, tuple(x + s for x, s in zip(a, shift)))
        for (src, dst), entries in self.arrows.get(lvl - 1, {}).items():
            if dst == u:
                for _, shift in entries:
                    yield (lvl - 1, src, tuple(x - s for x, s in zip(a, shift)))

    def _blocks(self):
        visited = set()
        for seed in self._seeds():
            if seed in visited:
                continue
            block = set()
            stack = [seed]
            while stack:
                v = stack.pop()
                if v in block:
                    continue
                block.add(v)
                stack.extend(w for w in self._neighbours(v) if w not in block)
            visited |= block
            yield sorted(block)

    # -- per-block total complex ----------------------------------------------

    def _block_cohomology(self, block):
        charts = range(self.n + 1)
        basis = {}
        for vert in block:
            lvl, _, a = vert
            pattern = negativity_pattern(a)
            for size in range(max(1, len(pattern)), self.n + 2):
                for s in combinations(charts, size):
                    if pattern <= set(s):
                        total = lvl + size - 1
                        basis.setdefault(total, []).append((vert, s))
        def differential(elem):
            (lvl, u, a), s = elem
            out = []
            for x in charts:
                if x in s:
                    continue
                t = tuple(sorted(s + (x,)))
                sign = (-1) ** t.index(x)
                out.append((((lvl, u, a), t), sign))
            koszul_sign = (-1) ** (len(s) - 1)
            for (src, dst), entries in self.arrows.get(lvl, {}).items():
                if src != u:
                    continue
                for coeff, shift in entries:
                    target = (lvl + 1, dst, tuple(x + d for x, d in zip(a, shift)))
                    out.append(((target, s), koszul_sign * coeff))
            return out

        ranks = {}
        for deg, elems in basis.items():
            above = basis.get(deg + 1, [])
            if not above:
                ranks[deg] = 0
                continue
            col = {elem: i for i, elem in enumerate(above)}
            rows = []
            for elem in elems:
                row = [0] * len(above)
                for target, coeff in differential(elem):
                    if target in col:
                        row[col[target]] += coeff
                rows.append(row)
            ranks[deg] = matrix_rank(rows)

        result = {}
        for deg, elems in basis.items():
            h = len(elems) - ranks.get(deg, 0) - ranks.get(deg - 1, 0)
            if h:
                result[deg] = h
        return result

    def hypercohomology(self):
        total = {}
        for block in self._blocks():
            for deg, h in self._block_cohomology(block).items():
                total[deg] = total.get(deg, 0) + h
        return {deg: h for deg, h in sorted(total.items()) if h}


# ---------------------------------------------------------------------------
# the resolutions used by the agreement tests


@lru_cache(maxsize=None)
def line_bundle_cohomology(n, d):
    """h^i(P^n, O(d)) as a dict, zero entries omitted."""
    return MonomialMapComplex(n, {0: [d]}).hypercohomology()


@lru_cache(maxsize=None)
def tangent_twist_cohomology(n, m):
    """h^i(P^n, Theta(m)) via the Euler inclusion O(m) -> O(m+1)^(n+1)."""
    unit = [0] * (n + 1)
    arrows = {}
    for i in range(n + 1):
        shift = tuple(unit[:i] + [1] + unit[i + 1 :])
        arrows[(0, i)] = [(1, shift)]
    cplx = MonomialMapComplex(n, {-1: [m], 0: [m + 1] * (n + 1)}, {-1: arrows})
    return cplx.hypercohomology()


@lru_cache(maxsize=None)
def form_twist_cohomology(n, p, k):
    """h^i(P^n, Omega^p(k)) via the spliced Euler-Koszul right resolution."""
    if not 0 <= p <= n:
        raise ValueError(f"p={p} out of range for P^{n}")
    if p == 0:
        return line_bundle_cohomology(n, k)
    charts = range(n + 1)
    levels = {}
    comps = {}
    for r in range(p + 1):
        comps[r] = list(combinations(charts, p - r))
        levels[r] = [k - (p - r)] * len(comps[r])
    arrows = {}
    for r in range(p):
        mp = {}
        tgt_index = {s: i for i, s in enumerate(comps[r + 1])}
        for u, s in enumerate(comps[r]):
            for pos, i in enumerate(s):
                shift = tuple(1 if c == i else 0 for c in charts)
                reduced = tuple(x for x in s if x != i)
                mp[(u, tgt_index[reduced])] = [((-1) ** pos, shift)]
        arrows[r] = mp
    return MonomialMapComplex(n, levels, arrows).hypercohomology()
