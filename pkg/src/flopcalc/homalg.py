"""Exact-sequence dimension chasing and Ext computations against the ideal.

The proof engine is ``chase_solve``: given the terms of an exact complex
with some dimensions unknown, it iterates two inference rules to a fixpoint,

  (a) a term whose two neighbours are zero is itself zero;
  (b) in a maximal segment strictly between two zero terms, a single
      unknown is forced by the vanishing of the alternating dimension sum;

and raises ``ChaseInconsistencyError`` when a fully-known zero-flanked
segment has nonzero alternating sum.  Connecting-map ranks are never
guessed, so a system can legitimately come back underdetermined; callers
must treat unsolved labels as unknown rather than zero.

On top of the solver this module assembles:

  * the Koszul resolution of the ideal sheaf of the flopped centre, with
    terms O(-p) (x) pi^* Wedge^p Theta for p = n down to 1;
  * the Ext table of the structure sheaf of the centre against itself,
    through the degenerate local-to-global spectral sequence whose second
    page is h^p(P^n, Omega^q);
  * Ext groups of the Koszul terms against the ideal sheaf, by chasing the
    restriction sequence of each term's dual;
  * the self-Ext of the ideal sheaf in degree 2 at n = 2, the quantity
    separating the two pushpull functors.

>>> sys = ChaseSystem("doc", (ChaseTerm("0l", 0), ChaseTerm("A", None),
...                           ChaseTerm("B", 5), ChaseTerm("0r", 0)))
>>> chase_solve(sys).values["A"]
5
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bwb import (
    CohomologyTable,
    LeviWeight,
    bott_cohomology,
    exterior_power_theta,
    form_bundle,
    levi_rank,
    line_bundle,
    structure_sheaf,
)
from .pbundle import ModelVariety, Side, XLineBundle, cohomology_with_pullback_twist, cohomology_X


class ChaseInconsistencyError(Exception):
    """The input dimensions violate exactness; an upstream value is wrong."""


class ChaseUnderdeterminedError(Exception):
    """A value the caller needs was not forced by the chase."""


class DegeneracyUnjustifiedError(Exception):
    """Off-diagonal second-page entries are nonzero, so the degeneration
    argument behind the Ext table does not apply."""


@dataclass(frozen=True)
class ChaseTerm:
    label: str
    dim: int | None  # None marks an unknown dimension

    def __post_init__(self):
        if self.dim is not None and self.dim < 0:
            raise ValueError(f"term {self.label} has negative dimension {self.dim}")


@dataclass(frozen=True)
class ChaseSystem:
    """An ordered exact complex; zero objects are terms with dim 0."""

    name: str
    terms: tuple[ChaseTerm, ...]

    def __post_init__(self):
        labels = [t.label for t in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in system {self.name!r}")

    def with_dim(self, label, dim):
        """Copy of the system with one term's dimension replaced."""
        terms = tuple(
            ChaseTerm(t.label, dim) if t.label == label else t for t in self.terms
        )
        return ChaseSystem(self.name, terms)


@dataclass(frozen=True)
class ChaseSolution:
    system: ChaseSystem
    values: dict
    unsolved: tuple[str, ...]
    trace: tuple[tuple[str, str, int], ...]

    @property
    def fully_solved(self):
        return not self.unsolved

    def require(self, label):
        if label in self.values and self.values[label] is not None:
            return self.values[label]
        raise ChaseUnderdeterminedError(
            f"{self.system.name}: the chase does not determine {label!r}"
        )


def _segments(labels, values):
    """Maximal runs of labels strictly between two known-zero terms."""
    zero_at = [i for i, lab in enumerate(labels) if values[lab] == 0]
    runs = []
    for left, right in zip(zero_at, zero_at[1:]):
        if right - left > 1:
            runs.append(labels[left + 1 : right])
    return runs


def chase_solve(system, reverse=False):
    """Propagate exactness constraints to a fixpoint.

    ``reverse=True`` processes rules and segments right to left; the
    fixpoint must not depend on the order, which tests assert.
    """
    labels = [t.label for t in system.terms]
    values = {t.label: t.dim for t in system.terms}
    trace = []

    def check_consistency():
        for seg in _segments(labels, values):
            if any(values[lab] is None for lab in seg):
                continue
            total = sum((-1) ** i * values[lab] for i, lab in enumerate(seg))
            if total != 0:
                raise ChaseInconsistencyError(
                    f"{system.name}: zero-flanked segment {seg} has alternating "
                    f"sum {total}, exactness fails"
                )

    changed = True
    while changed:
        changed = False
        check_consistency()

        order = range(len(labels))
        if reverse:
            order = reversed(order)
        for i in order:
            lab = labels[i]
            if values[lab] is not None:
                continue
            left_zero = i > 0 and values[labels[i - 1]] == 0
            right_zero = i + 1 < len(labels) and values[labels[i + 1]] == 0
            if left_zero and right_zero:
                values[lab] = 0
                trace.append((lab, "flanked-by-zeros", 0))
                changed = True

        segs = _segments(labels, values)
        if reverse:
            segs = list(reversed(segs))
        for seg in segs:
            open_labels = [lab for lab in seg if values[lab] is None]
            if len(open_labels) != 1:
                continue
            lab = open_labels[0]
            pos = seg.index(lab)
            rest = sum(
                (-1) ** i * values[l] for i, l in enumerate(seg) if l != lab
            )
            solved = -rest if pos % 2 == 0 else rest
            if solved < 0:
                raise ChaseInconsistencyError(
                    f"{system.name}: segment {seg} forces {lab} = {solved} < 0"
                )
            values[lab] = solved
            trace.append((lab, "alternating-sum", solved))
            changed = True

    check_consistency()
    unsolved = tuple(lab for lab in labels if values[lab] is None)
    return ChaseSolution(system, values, unsolved, tuple(trace))


# ---------------------------------------------------------------------------
# Koszul resolution of the ideal sheaf of the flopped centre


@dataclass(frozen=True)
class KoszulTerm:
    """O_X(-p) (x) pi^* Wedge^p Theta, the p-th term of the resolution."""

    p: int
    line_class: XLineBundle
    theta_wedge: LeviWeight

    @property
    def rank(self):
        return levi_rank(self.theta_wedge)


@dataclass(frozen=True)
class KoszulResolution:
    n: int
    terms: tuple[KoszulTerm, ...]  # ordered p = n down to 1

    def __post_init__(self):
        if len(self.terms) != self.n:
            raise ValueError(f"expected {self.n} terms, got {len(self.terms)}")
        for term, p in zip(self.terms, range(self.n, 0, -1)):
            if term.p != p or term.rank != comb(self.n, p):
                raise ValueError(f"term {term} is not the expected p={p} term")
        if self.alternating_rank_sum() != 1:
            raise ValueError("alternating rank sum must equal rank(I) = 1")

    def alternating_rank_sum(self):
        return sum((-1) ** (t.p + 1) * t.rank for t in self.terms)

    def alternating_euler_sum(self):
        """Alternating sum of the terms' Euler characteristics.

        Each term sits in the fibre-acyclic band -n <= j <= -1, so every
        summand vanishes and the total matches chi(I) = chi(O_X) - chi(O_Y).
        """
        variety = ModelVariety(self.n, Side.X_PLUS)
        total = 0
        for t in self.terms:
            table = cohomology_with_pullback_twist(variety, -t.p, t.theta_wedge)
            total += (-1) ** (t.p + 1) * table.euler()
        return total


def koszul_resolution(n):
    if n < 2:
        raise ValueError(f"the model needs n >= 2, got n={n}")
    variety = ModelVariety(n, Side.X_PLUS)
    terms = tuple(
        KoszulTerm(p, XLineBundle(variety, -p, 0), exterior_power_theta(p, n))
        for p in range(n, 0, -1)
    )
    return KoszulResolution(n, terms)


# ---------------------------------------------------------------------------
# Ext tables through the local-to-global spectral sequence


@dataclass(frozen=True)
class SpectralPage:
    """Second-page entries (p, q) -> dimension, with total degree <= bound."""

    entries: tuple[tuple[tuple[int, int], int], ...]
    bound: int

    @classmethod
    def from_dict(cls, entries, bound):
        for (p, q), dim in entries.items():
            if p < 0 or q < 0 or dim < 0:
                raise ValueError(f"bad page entry E[{p},{q}] = {dim}")
            if p + q > bound:
                raise ValueError(f"entry E[{p},{q}] exceeds the total bound {bound}")
        return cls(tuple(sorted((pq, d) for pq, d in entries.items() if d)), bound)

    def off_diagonal(self):
        return [(pq, d) for pq, d in self.entries if pq[0] != pq[1]]

    def antidiagonal_totals(self):
        dims = {}
        for (p, q), d in self.entries:
            dims[p + q] = dims.get(p + q, 0) + d
        return CohomologyTable.from_dict(dims)


def local_ext_page(n):
    """E_2 of the local-to-global sequence for the centre's structure sheaf.

    The local Ext sheaves are the exterior powers of the conormal bundle,
    which is the cotangent bundle of the centre; so the page entry at (p, q)
    is h^p(P^n, Omega^q).
    """
    entries = {}
    for q in range(n + 1):
        table = bott_cohomology(form_bundle(q, n))
        for p, dim in table.dims().items():
            entries[(p, q)] = dim
    return SpectralPage.from_dict(entries, 2 * n)


def ext_table_OY(n):
    """Ext^i(O_Y+, O_Y+): one dimension at each even degree in [0, 2n].

    Asserts the checkerboard vanishing that forces degeneration; if an
    off-diagonal entry were nonzero the table would be meaningless and
    ``DegeneracyUnjustifiedError`` is raised instead.
    """
    if n < 2:
        raise ValueError(f"the model needs n >= 2, got n={n}")
    page = local_ext_page(n)
    stray = page.off_diagonal()
    if stray:
        raise DegeneracyUnjustifiedError(
            f"nonzero off-diagonal second-page entries {stray}; the spectral "
            f"sequence need not degenerate"
        )
    return page.antidiagonal_totals()


def ext_OY_structure(n):
    """Ext^i(O_Y+, O_X+): local Ext is det N = omega_Y in degree n alone,
    so the global table is h^(i-n)(P^n, O(-n-1)) shifted up by n."""
    omega_table = bott_cohomology(line_bundle(n, -n - 1))
    return CohomologyTable.from_dict(
        {n + p: d for p, d in omega_table.dims().items()}
    )


# ---------------------------------------------------------------------------
# Ext of Koszul terms against the ideal sheaf (first route at n = 2)


@dataclass(frozen=True)
class PartialTable:
    """Dimensions by degree where the chase settled them; the rest unknown."""

    known: tuple[tuple[int, int], ...]
    unknown: frozenset[int]

    def get(self, degree):
        vals = dict(self.known)
        if degree in vals:
            return vals[degree]
        if degree in self.unknown:
            return None
        return 0

    def is_known(self, degree):
        return degree not in self.unknown


def _partial_from_solution(solution, degree_labels):
    known = {}
    unknown = set()
    for degree, label in degree_labels.items():
        val = solution.values[label]
        if val is None:
            unknown.add(degree)
        else:
            known[degree] = val
    return PartialTable(tuple(sorted(known.items())), frozenset(unknown))


def restriction_chase_system(p, n):
    """The long exact sequence computing Ext^i of the p-th Koszul term
    against the ideal sheaf, as a chase system.

    The term's dual is O(p) (x) pi^* Omega^p; restricting to the centre
    gives Omega^p there, so the sequence interleaves the unknown Ext groups
    with h^i(X, O(p) (x) pi^* Omega^p) and h^i(P^n, Omega^p).
    """
    if not 1 <= p <= n:
        raise ValueError(f"p={p} out of range 1..{n}")
    variety = ModelVariety(n, Side.X_PLUS)
    dual_table = cohomology_with_pullback_twist(variety, p, form_bundle(p, n))
    centre_table = bott_cohomology(form_bundle(p, n))
    top = 2 * n
    terms = [ChaseTerm("start", 0)]
    for i in range(top + 1):
        terms.append(ChaseTerm(f"Ext^{i}(E{p},I)", None))
        terms.append(ChaseTerm(f"h^{i}(E{p}v)", dual_table.get(i)))
        terms.append(ChaseTerm(f"h^{i}(Omega^{p}|Y)", centre_table.get(i)))
    terms.append(ChaseTerm("end", 0))
    return ChaseSystem(f"ext-koszul-term-p{p}-n{n}", tuple(terms))


def ext_locally_free_vs_ideal(p, n):
    """Ext^i of the p-th Koszul term against the ideal sheaf, as far as the
    chase determines it; undetermined degrees are reported, never guessed."""
    solution = chase_solve(restriction_chase_system(p, n))
    labels = {i: f"Ext^{i}(E{p},I)" for i in range(2 * n + 1)}
    return _partial_from_solution(solution, labels)


# ---------------------------------------------------------------------------
# self-Ext of the ideal sheaf in degree 2 at n = 2


def ideal_cohomology_system(n=2):
    """h^i of the ideal sheaf from 0 -> I -> O_X -> O_Y -> 0."""
    variety = ModelVariety(n, Side.X_PLUS)
    x_table = cohomology_X(XLineBundle(variety, 0, 0))
    y_table = bott_cohomology(structure_sheaf(n))
    top = 2 * n
    terms = [ChaseTerm("start", 0)]
    for i in range(top + 1):
        terms.append(ChaseTerm(f"h^{i}(I)", None))
        terms.append(ChaseTerm(f"h^{i}(O_X)", x_table.get(i)))
        terms.append(ChaseTerm(f"h^{i}(O_Y)", y_table.get(i)))
    terms.append(ChaseTerm("end", 0))
    return ChaseSystem(f"ideal-cohomology-n{n}", tuple(terms))


def ext_centre_vs_ideal_system(n=2):
    """Ext^i(O_Y, I) chased through Ext^i(O_Y, O_X) and Ext^i(O_Y, O_Y)."""
    ox_table = ext_OY_structure(n)
    oy_table = ext_table_OY(n)
    top = 2 * n
    terms = [ChaseTerm("start", 0)]
    for i in range(top + 1):
        terms.append(ChaseTerm(f"Ext^{i}(O_Y,I)", None))
        terms.append(ChaseTerm(f"Ext^{i}(O_Y,O_X)", ox_table.get(i)))
        terms.append(ChaseTerm(f"Ext^{i}(O_Y,O_Y)", oy_table.get(i)))
    terms.append(ChaseTerm("end", 0))
    return ChaseSystem(f"ext-centre-vs-ideal-n{n}", tuple(terms))


def ext_ideal_self_system(n=2):
    """Ext^i(I, I) chased against Ext^i(O_Y, I) and h^i(I).

    The two feeder systems are solved first; any value they leave unknown is
    carried into this system as an unknown, not silently zeroed.
    """
    centre = chase_solve(ext_centre_vs_ideal_system(n))
    ideal = chase_solve(ideal_cohomology_system(n))
    top = 2 * n
    terms = [ChaseTerm("start", 0)]
    for i in range(top + 1):
        terms.append(ChaseTerm(f"Ext^{i}(O_Y,I)", centre.values[f"Ext^{i}(O_Y,I)"]))
        terms.append(ChaseTerm(f"h^{i}(I)", ideal.values[f"h^{i}(I)"]))
        terms.append(ChaseTerm(f"Ext^{i}(I,I)", None))
    terms.append(ChaseTerm("end", 0))
    return ChaseSystem(f"ext-ideal-self-n{n}", tuple(terms))


def reference_chase_systems(n=2):
    """Every system this module assembles for its own computations."""
    systems = [
        ideal_cohomology_system(n),
        ext_centre_vs_ideal_system(n),
        ext_ideal_self_system(n),
    ]
    systems.extend(restriction_chase_system(p, n) for p in range(1, n + 1))
    return systems


def ext2_ideal_self(n=2):
    """dim Ext^2(I, I), the degree-2 self-extension count of the ideal sheaf.

    Restricted to n = 2: the chase relies on vanishing specific to the
    4-fold case.  Returns 1 there; raises if the chase cannot settle it.
    """
    if n != 2:
        raise ValueError("the degree-2 self-Ext chase is specific to n = 2")
    solution = chase_solve(ext_ideal_self_system(n))
    return solution.require("Ext^2(I,I)")


def ext2_ideal_self_trace(n=2):
    """The chase traces behind ext2_ideal_self, for reporting."""
    traces = []
    for system in reference_chase_systems(n)[:3]:
        solution = chase_solve(system)
        traces.append((system.name, solution.trace))
    return traces
