"""The flop's action on Pic and the pushpull functors on line-bundle classes.

The birational map identifies the Picard lattices of the two sides through
an involution fixing the tautological class and sending the base hyperplane
class h+ to xi - h.  Three symbolic functors act on line-bundle classes:

  * ``apply_phi``       blow-up then blow-down; on the computed range the
                        image is a line bundle, except at k = 1 where it is
                        a line bundle twisted by the ideal sheaf of the
                        flopped centre.
  * ``apply_phi_prime`` inverse direction with the relative dualizing twist
                        folded in; inverts ``apply_phi`` on line images.
  * ``apply_psi``       pullpush through the fibre product of the two small
                        contractions; stays a line bundle on all of the
                        second spanning range, including k = -n.

Each functor is only defined on the rectangle of classes where the image is
a single sheaf in degree 0; outside it ``FunctorRangeError`` is raised
rather than extrapolating.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .pbundle import ModelVariety, Side, XLineBundle, canonical_class


class FunctorRangeError(ValueError):
    """Raised for classes outside the rectangle a functor is computed on."""


@dataclass(frozen=True)
class PicMap:
    """2x2 integer matrix acting on (j, k) coordinates of Pic."""

    rows: tuple[tuple[int, int], tuple[int, int]]

    def apply(self, j, k):
        (a, b), (c, d) = self.rows
        return (a * j + b * k, c * j + d * k)

    def compose(self, other):
        (a, b), (c, d) = self.rows
        (e, f), (g, h) = other.rows
        return PicMap(((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)))

    def is_involution(self):
        return self.compose(self).rows == ((1, 0), (0, 1))


def phi_pullback(n):
    """Pullback of classes from the flopped side: xi+ -> xi, h+ -> xi - h."""
    if n < 2:
        raise ValueError(f"the model needs n >= 2, got n={n}")
    return PicMap(((1, 1), (0, -1)))


class ImageKind(enum.Enum):
    LINE = "line"
    IDEAL_TWIST = "ideal_twist"


@dataclass(frozen=True)
class FMImage:
    """A functor image: a line-bundle class, possibly twisted by the ideal
    sheaf of the flopped centre (which only lives on the flopped side)."""

    kind: ImageKind
    bundle: XLineBundle

    def __post_init__(self):
        if self.kind is ImageKind.IDEAL_TWIST and self.bundle.variety.side is not Side.X_PLUS:
            raise ValueError("ideal-twist images only arise on the flopped side")


def _require_side(lb, side, functor):
    if lb.variety.side is not side:
        raise FunctorRangeError(f"{functor} expects a class on side {side.value}")


def apply_phi(lb):
    """Blow-up/blow-down image of (j, k) with -n <= j <= 0, -n+1 <= k <= 1."""
    _require_side(lb, Side.X, "phi")
    n = lb.variety.n
    if not (-n <= lb.j <= 0 and -n + 1 <= lb.k <= 1):
        raise FunctorRangeError(
            f"phi is only computed for -{n} <= j <= 0 and -{n - 1} <= k <= 1, "
            f"got (j, k) = {lb.coords()}"
        )
    target = ModelVariety(n, Side.X_PLUS)
    image = XLineBundle(target, lb.j + lb.k, -lb.k)
    if lb.k == 1:
        return FMImage(ImageKind.IDEAL_TWIST, image)
    return FMImage(ImageKind.LINE, image)


def apply_phi_prime(lb):
    """Inverse transport of a line image (j+k, -k) back to (j, k)."""
    _require_side(lb, Side.X_PLUS, "phi_prime")
    n = lb.variety.n
    k = -lb.k
    j = lb.j - k
    if not (-n <= j <= 0 and -n + 1 <= k <= 0):
        raise FunctorRangeError(
            f"phi_prime is only computed on line images of the phi range, "
            f"got class {lb.coords()}"
        )
    return XLineBundle(ModelVariety(n, Side.X), j, k)


def apply_psi(lb):
    """Fibre-product pushpull of (j, k) with -n <= j <= 0 and -n <= k <= 0."""
    _require_side(lb, Side.X, "psi")
    n = lb.variety.n
    if not (-n <= lb.j <= 0 and -n <= lb.k <= 0):
        raise FunctorRangeError(
            f"psi is only computed for -{n} <= j, k <= 0, got (j, k) = {lb.coords()}"
        )
    target = ModelVariety(n, Side.X_PLUS)
    return XLineBundle(target, lb.j + lb.k, -lb.k)


class SpanningClass(enum.Enum):
    OMEGA = "omega"
    OMEGA_PRIME = "omega_prime"


def enumerate_spanning_class(n, variant):
    """The generating rectangles of line-bundle classes, ordered by (j, k)."""
    if n < 2:
        raise ValueError(f"the model needs n >= 2, got n={n}")
    variety = ModelVariety(n, Side.X)
    if variant is SpanningClass.OMEGA:
        k_range = range(-n + 1, 2)
    elif variant is SpanningClass.OMEGA_PRIME:
        k_range = range(-n, 1)
    else:
        raise ValueError(f"unknown spanning class variant {variant!r}")
    return [
        XLineBundle(variety, j, k) for j in range(-n, 1) for k in k_range
    ]


def serre_compatibility_check(n, pic_map=None):
    """Does the lattice transport commute with twisting by the canonical class?

    True iff the transport matrix fixes (-n-1, 0) and, for every class c in
    the second spanning rectangle, transporting c + omega agrees with the
    psi image of c shifted by omega on the flopped side.  A perturbed matrix
    may be injected to exercise the failure path.
    """
    pic = pic_map if pic_map is not None else phi_pullback(n)
    omega = (-n - 1, 0)
    if pic.apply(*omega) != omega:
        return False
    target = ModelVariety(n, Side.X_PLUS)
    omega_plus = canonical_class(target)
    for c in enumerate_spanning_class(n, SpanningClass.OMEGA_PRIME):
        transported = pic.apply(c.j + omega[0], c.k + omega[1])
        expected = apply_psi(c) + omega_plus
        if transported != expected.coords():
            return False
    return True
