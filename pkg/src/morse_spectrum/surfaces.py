"""Model surfaces and monotone families of deforming domains on them.

Four built-in settings, each a surface of constant mean curvature with
constant squared second-fundamental-form norm, carrying one monotone
family D(t) of domains:

* ``circle``   -- the line immersed onto the unit circle; D(t) = (0, t).
* ``gap``      -- the flat line; D(t) is a symmetric pair of intervals in
  (-pi, pi) whose inner gap closes at t = 1.  The family is monotone and
  Hausdorff-continuous but *not* set-continuous, so its eigenvalue curves
  jump at t = 1.
* ``cylinder`` -- geodesic disks of radius t on the unit cylinder.  The
  disk is flat, so the pulled-back spectral problem is the Euclidean disk
  problem for every t, including t >= pi where the disk wraps around and
  the topological type changes.  Eigencurves stay continuous through pi.
* ``sphere``   -- geodesic caps of radius t < pi on the unit 2-sphere.

All values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import GeometryError, InputError, ParameterRangeError


class SurfaceKind(Enum):
    CIRCLE_IMMERSED_LINE = "circle_immersed_line"
    FLAT_LINE = "flat_line"
    UNIT_CYLINDER = "unit_cylinder"
    UNIT_SPHERE2 = "unit_sphere2"


class FamilyKind(Enum):
    CIRCLE_INTERVAL = "circle"
    FLAT_GAP = "gap"
    CYLINDER_DISK = "cylinder"
    SPHERE_CAP = "sphere"


#: area-element weight in radial coordinates, by tag
RADIAL_WEIGHTS = {
    "one": lambda x: 1.0,
    "r": lambda x: x,
    "sin": math.sin,
}


@dataclass(frozen=True)
class SurfaceModel:
    """A model CMC surface: dimension, |B|^2, and radial area weight."""

    kind: SurfaceKind
    b_norm_sq: float
    dim: int
    radial_weight: str  # key into RADIAL_WEIGHTS

    def weight_fn(self):
        return RADIAL_WEIGHTS[self.radial_weight]


# |B|^2 is the sum of squared principal curvatures:
#   circle-immersed line: kappa = 1            -> 1
#   flat line:            kappa = 0            -> 0
#   unit cylinder:        kappa = (1, 0)       -> 1
#   unit 2-sphere:        kappa = (1, 1)       -> 2
CIRCLE_IMMERSED_LINE = SurfaceModel(SurfaceKind.CIRCLE_IMMERSED_LINE, 1.0, 1, "one")
FLAT_LINE = SurfaceModel(SurfaceKind.FLAT_LINE, 0.0, 1, "one")
UNIT_CYLINDER = SurfaceModel(SurfaceKind.UNIT_CYLINDER, 1.0, 2, "r")
UNIT_SPHERE2 = SurfaceModel(SurfaceKind.UNIT_SPHERE2, 2.0, 2, "sin")


def b_norm_sq(surface: SurfaceModel) -> float:
    """Constant squared norm of the second fundamental form."""
    return surface.b_norm_sq


@dataclass(frozen=True)
class DomainSlice:
    """One domain D(t): disjoint open intervals (radial extent for dim 2)."""

    t: float
    components: tuple  # tuple of (a, b) pairs, ascending and disjoint
    volume: float
    radial: bool = False  # True when components = ((0, t),) in radial coords

    def total_length(self) -> float:
        return sum(b - a for a, b in self.components)


@dataclass(frozen=True)
class DomainFamily:
    """A monotone family t -> D(t) on a model surface.

    ``set_continuous`` is declared metadata (deciding set-continuity of an
    abstract family is not algorithmic); its spectral consequences are what
    get tested downstream.
    """

    surface: SurfaceModel
    family_kind: FamilyKind
    t_min: float
    t_max: float
    set_continuous: bool
    description: str = ""

    def __post_init__(self):
        if not (0.0 < self.t_min < self.t_max):
            raise InputError(
                f"need 0 < t_min < t_max, got ({self.t_min}, {self.t_max})"
            )


def circle_interval_family(t_min: float = 0.3, t_max: float = 25.0) -> DomainFamily:
    return DomainFamily(
        CIRCLE_IMMERSED_LINE,
        FamilyKind.CIRCLE_INTERVAL,
        t_min,
        t_max,
        set_continuous=True,
        description="intervals (0, t) on the circle-immersed line",
    )


def flat_gap_family(t_min: float = 0.3, t_max: float = 1.0) -> DomainFamily:
    if t_max > 1.0:
        raise InputError("gap family is defined for t <= 1")
    return DomainFamily(
        FLAT_LINE,
        FamilyKind.FLAT_GAP,
        t_min,
        t_max,
        set_continuous=False,
        description="two symmetric intervals in (-pi, pi), gap closing at t = 1",
    )


def cylinder_disk_family(t_min: float = 0.3, t_max: float = 6.0) -> DomainFamily:
    return DomainFamily(
        UNIT_CYLINDER,
        FamilyKind.CYLINDER_DISK,
        t_min,
        t_max,
        set_continuous=True,
        description="geodesic disks of radius t on the unit cylinder",
    )


def sphere_cap_family(t_min: float = 0.3, t_max: float = 3.0) -> DomainFamily:
    if t_max >= math.pi:
        raise GeometryError("sphere caps require t < pi")
    return DomainFamily(
        UNIT_SPHERE2,
        FamilyKind.SPHERE_CAP,
        t_min,
        t_max,
        set_continuous=True,
        description="geodesic caps of radius t on the unit sphere",
    )


FAMILY_BUILDERS = {
    "circle": circle_interval_family,
    "gap": flat_gap_family,
    "cylinder": cylinder_disk_family,
    "sphere": sphere_cap_family,
}


def domain_at(family: DomainFamily, t: float) -> DomainSlice:
    """The slice D(t); raises ParameterRangeError outside [t_min, t_max]."""
    if not (family.t_min <= t <= family.t_max):
        raise ParameterRangeError(
            f"t = {t} outside family range [{family.t_min}, {family.t_max}]"
        )
    kind = family.family_kind
    if kind is FamilyKind.CIRCLE_INTERVAL:
        return DomainSlice(t, ((0.0, t),), volume=t)
    if kind is FamilyKind.FLAT_GAP:
        if t < 1.0:
            inner = math.pi * (1.0 - t)
            comps = ((-math.pi, -inner), (inner, math.pi))
            return DomainSlice(t, comps, volume=2.0 * math.pi * t)
        return DomainSlice(t, ((-math.pi, math.pi),), volume=2.0 * math.pi)
    if kind is FamilyKind.CYLINDER_DISK:
        # Pullback of the immersed disk: the cylinder is flat, so the
        # spectral problem lives on the abstract Euclidean disk for all t,
        # also beyond the wrap-around at t = pi.
        return DomainSlice(t, ((0.0, t),), volume=math.pi * t * t, radial=True)
    if kind is FamilyKind.SPHERE_CAP:
        if t >= math.pi:
            raise GeometryError(f"sphere cap radius t = {t} must be < pi")
        return DomainSlice(t, ((0.0, t),), volume=2.0 * math.pi * (1.0 - math.cos(t)), radial=True)
    raise InputError(f"unknown family kind {kind}")


def slice_contained(inner: DomainSlice, outer: DomainSlice, tol: float = 1e-12) -> bool:
    """True if every component of ``inner`` sits inside a component of ``outer``."""
    for a, b in inner.components:
        if not any(c - tol <= a and b <= d + tol for c, d in outer.components):
            return False
    return True


def family_metadata(family: DomainFamily, t_grid) -> dict:
    """Grid check of monotone containment plus the declared continuity flag."""
    ts = list(t_grid)
    if any(s >= t for s, t in zip(ts, ts[1:])):
        raise InputError("t_grid must be strictly ascending")
    slices = [domain_at(family, t) for t in ts]
    monotone = all(
        slice_contained(s, t) and s.volume < t.volume + 1e-15
        for s, t in zip(slices, slices[1:])
    )
    return {"monotone_ok": monotone, "set_continuous": family.set_continuous}
