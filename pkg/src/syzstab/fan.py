"""Smooth complete fans in the rank-2 lattice.

A fan is stored as a tuple of primitive integer vectors (rays) in strictly
counterclockwise cyclic order.  Every pair of consecutive rays must form a
lattice basis, i.e. ``det(u[i], u[i+1]) == 1``; this is exactly smoothness
plus completeness for the associated toric surface.  Each ray corresponds
to a prime torus-invariant curve on the surface, and the wall relation

    u[i-1] + u[i+1] == c[i] * u[i]

defines integers ``c[i]`` with curve self-intersections ``-c[i]``.

Rays may be supplied in any order; the constructor sorts them by angle
using quadrant plus cross-product comparisons, so no floating point enters
anywhere.  Validation errors report indices into the *original* input
order.  Fans are immutable after construction and all methods are pure,
so instances can be shared freely between threads.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .errors import (
    IncompleteFanError,
    InternalError,
    NonPrimitiveRayError,
    NonSmoothFanError,
    NotMinusOneCurveError,
    RepeatedRayError,
)

Vec = tuple[int, int]

PROJECTIVE_PLANE = "ProjectivePlane"
HIRZEBRUCH = "Hirzebruch"
OTHER = "Other"


def det(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def is_primitive(u: Vec) -> bool:
    """True if u is a nonzero integer vector with coprime entries."""
    return u != (0, 0) and math.gcd(u[0], u[1]) == 1


def _half(u: Vec) -> int:
    # 0 for the closed upper half starting at the positive x-axis,
    # 1 for the lower half starting at the negative x-axis.
    if u[1] > 0 or (u[1] == 0 and u[0] > 0):
        return 0
    return 1


def _angle_cmp(u: Vec, v: Vec) -> int:
    # Total order by angle in [0, 2*pi): compare half-planes first, then
    # cross products within a half.  Distinct primitive vectors at the
    # same angle are impossible, so ties mean equality.
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    d = det(u, v)
    if d > 0:
        return -1
    if d < 0:
        return 1
    return 0


@dataclass(frozen=True)
class SurfaceType:
    """Combinatorial type of the toric surface attached to a fan.

    ``kind`` is one of ``ProjectivePlane``, ``Hirzebruch`` (with ``ell``
    set; ``ell == 0`` is the quadric P1 x P1) or ``Other`` for Picard
    rank at least 3.
    """

    kind: str
    ell: int | None
    picard_rank: int

    def __str__(self) -> str:
        if self.kind == HIRZEBRUCH:
            return f"Hirzebruch({self.ell})"
        if self.kind == OTHER:
            return f"Other(picard_rank={self.picard_rank})"
        return self.kind


class Fan:
    """A smooth complete fan, constructed from an iterable of rays.

    Raises :class:`NonPrimitiveRayError`, :class:`RepeatedRayError`,
    :class:`IncompleteFanError` or :class:`NonSmoothFanError` with the
    offending index in the original input order.
    """

    __slots__ = ("rays", "input_positions", "_walls")

    def __init__(self, rays):
        given = [tuple(int(x) for x in r) for r in rays]
        for idx, r in enumerate(given):
            if len(r) != 2:
                raise NonPrimitiveRayError(
                    f"ray {idx} must have exactly 2 integer components", idx
                )
            if not is_primitive(r):
                raise NonPrimitiveRayError(
                    f"ray {idx} = {r} is not a primitive nonzero vector", idx
                )
        seen: dict[Vec, int] = {}
        for idx, r in enumerate(given):
            if r in seen:
                raise RepeatedRayError(
                    f"ray {idx} = {r} repeats ray {seen[r]}", idx
                )
            seen[r] = idx
        if len(given) < 3:
            raise IncompleteFanError(
                f"a complete fan needs at least 3 rays, got {len(given)}"
            )

        order = sorted(
            range(len(given)),
            key=functools.cmp_to_key(
                lambda i, j: _angle_cmp(given[i], given[j])
            ),
        )
        sorted_rays = tuple(given[i] for i in order)
        n = len(sorted_rays)
        for i in range(n):
            u, v = sorted_rays[i], sorted_rays[(i + 1) % n]
            d = det(u, v)
            orig = order[i]
            if d <= 0:
                raise IncompleteFanError(
                    f"rays {u} and {v} span an angle >= pi "
                    f"(cone after input ray {orig} is missing)",
                    orig,
                )
            if d != 1:
                raise NonSmoothFanError(
                    f"rays {u} and {v} have determinant {d} != 1 "
                    f"(cone at input ray {orig} is singular)",
                    orig,
                )

        object.__setattr__(self, "rays", sorted_rays)
        object.__setattr__(self, "input_positions", tuple(order))
        object.__setattr__(self, "_walls", None)

    def __setattr__(self, name, value):
        raise AttributeError("Fan is immutable")

    @property
    def n(self) -> int:
        return len(self.rays)

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and self.rays == other.rays

    def __hash__(self) -> int:
        return hash(self.rays)

    def __repr__(self) -> str:
        return f"Fan({list(self.rays)})"

    # -- intersection data ------------------------------------------------

    def wall_coefficients(self) -> tuple[int, ...]:
        """The integers c[i] with u[i-1] + u[i+1] == c[i]*u[i]."""
        if self._walls is not None:
            return self._walls
        n = self.n
        cs = []
        for i in range(n):
            u = self.rays[i]
            w = (
                self.rays[(i - 1) % n][0] + self.rays[(i + 1) % n][0],
                self.rays[(i - 1) % n][1] + self.rays[(i + 1) % n][1],
            )
            if u[0] != 0:
                c, rem = divmod(w[0], u[0])
                ok = rem == 0 and c * u[1] == w[1]
            else:
                c, rem = divmod(w[1], u[1])
                ok = rem == 0 and c * u[0] == w[0]
            if not ok:
                raise InternalError(
                    f"wall relation failed at ray {i}: {w} not a multiple of {u}"
                )
            cs.append(c)
        object.__setattr__(self, "_walls", tuple(cs))
        return self._walls

    def self_intersections(self) -> tuple[int, ...]:
        """Self-intersection numbers of the prime curves, D_i^2 = -c[i]."""
        return tuple(-c for c in self.wall_coefficients())

    def intersection_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Symmetric matrix of products D_i . D_j.

        Diagonal entries are the self-intersections; distinct curves meet
        in one point exactly when their rays are cyclically adjacent (for
        n == 3 every pair is adjacent).
        """
        n = self.n
        sq = self.self_intersections()
        rows = []
        for i in range(n):
            row = [0] * n
            row[(i - 1) % n] = 1
            row[(i + 1) % n] = 1
            row[i] = sq[i]
            rows.append(tuple(row))
        return tuple(rows)

    # -- classification ---------------------------------------------------

    def surface_type(self) -> SurfaceType:
        n = self.n
        if n == 3:
            return SurfaceType(PROJECTIVE_PLANE, None, 1)
        if n == 4:
            ell = max(self.wall_coefficients())
            return SurfaceType(HIRZEBRUCH, ell, 2)
        return SurfaceType(OTHER, None, n - 2)

    def blow_down(self, i: int) -> "Fan":
        """Remove ray ``i`` (which must be a (-1)-curve, c[i] == 1).

        The wall relation guarantees the remaining rays again form a
        smooth complete fan.
        """
        c = self.wall_coefficients()
        if c[i] != 1:
            raise NotMinusOneCurveError(i, -c[i])
        remaining = [r for j, r in enumerate(self.rays) if j != i]
        return Fan(remaining)


def reduce_to_minimal(fan: Fan) -> tuple[Fan, list[Vec]]:
    """Blow down (-1)-rays until 3 or 4 rays remain.

    Returns the reduced fan together with the list of removed ray vectors
    in the order of removal.  Every smooth complete fan reduces this way
    to the fan of the plane or of a Hirzebruch surface.
    """
    removed: list[Vec] = []
    current = fan
    while current.n > 4:
        c = current.wall_coefficients()
        try:
            i = c.index(1)
        except ValueError:
            raise InternalError(
                "no (-1)-ray found on a fan with more than 4 rays"
            ) from None
        removed.append(current.rays[i])
        current = current.blow_down(i)
    return current, removed
