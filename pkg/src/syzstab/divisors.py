"""Divisors, intersection pairing and section counts on surface models.

Two surface models share one interface.  :class:`ToricSurface` is built
from a :class:`~syzstab.fan.Fan`; there ``h0`` is an exact lattice-point
count in the section polygon, and the Euler characteristic from
Riemann-Roch acts as an independent cross-check (they agree on nef
divisors).  :class:`AbstractSurface` is given by an intersection matrix,
a canonical class and a declared list of effective-cone generators; there
``h0`` falls back to the Euler characteristic and callers must surface
that assumption (``uses_chi_for_h0`` is True).

All arithmetic is exact: divisor coefficients are `fractions.Fraction`,
lattice point counting is pure integer arithmetic, and no floating point
is used anywhere.  Every object is immutable after construction and every
method is pure, so instances are safe for unrestricted concurrent reads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatchError,
    InputError,
    InternalError,
    NonIntegralDivisorError,
    NotNefError,
)
from .fan import HIRZEBRUCH, Fan

Rat = int | Fraction


class Divisor:
    """A divisor with exact rational coefficients on the ambient basis.

    On a toric surface the basis entries are the prime torus-invariant
    curves in fan ray order; on an abstract surface they are the declared
    generators.  Supports addition, subtraction and scalar multiples.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat]):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in coeffs)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise NonIntegralDivisorError(
                f"divisor {self} has fractional coefficients"
            )
        return tuple(int(c) for c in self.coeffs)

    def _check_len(self, other: "Divisor") -> None:
        if len(self) != len(other):
            raise DimensionMismatchError(
                f"divisor lengths differ: {len(self)} vs {len(other)}"
            )

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check_len(other)
        return Divisor(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check_len(other)
        return Divisor(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "Divisor":
        return Divisor(-a for a in self.coeffs)

    def __mul__(self, k: Rat) -> "Divisor":
        return Divisor(a * k for a in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "Divisor(%s)" % ", ".join(str(c) for c in self.coeffs)

    def scaled_primitive(self) -> "Divisor":
        """The unique primitive integral divisor on the same positive ray."""
        if self.is_zero:
            return Divisor(self.coeffs)
        denom = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * denom) for c in self.coeffs]
        g = math.gcd(*(abs(v) for v in ints))
        return Divisor(v // g for v in ints)


def basis_divisor(n: int, i: int, value: Rat = 1) -> Divisor:
    """The divisor with a single nonzero coefficient at position i."""
    coeffs = [0] * n
    coeffs[i] = value
    return Divisor(coeffs)


def _ceil_div(p: int, q: int) -> int:
    # q > 0
    return -((-p) // q)


class Polytope:
    """Intersection of closed half-planes ``ux*x + uy*y >= rhs`` in the plane.

    Built from the section constraints of a divisor on a complete fan, so
    the region is always bounded.  Vertices are computed exactly by
    pairwise line intersection; lattice points are counted one integral
    row at a time with integer floor/ceil arithmetic.
    """

    __slots__ = ("halfplanes", "_vertices")

    def __init__(self, halfplanes: Sequence[tuple[int, int, int]]):
        object.__setattr__(self, "halfplanes", tuple(halfplanes))
        object.__setattr__(self, "_vertices", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polytope is immutable")

    def contains(self, x: Rat, y: Rat) -> bool:
        return all(ux * x + uy * y >= rhs for ux, uy, rhs in self.halfplanes)

    @property
    def vertices(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """All extreme points, sorted lexicographically."""
        if self._vertices is not None:
            return self._vertices
        hps = self.halfplanes
        found = set()
        for i in range(len(hps)):
            ai, bi, ci = hps[i]
            for j in range(i + 1, len(hps)):
                aj, bj, cj = hps[j]
                d = ai * bj - bi * aj
                if d == 0:
                    continue
                x = Fraction(ci * bj - bi * cj, d)
                y = Fraction(ai * cj - ci * aj, d)
                if self.contains(x, y):
                    found.add((x, y))
        verts = tuple(sorted(found))
        object.__setattr__(self, "_vertices", verts)
        return verts

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def lattice_point_count(self) -> int:
        """Number of integer points, counted row by row."""
        verts = self.vertices
        if not verts:
            return 0
        ymin = math.ceil(min(v[1] for v in verts))
        ymax = math.floor(max(v[1] for v in verts))
        total = 0
        for y in range(ymin, ymax + 1):
            lo = None
            hi = None
            feasible = True
            for ux, uy, rhs in self.halfplanes:
                r = rhs - uy * y
                if ux > 0:
                    b = _ceil_div(r, ux)
                    if lo is None or b > lo:
                        lo = b
                elif ux < 0:
                    b = r // ux
                    if hi is None or b < hi:
                        hi = b
                elif r > 0:
                    feasible = False
                    break
            if not feasible or lo is None or hi is None:
                continue
            if hi >= lo:
                total += hi - lo + 1
        return total

    def lattice_points(self):
        """Yield the integer points via a bounding-box scan.

        Slower than :meth:`lattice_point_count` but independent of it;
        used as a cross-check and for explicit section monomials.
        """
        verts = self.vertices
        if not verts:
            return
        xmin = math.ceil(min(v[0] for v in verts))
        xmax = math.floor(max(v[0] for v in verts))
        ymin = math.ceil(min(v[1] for v in verts))
        ymax = math.floor(max(v[1] for v in verts))
        for x in range(xmin, xmax + 1):
            for y in range(ymin, ymax + 1):
                if self.contains(x, y):
                    yield (x, y)


class ToricSurface:
    """Intersection theory of the smooth complete toric surface of a fan."""

    uses_chi_for_h0 = False

    __slots__ = ("fan", "n", "walls", "canonical", "effective_generators")

    def __init__(self, fan: Fan):
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "n", fan.n)
        object.__setattr__(self, "walls", fan.wall_coefficients())
        object.__setattr__(self, "canonical", Divisor([-1] * fan.n))
        # the effective cone is generated by all prime invariant curves
        object.__setattr__(
            self, "effective_generators", tuple(range(fan.n))
        )

    def __setattr__(self, name, value):
        raise AttributeError("ToricSurface is immutable")

    @property
    def picard_rank(self) -> int:
        return self.n - 2

    def generator(self, i: int) -> Divisor:
        return basis_divisor(self.n, i)

    def _check(self, D: Divisor) -> None:
        if len(D) != self.n:
            raise DimensionMismatchError(
                f"divisor has {len(D)} coefficients, surface has {self.n} curves"
            )

    def pair_generator(self, D: Divisor, i: int) -> Fraction:
        """Intersection number of D with the i-th prime curve."""
        self._check(D)
        a = D.coeffs
        return (
            a[(i - 1) % self.n]
            + a[(i + 1) % self.n]
            - self.walls[i] * a[i]
        )

    def pair(self, D1: Divisor, D2: Divisor) -> Fraction:
        """Bilinear intersection product, exact rational."""
        self._check(D1)
        self._check(D2)
        return sum(
            b * self.pair_generator(D1, i)
            for i, b in enumerate(D2.coeffs)
            if b
        ) or Fraction(0)

    def is_nef(self, D: Divisor) -> bool:
        return all(
            self.pair_generator(D, i) >= 0 for i in range(self.n)
        )

    def is_ample(self, D: Divisor) -> bool:
        return all(
            self.pair_generator(D, i) > 0 for i in range(self.n)
        )

    def chi(self, D: Divisor) -> Fraction:
        """Euler characteristic 1 + (D.D - D.K)/2 from Riemann-Roch."""
        return 1 + Fraction(
            self.pair(D, D) - self.pair(D, self.canonical), 2
        )

    def polytope(self, D: Divisor) -> Polytope:
        """The section polygon { m : <m, u_i> >= -a_i } of an integral divisor."""
        self._check(D)
        a = D.int_coeffs()
        return Polytope(
            [(u[0], u[1], -a[i]) for i, u in enumerate(self.fan.rays)]
        )

    def h0(self, D: Divisor) -> int:
        """Dimension of the space of sections: an exact lattice-point count.

        Valid for every integral divisor on a complete toric surface, nef
        or not; linear equivalence only translates the polygon, so any
        coefficient representative of a class gives the same count.
        """
        return self.polytope(D).lattice_point_count()

    def is_effective(self, D: Divisor) -> bool:
        return self.h0(D) > 0

    def linearly_equivalent(self, D1: Divisor, D2: Divisor) -> bool:
        """True when D1 - D2 is the divisor of a character monomial."""
        self._check(D1)
        self._check(D2)
        e = (D1 - D2).int_coeffs()
        u0, u1 = self.fan.rays[0], self.fan.rays[1]
        # det(u0, u1) == 1, so the first two equations <m, u_i> = e_i have
        # the unique integer solution below; the rest must then agree.
        m = (
            e[0] * u1[1] - e[1] * u0[1],
            -e[0] * u1[0] + e[1] * u0[0],
        )
        return all(
            m[0] * u[0] + m[1] * u[1] == e[i]
            for i, u in enumerate(self.fan.rays)
        )

    def nef_threshold(self, D: Divisor, E: Divisor) -> Fraction:
        """Largest t with D - t*E nef, for nef D.

        Computed as the minimum of (D.C)/(E.C) over effective-cone
        generators C with E.C > 0.  On a complete surface at least one
        such generator exists whenever E is a prime curve.
        """
        if not self.is_nef(D):
            raise NotNefError("nef threshold needs a nef divisor")
        self._check(E)
        best = None
        for i in self.effective_generators:
            ec = self.pair_generator(E, i)
            if ec > 0:
                t = self.pair_generator(D, i) / ec
                if best is None or t < best:
                    best = t
        if best is None:
            raise InternalError(
                "nef threshold unbounded: E meets no effective generator "
                "positively (impossible for an effective E with E^2 < 0)"
            )
        return best

    def negative_generator_indices(self) -> tuple[int, ...]:
        """Prime curves of negative self-intersection."""
        return tuple(i for i, c in enumerate(self.walls) if c > 0)

    # -- Hirzebruch bookkeeping -------------------------------------------

    def hirzebruch_presentation(self) -> tuple[int, int, int]:
        """(ell, section_index, fiber_index) for a 4-ray fan with ell >= 1.

        The section is the unique prime curve of self-intersection -ell;
        both rays adjacent to it are fibers.
        """
        st = self.fan.surface_type()
        if st.kind != HIRZEBRUCH or st.ell == 0:
            raise InputError(
                f"not a Hirzebruch surface with ell >= 1: {st}"
            )
        ell = st.ell
        s_idx = self.walls.index(ell)
        f_idx = (s_idx + 1) % self.n
        return ell, s_idx, f_idx

    def from_section_fiber(self, s: Rat, f: Rat) -> Divisor:
        """Divisor of class s*S + f*F in section/fiber coordinates."""
        _, s_idx, f_idx = self.hirzebruch_presentation()
        coeffs = [Fraction(0)] * self.n
        coeffs[s_idx] = Fraction(s)
        coeffs[f_idx] = Fraction(f)
        return Divisor(coeffs)

    def to_section_fiber(self, D: Divisor) -> tuple[Fraction, Fraction]:
        """Class coordinates (s, f) with D ~ s*S + f*F."""
        ell, s_idx, f_idx = self.hirzebruch_presentation()
        s = self.pair_generator(D, f_idx)
        f = self.pair_generator(D, s_idx) + ell * s
        return s, f


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    """Rank over the rationals by exact Gaussian elimination."""
    m = [row[:] for row in rows]
    rank = 0
    col = 0
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    while rank < nrows and col < ncols:
        pivot = next(
            (r for r in range(rank, nrows) if m[r][col] != 0), None
        )
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, nrows):
            if m[r][col]:
                factor = m[r][col] / pv
                m[r] = [
                    a - factor * b for a, b in zip(m[r], m[rank])
                ]
        rank += 1
        col += 1
    return rank


class AbstractSurface:
    """A surface given by labels, an intersection matrix, the canonical
    class and a declared set of effective-cone generator indices.

    Sections cannot be counted combinatorially here, so ``h0`` returns the
    Euler characteristic; every consumer must record that assumption (see
    ``uses_chi_for_h0``).  Nefness and ampleness are tested against the
    declared generators, which the caller asserts generate the effective
    cone.
    """

    uses_chi_for_h0 = True

    __slots__ = (
        "labels",
        "n",
        "matrix",
        "canonical",
        "effective_generators",
        "_rank",
    )

    def __init__(
        self,
        labels: Sequence[str],
        pairing: Sequence[Sequence[Rat]],
        canonical: Iterable[Rat],
        effective_generators: Sequence[int],
    ):
        n = len(labels)
        if n == 0:
            raise InputError("abstract surface needs at least one label")
        matrix = tuple(
            tuple(Fraction(x) for x in row) for row in pairing
        )
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise DimensionMismatchError(
                f"pairing must be a {n}x{n} matrix"
            )
        for i in range(n):
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise InputError(
                        f"pairing is not symmetric at ({i},{j})"
                    )
        K = Divisor(canonical)
        if len(K) != n:
            raise DimensionMismatchError(
                "canonical class length does not match labels"
            )
        gens = tuple(int(i) for i in effective_generators)
        if not gens:
            raise InputError("declare at least one effective generator")
        if any(i < 0 or i >= n for i in gens):
            raise InputError("effective generator index out of range")
        if len(set(gens)) != len(gens):
            raise InputError("effective generator indices repeat")
        object.__setattr__(self, "labels", tuple(str(s) for s in labels))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "canonical", K)
        object.__setattr__(self, "effective_generators", gens)
        object.__setattr__(self, "_rank", None)

    def __setattr__(self, name, value):
        raise AttributeError("AbstractSurface is immutable")

    @property
    def picard_rank(self) -> int:
        """Rank of the pairing matrix (a lower bound for the Picard rank
        when the presentation basis is redundant)."""
        if self._rank is None:
            object.__setattr__(
                self,
                "_rank",
                _matrix_rank([list(row) for row in self.matrix]),
            )
        return self._rank

    def generator(self, i: int) -> Divisor:
        return basis_divisor(self.n, i)

    def _check(self, D: Divisor) -> None:
        if len(D) != self.n:
            raise DimensionMismatchError(
                f"divisor has {len(D)} coefficients, surface has {self.n}"
            )

    def pair_generator(self, D: Divisor, i: int) -> Fraction:
        self._check(D)
        return sum(
            a * self.matrix[i][j] for j, a in enumerate(D.coeffs) if a
        ) or Fraction(0)

    def pair(self, D1: Divisor, D2: Divisor) -> Fraction:
        self._check(D1)
        self._check(D2)
        total = Fraction(0)
        for i, a in enumerate(D1.coeffs):
            if a:
                total += a * sum(
                    b * self.matrix[i][j]
                    for j, b in enumerate(D2.coeffs)
                    if b
                )
        return total

    def is_nef(self, D: Divisor) -> bool:
        return all(
            self.pair_generator(D, i) >= 0
            for i in self.effective_generators
        )

    def is_ample(self, D: Divisor) -> bool:
        return all(
            self.pair_generator(D, i) > 0
            for i in self.effective_generators
        )

    def chi(self, D: Divisor) -> Fraction:
        return 1 + Fraction(
            self.pair(D, D) - self.pair(D, self.canonical), 2
        )

    def h0(self, D: Divisor) -> int:
        """Euler characteristic standing in for h0 (vanishing assumed)."""
        value = self.chi(D)
        if value.denominator != 1:
            raise InputError(
                f"Euler characteristic {value} is not an integer; "
                "the pairing matrix is not compatible with the lattice"
            )
        return int(value)

    def nef_threshold(self, D: Divisor, E: Divisor) -> Fraction:
        if not self.is_nef(D):
            raise NotNefError("nef threshold needs a nef divisor")
        self._check(E)
        best = None
        for i in self.effective_generators:
            ec = self.pair_generator(E, i)
            if ec > 0:
                t = self.pair_generator(D, i) / ec
                if best is None or t < best:
                    best = t
        if best is None:
            raise InternalError(
                "nef threshold unbounded against the declared generators"
            )
        return best

    def negative_generator_indices(self) -> tuple[int, ...]:
        return tuple(
            i
            for i in self.effective_generators
            if self.matrix[i][i] < 0
        )

    def check_hypotheses(self) -> tuple[bool, list[str]]:
        """Hypotheses for the boundary-polarization construction.

        Declared generators must have negative self-intersection and meet
        each other in at most one point, and the presentation must have
        rank at least 3.  Returns (ok, diagnostics), one message per
        violation.
        """
        problems: list[str] = []
        gens = self.effective_generators
        if len(gens) < 3:
            problems.append(
                f"only {len(gens)} effective generators declared, need >= 3"
            )
        if self.picard_rank < 3:
            problems.append(
                f"pairing matrix has rank {self.picard_rank}, need >= 3"
            )
        for i in gens:
            if self.matrix[i][i] >= 0:
                problems.append(
                    f"generator {self.labels[i]} has self-intersection "
                    f"{self.matrix[i][i]} >= 0"
                )
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                i, j = gens[a], gens[b]
                if self.matrix[i][j] not in (0, 1):
                    problems.append(
                        f"generators {self.labels[i]} and {self.labels[j]} "
                        f"meet with multiplicity {self.matrix[i][j]}"
                    )
        return not problems, problems


SurfaceModel = ToricSurface | AbstractSurface
