"""Exact Manhattan-distance geometry for grid towns and pixel cities.

A *town* is a finite set of integer grid points; a *pixel city* is a finite
union of unit grid cells.  Both share the same compactness measure: the total
pairwise Manhattan distance c (a sum over unordered pairs for towns, a double
area integral for cities) and the scale-free average phi = 2*c / n**2.5.
Grid-aligned quantities are computed in exact rational arithmetic; rectilinear
shapes with irrational coordinates go through step-function marginals in
double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Cell = tuple[int, int]
Scalar = Union[int, float, Fraction]

# All exact grid-aligned values are plain fractions (lowest terms, positive
# denominator, exact arithmetic come for free).
ExactRational = Fraction

_HALF = Fraction(1, 2)
_THIRD = Fraction(1, 3)

# Images of a point under the eight symmetries of the square grid.
_DIHEDRAL = (
    lambda x, y: (x, y),
    lambda x, y: (-x, y),
    lambda x, y: (x, -y),
    lambda x, y: (-x, -y),
    lambda x, y: (y, x),
    lambda x, y: (-y, x),
    lambda x, y: (y, -x),
    lambda x, y: (-y, -x),
)


def _as_cells(points: Iterable[Cell]) -> frozenset[Cell]:
    return frozenset((int(x), int(y)) for x, y in points)


@dataclass(frozen=True)
class Town:
    """A finite set of integer grid points (unit = one grid step)."""

    points: frozenset[Cell]

    @classmethod
    def of(cls, points: Iterable[Cell]) -> "Town":
        return cls(_as_cells(points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class PixelCity:
    """A finite union of unit grid cells; cell (x, y) covers [x,x+1]x[y,y+1]."""

    cells: frozenset[Cell]

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> "PixelCity":
        return cls(_as_cells(cells))

    def centers(self) -> Town:
        """The town of cell centers, mapped back onto the integer grid."""
        return Town(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


Shape = Union[Town, PixelCity]


def _members(shape: Shape) -> frozenset[Cell]:
    return shape.points if isinstance(shape, Town) else shape.cells


@dataclass(frozen=True)
class Profile:
    """Occupancy counts per column (or row) of a shape's bounding box."""

    counts: tuple[int, ...]
    orientation: str  # "column" or "row"

    def total(self) -> int:
        return sum(self.counts)

    def squared_sum(self) -> int:
        return sum(c * c for c in self.counts)


def _occupancy(values: Sequence[int]) -> tuple[int, ...]:
    lo, hi = min(values), max(values)
    counts = [0] * (hi - lo + 1)
    for v in values:
        counts[v - lo] += 1
    return tuple(counts)


def column_profile(shape: Shape) -> Profile:
    """Per-column occupancy of the shape, trimmed to its bounding box."""
    members = _members(shape)
    if not members:
        raise ValueError("empty shape")
    return Profile(_occupancy([x for x, _ in members]), "column")


def row_profile(shape: Shape) -> Profile:
    """Per-row occupancy of the shape, trimmed to its bounding box."""
    members = _members(shape)
    if not members:
        raise ValueError("empty shape")
    return Profile(_occupancy([y for _, y in members]), "row")


def _pair_distance(counts: Sequence[int]) -> int:
    # Sum of |a - b| over unordered pairs of the multiset described by the
    # occupancy counts: each gap between position t and t+1 separates
    # F(t) * (n - F(t)) pairs and contributes 1 to each of them.
    n = sum(counts)
    acc = 0
    seen = 0
    for c in counts[:-1]:
        seen += c
        acc += seen * (n - seen)
    return acc


def town_total_distance(town: Town) -> int:
    """Total Manhattan distance over unordered pairs of town points.

    Separable into independent column and row contributions, so the cost is
    linear in the bounding box plus the point count rather than quadratic.
    """
    if not town.points:
        raise ValueError("empty shape")
    xs = [x for x, _ in town.points]
    ys = [y for _, y in town.points]
    return _pair_distance(_occupancy(xs)) + _pair_distance(_occupancy(ys))


def lambda_correction(city: PixelCity) -> Fraction:
    """Town-to-city distance correction (sum of squared profiles over six)."""
    if not city.cells:
        raise ValueError("empty shape")
    cols = column_profile(city)
    rows = row_profile(city)
    return Fraction(cols.squared_sum() + rows.squared_sum(), 6)


def city_total_distance(city: PixelCity) -> Fraction:
    """Continuous total Manhattan distance of a union of unit cells.

    Computed as the cell-center town distance plus the per-shape correction
    term; ``city_total_distance_by_integration`` is the independent check.
    """
    if not city.cells:
        raise ValueError("empty shape")
    return town_total_distance(city.centers()) + lambda_correction(city)


def city_total_distance_by_integration(city: PixelCity) -> Fraction:
    """Same value as :func:`city_total_distance`, via marginal integrals."""
    if not city.cells:
        raise ValueError("empty shape")
    fx = StepFunction.from_counts(column_profile(city).counts)
    fy = StepFunction.from_counts(row_profile(city).counts)
    return (marginal_integral(fx) + marginal_integral(fy)) * _HALF


def phi(total: Scalar, n: Scalar) -> float:
    """Normalized average distance 2*c / n**2.5 (dimensionless)."""
    if n <= 0:
        raise ValueError("invalid size")
    if total < 0:
        raise ValueError("negative total distance")
    return 2.0 * float(total) / float(n) ** 2.5


def town_phi(town: Town) -> float:
    return phi(town_total_distance(town), len(town))


def city_phi(city: PixelCity) -> float:
    return phi(city_total_distance(city), len(city))


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant density: values[i] holds on [breakpoints[i], breakpoints[i+1])."""

    breakpoints: tuple[Scalar, ...]
    values: tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.breakpoints) < 2 or len(self.values) != len(self.breakpoints) - 1:
            raise ValueError("malformed step function")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("malformed step function")
        if any(v < 0 for v in self.values):
            raise ValueError("malformed step function")

    @classmethod
    def from_counts(cls, counts: Sequence[int], origin: int = 0) -> "StepFunction":
        """Integer-grid density with unit-width intervals starting at origin."""
        return cls(tuple(range(origin, origin + len(counts) + 1)), tuple(counts))

    def mass(self) -> Scalar:
        return sum(
            v * (b - a)
            for v, a, b in zip(self.values, self.breakpoints, self.breakpoints[1:])
        )


def marginal_integral(f: StepFunction) -> Scalar:
    """Closed-form evaluation of the double integral of |x - u| f(x) f(u).

    Exact (Fraction) when breakpoints and values are rational; float inputs
    incur only closed-form rounding, no quadrature error.
    """
    total: Scalar = 0
    mass: Scalar = 0    # running sum of v * length
    moment: Scalar = 0  # running sum of v * length * midpoint
    for a, b, v in zip(f.breakpoints, f.breakpoints[1:], f.values):
        length = b - a
        mid = (a + b) * _HALF
        w = v * length
        total += v * v * length ** 3 * _THIRD
        total += 2 * w * (mid * mass - moment)
        mass += w
        moment += w * mid
    return total


def _mass_matches(mass: Scalar, area: Scalar) -> bool:
    if isinstance(mass, float) or isinstance(area, float):
        return abs(float(mass) - float(area)) <= 1e-9 * max(1.0, abs(float(area)))
    return mass == area


def rectilinear_phi(fx: StepFunction, fy: StepFunction, area: Scalar) -> float:
    """phi of a rectilinear shape described by its two marginal densities.

    The total distance is half the sum of the two marginal integrals and phi
    doubles it again, so the result is simply (Ix + Iy) / area**2.5.
    """
    if area <= 0:
        raise ValueError("invalid size")
    if not (_mass_matches(fx.mass(), area) and _mass_matches(fy.mass(), area)):
        raise ValueError("inconsistent marginals")
    return float(marginal_integral(fx) + marginal_integral(fy)) / float(area) ** 2.5


def canonical_cells(points: Iterable[Cell]) -> tuple[Cell, ...]:
    """Lexicographically smallest translate among the eight dihedral images."""
    pts = list(points)
    if not pts:
        raise ValueError("empty shape")
    best = None
    for transform in _DIHEDRAL:
        image = [transform(x, y) for x, y in pts]
        min_x = min(x for x, _ in image)
        min_y = min(y for _, y in image)
        normalized = tuple(sorted((x - min_x, y - min_y) for x, y in image))
        if best is None or normalized < best:
            best = normalized
    return best


def canonicalize(shape: Shape) -> Shape:
    """Canonical representative of the shape; phi and c are unchanged."""
    return type(shape).of(canonical_cells(_members(shape)))


def is_edge_connected(points: Iterable[Cell]) -> bool:
    """True if the cells form one edge-connected component."""
    cells = set(points)
    if not cells:
        return False
    stack = [next(iter(cells))]
    seen = {stack[0]}
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)
