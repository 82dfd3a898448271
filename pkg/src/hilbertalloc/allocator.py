"""Online allocation of contiguous Hilbert-curve segments.

Requests are served strictly in curve order starting at the upper-left
corner; once placed, a region never changes.  City mode subdivides the unit
square into 4**level pixels and accepts exact rational areas that are
multiples of the pixel area; town mode hands out points of an N x N grid
(N a power of two).  Region metrics are reported in grid units (pixel side
= 1), which leaves phi unchanged because it is scale-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .curve import build_order
from .geometry import (
    PixelCity,
    Town,
    city_total_distance,
    phi,
    town_total_distance,
)

Size = Union[int, Fraction]


@dataclass(frozen=True)
class AllocationRequest:
    """One job: an opaque id plus an area (city) or point count (town)."""

    id: str
    size: Size


@dataclass(frozen=True)
class Region:
    """An allocated contiguous curve interval and its derived metrics."""

    id: str
    start: int
    end: int
    level: int
    mode: str
    shape: Union[Town, PixelCity]
    total: Union[int, Fraction]
    phi: float

    @property
    def length(self) -> int:
        return self.end - self.start


class AllocationState:
    """Sequential allocation cursor; mutate from one thread only.

    City mode: ``AllocationState("city", level=R)`` carves the unit square
    into 4**R pixels.  Town mode: ``AllocationState("town", grid=N)`` hands
    out the N*N grid points.
    """

    def __init__(self, mode: str, *, level: int | None = None, grid: int | None = None):
        if mode == "city":
            if level is None or level < 0:
                raise ValueError("invalid level")
            self.level = level
        elif mode == "town":
            if grid is None or grid < 1 or grid & (grid - 1):
                raise ValueError("grid size must be a power of two")
            self.level = grid.bit_length() - 1
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.order = build_order(self.level)
        self.cursor = 0
        self.regions: list[Region] = []

    @property
    def capacity(self) -> int:
        """Total pixel (or point) budget of the run."""
        return self.order.count

    @property
    def grid_size(self) -> int:
        return self.order.size

    def _cells_for(self, size: Size) -> int:
        # Capacity is judged on the exact requested amount first, so an
        # overfull request reports "capacity exceeded" even when it is not
        # a pixel multiple.
        if size <= 0:
            raise ValueError("nonpositive size")
        if self.mode == "town":
            if size > self.capacity - self.cursor:
                raise ValueError("capacity exceeded")
            if size != int(size):
                raise ValueError("size not representable")
            return int(size)
        scaled = Fraction(size) * self.capacity
        if scaled > self.capacity - self.cursor:
            raise ValueError("capacity exceeded")
        if scaled.denominator != 1:
            raise ValueError("size not representable")
        return int(scaled)

    def allocate(self, request: AllocationRequest) -> Region:
        """Allocate the next curve segment for the request and return it."""
        count = self._cells_for(request.size)
        start, end = self.cursor, self.cursor + count
        cells = self.order.window_cells(start, end)
        if self.mode == "city":
            shape: Union[Town, PixelCity] = PixelCity.of(cells)
            total: Union[int, Fraction] = city_total_distance(shape)
        else:
            shape = Town.of(cells)
            total = town_total_distance(shape)
        region = Region(
            id=request.id,
            start=start,
            end=end,
            level=self.level,
            mode=self.mode,
            shape=shape,
            total=total,
            phi=phi(total, count),
        )
        self.cursor = end
        self.regions.append(region)
        return region

    def max_phi(self) -> float:
        if not self.regions:
            raise ValueError("empty allocation")
        return max(region.phi for region in self.regions)


def allocate_next(state: AllocationState, request: AllocationRequest) -> Region:
    return state.allocate(request)


def max_phi(state: AllocationState) -> float:
    return state.max_phi()


def fractional_pixel_count(region: Region, t: int) -> int:
    """Level-t pixels partially (not fully) covered by the region.

    A level-t pixel corresponds to an aligned run of 4**(level-t) consecutive
    curve indices, so only the first and last touched pixel can be partial.
    """
    if not 0 <= t <= region.level:
        raise ValueError("invalid level")
    block = 1 << (2 * (region.level - t))
    first = region.start // block
    last = (region.end - 1) // block
    if first == last:
        return 1 if region.length < block else 0
    partial = 0
    if region.start % block:
        partial += 1
    if region.end % block:
        partial += 1
    return partial


def minimal_city_level(sizes: Iterable[Size]) -> int:
    """Smallest level making every size an integer multiple of the pixel area."""
    level = 0
    for size in sizes:
        size = Fraction(size)
        if size <= 0:
            raise ValueError("nonpositive size")
        q = size.denominator
        if q & (q - 1):
            raise ValueError("size not representable")
        two_power = q.bit_length() - 1
        level = max(level, (two_power + 1) // 2)
    return level


def round_up_size(size: Size, level: int) -> Fraction:
    """Pad a size up to the next multiple of 4**-level."""
    if size <= 0:
        raise ValueError("nonpositive size")
    pixels = 1 << (2 * level)
    return Fraction(math.ceil(Fraction(size) * pixels), pixels)
