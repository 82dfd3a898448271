"""Reference optimal values and an exhaustive optimal-town search.

Optimal totals for towns and cities (n <= 65) and optimal phi values
(65 <= n <= 80) ship with the package as CSV data.  The brute-force search
reproduces the small-n town optima independently of those tables: it scans
every candidate bounding box and minimizes the exact pairwise distance by
depth-first enumeration with an admissible cost bound, so pruning never
changes the result.
"""

from __future__ import annotations

import csv
import logging
import math
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .geometry import Town, canonicalize

log = logging.getLogger(__name__)

# Refuse single-box searches with more raw candidate subsets than this.
SEARCH_GUARD = 10_000_000


def _data_rows(name: str):
    path = resources.files("hilbertalloc").joinpath("data", name)
    with path.open("r", encoding="utf-8") as fh:
        yield from csv.DictReader(fh)


@lru_cache(maxsize=None)
def _town_table() -> dict[int, int]:
    return {int(r["n"]): int(r["c"]) for r in _data_rows("optimal_town.csv")}


@lru_cache(maxsize=None)
def _city_table() -> dict[int, Fraction]:
    return {int(r["n"]): Fraction(r["c"]) for r in _data_rows("optimal_city.csv")}


@lru_cache(maxsize=None)
def _phi_table() -> dict[int, float]:
    return {int(r["n"]): float(r["phi"]) for r in _data_rows("optimal_phi.csv")}


def optimal_town_total(n: int) -> int:
    """Optimal (minimum) total pairwise distance of an n-town, n <= 65."""
    try:
        return _town_table()[n]
    except KeyError:
        raise ValueError("n out of table") from None


def optimal_city_total(n: int) -> Fraction:
    """Optimal total distance of a city of n unit cells, n <= 65."""
    try:
        return _city_table()[n]
    except KeyError:
        raise ValueError("n out of table") from None


def optimal_phi(n: int) -> float:
    """phi of the optimal n-town for 65 <= n <= 80."""
    try:
        return _phi_table()[n]
    except KeyError:
        raise ValueError("n out of table") from None


def rho(n: int) -> float:
    """Ratio of the strategy's worst n-town distance to the optimal one."""
    if n == 1:
        raise ValueError("undefined (optimal distance 0)")
    if not 2 <= n <= 64:
        raise ValueError("n out of table")
    from .worstcase import worst_table  # deferred to avoid an import cycle

    return worst_table("town").total(n) / optimal_town_total(n)


def default_boxes(n: int) -> list[tuple[int, int]]:
    """Candidate bounding boxes w x h, w <= h <= ceil(sqrt(n)) + 2."""
    limit = math.isqrt(n - 1) + 1 + 2 if n > 1 else 3
    boxes = [
        (w, h)
        for h in range(1, limit + 1)
        for w in range(1, h + 1)
        if w * h >= n
    ]
    boxes.sort(key=lambda wh: (wh[0] * wh[1], wh))
    return boxes


def _insertion_floor(n: int) -> list[int]:
    # g[k]: least possible added distance when a point joins a k-point set;
    # the k nearest distinct grid points fill diamonds of 4*d points each.
    g = [0] * n
    for k in range(1, n):
        remaining, d, total = k, 1, 0
        while remaining:
            take = min(remaining, 4 * d)
            total += take * d
            remaining -= take
            d += 1
        g[k] = total
    return g


def _search_box(width: int, height: int, n: int, best: list):
    cells = [(x, y) for y in range(height) for x in range(width)]
    m = len(cells)
    floor = _insertion_floor(n)
    suffix = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        suffix[k] = suffix[k + 1] + floor[k]
    chosen: list[tuple[int, int]] = []

    def extend(first: int, cost: int) -> None:
        k = len(chosen)
        if k == n:
            if cost < best[0]:
                best[0] = cost
                best[1] = tuple(chosen)
            return
        if cost + suffix[k] >= best[0]:
            return
        for j in range(first, m - (n - k) + 1):
            x, y = cells[j]
            added = sum(abs(x - a) + abs(y - b) for a, b in chosen)
            total = cost + added
            if total + suffix[k + 1] >= best[0]:
                continue
            chosen.append((x, y))
            extend(j + 1, total)
            chosen.pop()

    extend(0, 0)


def optimal_town_bruteforce(
    n: int, box: tuple[int, int] | None = None
) -> tuple[int, Town]:
    """Exhaustively minimize total pairwise distance over n-point towns.

    Searches every box of ``default_boxes(n)`` (or the single given box) and
    returns the minimum with a translation-canonical witness.  Boxes whose
    raw subset count exceeds SEARCH_GUARD are skipped in the default sweep
    (logged); an explicitly requested oversized box is an error.
    """
    if n < 1:
        raise ValueError("invalid size")
    if box is not None:
        width, height = box
        if width * height < n:
            raise ValueError("box too small for n points")
        if math.comb(width * height, n) > SEARCH_GUARD:
            raise ValueError(
                "search too large; widen via profile search or use embedded table"
            )
        boxes = [(min(width, height), max(width, height))]
    else:
        boxes = []
        for candidate in default_boxes(n):
            if math.comb(candidate[0] * candidate[1], n) > SEARCH_GUARD:
                log.info("skipping box %sx%s for n=%s (guard)", *candidate, n)
                continue
            boxes.append(candidate)
    best: list = [math.inf, None]
    for width, height in boxes:
        _search_box(width, height, n, best)
    if best[1] is None:
        raise ValueError("no feasible box searched")
    return int(best[0]), canonicalize(Town.of(best[1]))
