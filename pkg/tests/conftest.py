"""Shared test helpers: reference tables, naive oracles, random shapes."""

from __future__ import annotations

import csv
import random
from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def load_worst_city() -> dict[int, dict]:
    rows = {}
    with open(DATA / "worst_city.csv") as fh:
        for row in csv.DictReader(fh):
            rows[int(row["n"])] = {
                "c": Fraction(row["c"]),
                "phi": float(row["phi"]),
                "Phi": float(row["Phi"]) if row["Phi"] else None,
            }
    return rows


def load_worst_town() -> dict[int, dict]:
    rows = {}
    with open(DATA / "worst_town.csv") as fh:
        for row in csv.DictReader(fh):
            rows[int(row["n"])] = {
                "c": int(row["c"]),
                "rho": float(row["rho"]) if row["rho"] else None,
                "phi": float(row["phi"]),
                "Phi": float(row["Phi"]) if row["Phi"] else None,
            }
    return rows


@pytest.fixture(scope="session")
def worst_city_expected():
    return load_worst_city()


@pytest.fixture(scope="session")
def worst_town_expected():
    return load_worst_town()


def naive_town_distance(points) -> int:
    """Quadratic pairwise sum; the independent check for the profile route."""
    pts = list(points)
    total = 0
    for i, (x1, y1) in enumerate(pts):
        for x2, y2 in pts[i + 1 :]:
            total += abs(x1 - x2) + abs(y1 - y2)
    return total


def random_polyomino(rng: random.Random, n: int) -> set[tuple[int, int]]:
    """Random edge-connected cell set grown from the origin."""
    cells = {(0, 0)}
    frontier = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    while len(cells) < n:
        pick = rng.randrange(len(frontier))
        frontier[pick], frontier[-1] = frontier[-1], frontier[pick]
        cell = frontier.pop()
        if cell in cells:
            continue
        cells.add(cell)
        x, y = cell
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb not in cells:
                frontier.append(nb)
    return cells


def random_town(rng: random.Random, n: int, span: int = 12) -> set[tuple[int, int]]:
    """n distinct random grid points in a span x span box."""
    points: set[tuple[int, int]] = set()
    while len(points) < n:
        points.add((rng.randrange(span), rng.randrange(span)))
    return points
