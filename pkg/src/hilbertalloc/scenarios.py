"""Adversary scenarios that lower-bound every online strategy.

Each scenario pits the first allocation choice against an adversary who picks
the rest of the request sequence afterwards.  The reported ratio is the
minimum over the considered first moves of the maximum penalty the adversary
can force, relative to the offline optimum; every phi value is recomputed
from the geometry primitives rather than hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .geometry import StepFunction, Town, rectilinear_phi, town_phi


@dataclass(frozen=True)
class ScenarioReport:
    """phi values per case, per-first-move worst ratios, and their minimum."""

    scenario: str
    phi_values: dict[str, float]
    branch_ratios: dict[str, float]
    ratio: float
    note: str = ""


def discrete_3x3_scenario() -> ScenarioReport:
    """Towns on a 3x3 grid, first request 4: the classic two-opening analysis.

    Opening with the 2x2 square draws the request for the remaining five
    points, whose L shape is expensive; the offline player instead pairs an
    L-tetromino with the five-point block.  The L-tetromino stands in for
    the non-square openings; against it the adversary switches to five
    singleton requests, which an offline player serves after a square.
    Every total is recomputed from the geometry primitives.
    """
    grid = [(x, y) for x in range(3) for y in range(3)]
    square = Town.of([(1, 1), (2, 1), (1, 2), (2, 2)])
    forced_rest = Town.of(set(grid) - square.points)
    ell = Town.of([(0, 0), (1, 0), (2, 0), (0, 1)])
    block5 = Town.of([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)])

    square_phi = town_phi(square)
    forced_phi = town_phi(forced_rest)
    ell_phi = town_phi(ell)
    block5_phi = town_phi(block5)

    # Offline optimum for the (4, 5) sequence: the L plus the block beats
    # every other split of the nine points.
    offline_pair = min(
        max(town_phi(Town.of(pts)), town_phi(Town.of(set(grid) - set(pts))))
        for pts in combinations(grid, 4)
    )
    square_first = max(square_phi, forced_phi) / offline_pair
    ell_first = ell_phi / square_phi

    return ScenarioReport(
        scenario="discrete-3x3",
        phi_values={
            "square_then_forced_rest": forced_phi,
            "ell_tetromino": ell_phi,
            "block_pentomino": block5_phi,
            "square_tetromino": square_phi,
        },
        branch_ratios={
            "square_first": square_first,
            "ell_first": ell_first,
        },
        ratio=min(square_first, ell_first),
        note="two-opening case analysis; the square opening is the binding one",
    )


def continuous_half_scenario() -> ScenarioReport:
    """First request 1/2 of the unit square; adversary reacts.

    A square opening of side sqrt(1/2) forces the second half-area region
    into the notched complement; a half-rectangle opening is answered with
    arbitrarily small follow-ups that an offline player serves as squares.
    """
    side = math.sqrt(0.5)
    notch = 1.0 - side

    half_square = StepFunction((0.0, side), (side,))
    rect_x = StepFunction((0.0, 1.0), (0.5,))
    rect_y = StepFunction((0.0, 0.5), (1.0,))
    ell_marginal = StepFunction((0.0, notch, 1.0), (1.0, notch))
    unit = StepFunction((0.0, 1.0), (1.0,))

    square_phi = rectilinear_phi(half_square, half_square, 0.5)
    rect_phi = rectilinear_phi(rect_x, rect_y, 0.5)
    ell_phi = rectilinear_phi(ell_marginal, ell_marginal, 0.5)
    unit_phi = rectilinear_phi(unit, unit, 1.0)

    square_first = max(square_phi, ell_phi) / rect_phi
    rect_first = rect_phi / unit_phi

    return ScenarioReport(
        scenario="continuous-half",
        phi_values={
            "half_square": square_phi,
            "half_rectangle": rect_phi,
            "notched_complement": ell_phi,
            "unit_square": unit_phi,
        },
        branch_ratios={
            "square_first": square_first,
            "rectangle_first": rect_first,
        },
        ratio=min(square_first, rect_first),
        note=(
            "a positive gap survives for every nearby first move because phi "
            "varies continuously with the shape; under these two responses "
            "the gap is at least ratio - 1"
        ),
    )


SCENARIOS = {
    "discrete-3x3": discrete_3x3_scenario,
    "continuous-half": continuous_half_scenario,
}
