"""Hilbert-curve online shape allocation and its exact distance analysis.

The package has three layers: exact Manhattan-distance geometry for grid
shapes (:mod:`.geometry`), the curve itself and the online allocator built
on it (:mod:`.curve`, :mod:`.allocator`), and the analysis that certifies
the strategy's competitive factors (:mod:`.worstcase`, :mod:`.oracle`,
:mod:`.scenarios`).  The :mod:`.cli` module exposes everything as
subcommands.
"""

from .allocator import (
    AllocationRequest,
    AllocationState,
    Region,
    allocate_next,
    fractional_pixel_count,
    max_phi,
    minimal_city_level,
    round_up_size,
)
from .curve import (
    CurveOrder,
    MoveString,
    build_order,
    generate_moves,
    min_refinement_level,
    subsquare_span,
)
from .geometry import (
    ExactRational,
    PixelCity,
    Profile,
    StepFunction,
    Town,
    canonical_cells,
    canonicalize,
    city_phi,
    city_total_distance,
    city_total_distance_by_integration,
    column_profile,
    is_edge_connected,
    lambda_correction,
    marginal_integral,
    phi,
    rectilinear_phi,
    row_profile,
    town_phi,
    town_total_distance,
)
from .oracle import (
    optimal_city_total,
    optimal_phi,
    optimal_town_bruteforce,
    optimal_town_total,
    rho,
)
from .scenarios import (
    ScenarioReport,
    continuous_half_scenario,
    discrete_3x3_scenario,
)
from .worstcase import (
    PHI_LOWER_BOUND,
    BoundReport,
    WorstCaseTable,
    WorstShapeRecord,
    blowup_phi,
    competitive_factor,
    conjectured_phi_lower_bound,
    enumerate_worst,
    hilbert_threshold,
    lambda_tail_bound,
    refined_lambda_tail_bound,
    upper_bound,
    worst_table,
)

__version__ = "0.1.0"
