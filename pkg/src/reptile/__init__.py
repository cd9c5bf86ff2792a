"""Exact search and verification of trapezoid rep-tiles."""
from importlib import resources

from .exactfield import FieldError, QuadVal, RadicandMismatch, parse_quadval, qv
from .angles import AnglePi, DegreeTooHigh, ExactAngle, angle_fill_arrangements, cos_sin_exact, deg2_angle_list
from .trapezoid import TrapezoidSpec, canonical_polygon, make_general, make_isosceles, make_right, parse_trapezoid
from .filters import mtm_certificate, reptile_refuted, rr_candidates, ssts_certificate, verdict
from .tiling import PlacedTile, Tiling, parse_tiling, render_svg, serialize_tiling, substitute, verify_tiling
from .search import SearchOptions, SearchOutcome, refute_small_n, scale_factor, search_rep

__version__ = "0.1.0"


def bundled_tiling(name: str = "rep25_right_pi3_a1_8.txt") -> Tiling:
    """A tiling file shipped with the package."""
    return parse_tiling(resources.files(__name__).joinpath("data", name).read_text())
