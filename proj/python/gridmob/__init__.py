"""Shortest-path mobility on obstacle grids: presence, coverage and degree."""

from ._gridmob import (
    Environment,
    GridmobError,
    coverage,
    coverage_zone6,
    degree,
    distribution,
    load_environment,
    parse_environment,
    path_count,
    simulate,
    through_counts,
    total_variation,
)

__all__ = [
    "Environment",
    "GridmobError",
    "coverage",
    "coverage_zone6",
    "degree",
    "distribution",
    "load_environment",
    "parse_environment",
    "path_count",
    "simulate",
    "through_counts",
    "total_variation",
]
