"""Difference-bound and octagonal shape domains with terminating widenings."""

from ._core import (
    DbmShape,
    OctShape,
    analyze,
    close_text,
    dbm_join,
    dbm_leq,
    dbm_meet,
    dbm_widen_standard,
    oct_join,
    oct_leq,
    oct_meet,
    oct_widen_standard,
    search_divergence,
)

__all__ = [
    "DbmShape",
    "OctShape",
    "analyze",
    "close_text",
    "dbm_join",
    "dbm_leq",
    "dbm_meet",
    "dbm_widen_standard",
    "oct_join",
    "oct_leq",
    "oct_meet",
    "oct_widen_standard",
    "search_divergence",
]
