"""Rank analysis of symbols over R, C and Z."""
from .analysis import (COMPLEX, CONSTANT, INTEGER, NOT_CONSTANT, REAL, UNKNOWN, RankVerdict, analyze,
                       constant_rank_complex, constant_rank_integer, constant_rank_real, generic_rank,
                       minor_sum_of_squares, minors_gcd_2d, rank_at, recheck_witness)

__all__ = ["COMPLEX", "CONSTANT", "INTEGER", "NOT_CONSTANT", "REAL", "UNKNOWN", "RankVerdict", "analyze",
           "constant_rank_complex", "constant_rank_integer", "constant_rank_real", "generic_rank",
           "minor_sum_of_squares", "minors_gcd_2d", "rank_at", "recheck_witness"]
