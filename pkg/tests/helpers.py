"""Shared model/analysis cache so test modules do not recompute stacks."""

from fractions import Fraction
from functools import lru_cache

from kmu import analyze_structure, build_boeckx_model

GRID_AB = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
GRID_N = [2, 3, 4]


@lru_cache(maxsize=None)
def model(n, alpha, beta):
    return build_boeckx_model(n, Fraction(alpha), Fraction(beta))


@lru_cache(maxsize=None)
def analysis(n, alpha, beta):
    return analyze_structure(model(n, alpha, beta))


def grid_points():
    return [(n, a, b) for (a, b) in GRID_AB for n in GRID_N]
