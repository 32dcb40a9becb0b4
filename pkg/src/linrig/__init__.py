"""Exact computations for matrix rigidity: circuits, structured matrices,
join equations, rigidity bounds and degree formulas."""
from __future__ import annotations

from .cyclotomic import Cyclotomic, root_of_unity
from .matrix import Matrix, complementary_minor, det, minor, rank

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "Matrix",
    "complementary_minor",
    "det",
    "minor",
    "rank",
    "root_of_unity",
]
