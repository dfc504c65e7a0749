"""Polyplexes and hyperplane covers of multidimensional (0,1)-matrices.

All arithmetic is exact. Indices are 0-based tuples in the Python API; the
text formats and the command line use 1-based coordinates.
"""
from .covers import (CoverTable, cover_is_unique, deficiency, induced_matrix, is_cover,
                     min_cover, structural_checks)
from .errors import (ChecksumError, FormatError, GuardError, PolyplexError,
                     PreconditionError, ShapeError)
from .extremal import ExtremalityVerdict, is_diagonally_extremal, is_extremal
from .matching import Polyplex, find_diagonal, has_polydiagonal, max_polyplex, max_weight
from .tensor import BinaryTensor, canonical_form, equivalent

__version__ = "0.1.0"

__all__ = [
    "BinaryTensor", "ChecksumError", "CoverTable", "ExtremalityVerdict", "FormatError",
    "GuardError", "Polyplex", "PolyplexError", "PreconditionError", "ShapeError",
    "canonical_form", "cover_is_unique", "deficiency", "equivalent", "find_diagonal",
    "has_polydiagonal", "induced_matrix", "is_cover", "is_diagonally_extremal",
    "is_extremal", "max_polyplex", "max_weight", "min_cover", "structural_checks",
]
