"""Twisted homology of configuration spaces of the punctured plane, computed
from a Fox-Neuwirth cell complex and from a quantum-shuffle bar complex, plus
brute-force resultant character sums over finite fields.
"""

from .exactalg import Cyclotomic, SparseMatrix, gaussian_binomial, rank, smith_normal_form
from .foxneuwirth import Cell, ChainComplex, HomologyReport, d_complex, enumerate_cells, homology_dims
from .qshuffle import f_complex, f_homology_dims
from .shuffle import LocalSystemParams

__version__ = "0.1.0"
