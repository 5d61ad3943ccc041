"""Exact computations with Whitney modules of matroids in the letter-place superalgebra."""

from .exact_linalg import IntMatrix, RationalMatrix, RowSpace, smith_normal_form
from .matroid import Matroid, freedom, from_circuits, from_matrix, rank_partition
from .superalgebra import Element, ext_mul, laplace_pair
from .tableaux import Partition, TabPair, Tableau, enumerate_standard_pairs, tab_element
from .whitney import Bidegree, graded_piece, straighten

__version__ = "0.1.0"
