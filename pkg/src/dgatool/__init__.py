"""Exact-arithmetic engine for commutative differential graded algebras."""
from ._kernel import BACKEND
from .algebra import Element, TableDGA, build_table_dga, multiply, tensor_product, verify_positive_weights
from .errors import *  # noqa: F401,F403
from .linalg import RationalMatrix
from .sullivan import SullivanModel, realize_sullivan

__version__ = "0.1.0"
