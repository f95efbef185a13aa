"""Constructive module decomposition over pp-, Bezout and Dedekind test rings."""
from .rings import Element, Idempotent, Integers, Product, Quadratic, Residue
from .ideals import FinGenIdeal
from .matrices import RingMatrix
from .lattice import BACKEND

__version__ = "0.1.0"
