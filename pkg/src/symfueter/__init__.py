"""Exact symbolic toolkit for symplectic and orthogonal Fueter constructions."""

from .exactnum import GaussianRational, Rational
from .polyspinor import SpinorFunction, SymplecticPolynomial
from .operalg import WeylOperator, op_apply, op_commutator, op_compose
from .catalog import make_Ds, make_Euler, make_sp_generator, make_Xs, make_Z, make_Z_dual
from .fueter import build_M, fischer_decompose, fueter_map, is_monogenic, materialize
from .clifford import CliffordElement, CliffordPolynomial, dirac_apply

__version__ = "0.1.0"
