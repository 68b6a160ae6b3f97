"""Exact-arithmetic toolkit for difference operators on grids, generic
functions over rational-function towers, Ramsey searches, module maps over
PIDs and finite retraction problems."""

from .linsolve import Feasible, Infeasible, LinearSystem, solve
from .nabla import (Grid, IsPolynomial, NoBound, NotPolynomial, TabulatedFunction, degree_detect,
                    nabla_1d, nabla_apply, nabla_chain, nabla_commute_check, newton_interpolate,
                    polynomiality_test, product_table)
from .polyring import (MultiPoly, alternating_weights, lagrange_identity, monomials_up_to,
                       vandermonde_poly, vandermonde_weight)
from .ratfunc import RatFunc, RationalFunctionField
from .scalars import GF, QQ, Fp, IncompatibleFields, embed, parse_field, parse_scalar
from .tower import NonZeroWitness, StageError, Tower

__version__ = "0.1.0"
