"""Coloured Temperley-Lieb algebras: graph basis, Jucys-Murphy elements,
twist families of coloured Jones polynomials and their Mahler measures."""

from .ring import A, DELTA, LaurentPoly, RationalFn, delta_closed, qint
from .skein import PlanarDiagram, SkeinElement, braid_to_skein, bracket_state_sum, inner_product
from .recoupling import jones_wenzl, lambda_closed, theta_closed
from .cell import AdmissibleSequence, CellElement, cell_inner, cell_mul, cell_star, eta, from_skein, to_skein
from .jm import ft_interpolation, jm_eigenvalue, jm_element
from .twist import RecursiveTangle, TwistFamily, colored_jones_twist, full_twist, pair_power, twist_family
from .mahler import BivariatePoly, mahler_1var, mahler_2var

__version__ = "0.1.0"
