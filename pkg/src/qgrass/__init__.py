"""Exact symbolic engine for quantum Grassmannians and their Drinfeld duals."""

from .coeffs import LaurentScalar, LocScalar, QSeries, NotDivisible, NegativeValuation
from .ncalg import NCPoly, Presentation, build_manin_presentation, check_confluence
from .hopf import GLElement, Tensor, coproduct, counit, quantum_determinant
from .minors import MinorIndex, plucker_coordinate, quantum_minor
from .bigcell import LocElem, big_cell_generator, verify_tij_manin
from .drinfeld import chi_presentation, specialize_mu, specialize_vee, to_vee_coordinates
from .completion import TruncElem, coideal_membership, invert_unit_series, verify_main_theorem
from .parsing import ParseError, UnknownGenerator, parse_expression
from .tasks import Report, VerifyTask, run_task

__version__ = "0.1.0"
