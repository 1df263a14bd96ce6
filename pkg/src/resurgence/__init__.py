"""Exact containment invariants of monomial ideals and fat point schemes."""

from .config import RunConfig, parse_config
from .engine import (ContainmentWitness, K_search, closure_in_power, conjecture_checks,
                     dd_window, denkert_estimate, denkert_precondition, mt3_criteria, rho_hat,
                     rho_int_search, symbolic_in_closure, symbolic_in_power, verify_witness)
from .errors import (CharacteristicError, DimensionError, NotInSymbolicPowerError, ParseError,
                     PreconditionError, ResourceLimitError, ResurgenceError, SeedError,
                     UndefinedValueError, UnsupportedDimensionError)
from .fatpoints import (CoordinatePrime, MonomialFatScheme, alpha_symbolic, coordinate_points,
                        ideal_of, in_symbolic_power, parse_scheme, format_scheme, sdefect_zero,
                        symbolic_power, waldschmidt)
from .monomial import (MonomialIdeal, alpha, ideal_in_power, in_power, intersect, minimalize,
                       multiply, parse_ideal, format_ideal, power)
from .newton import (NewtonPolyhedron, closure_of_power, facet_valuations, integral_closure,
                     is_normal_up_to, np_contains)
from .report import ResurgenceReport, build_report
from .vertices import decompose, verify_vertex_theorem, vertex_scheme

__all__ = [name for name in dir() if not name.startswith("_")]
