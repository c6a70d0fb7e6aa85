"""Flag graphs of maniplexes and polytopes: coset enumeration, voltage
covers, automorphisms, symmetry type graphs and the family-1 / family-2 /
alternating / higher-rank constructions."""

from .errors import ManiforgeError, ParseError, ValidationError
from .flags import (Maniplex, Premaniplex, dual, faces, isomorphic, opposite, parse,
                    petrial, petrie_polygons, read, serialize, validate, write)
from .groups import FreeActionGroup, close_group, homomorphism_well_defined
from .todd_coxeter import Presentation, coxeter_presentation, parse_presentation
from .voltage import (VoltageOperator, VoltagePremaniplex, builtin_operator, derived_graph,
                      lift_check, operator_apply, operator_compose, operator_theta, quotient)
from .analysis import automorphisms, check_polytopality, report, symmetry_type_graph
from .constructions import (build_alternating, build_family1, build_family2, build_higher_rank,
                            catalog, chiral_polytope, example_4_20, regular_polytope)

__version__ = "0.1.0"
