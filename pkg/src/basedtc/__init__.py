"""Based topological complexity: cup-length lower bounds, category upper
bounds and the path formulas relating tc_n, TC_n, ltc_n and LTC_n."""

from .algebra import (
    GF2,
    ZZ,
    AlgebraError,
    Coefficients,
    Element,
    Generator,
    GradedAlgebra,
    ParseError,
    Presentation,
    add,
    multiply,
    normalize_word,
    parse_element,
    render,
)
from .bounds import (
    INF,
    BoundContradiction,
    BoundFact,
    IntervalTable,
    Quantity,
    default_grid,
    propagate,
    seed_facts,
    space_table,
    tc_table,
)
from .catalog import SpaceEntry, list_catalog, parse_designator, space
from .cuplength import CupLengthResult, cup_length, cup_length_power, nil_lower_bound
from .ringfile import load_ring, parse_ring
from .kunneth import inject, tensor_power
from .quotient import graded_basis, ideal_slice, is_zero_in_quotient

__version__ = "0.1.0"
