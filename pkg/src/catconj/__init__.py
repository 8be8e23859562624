"""Finite category kernel: extranatural transformations, adjunctions of two
variables, conjugation, and closed monoidal structure."""

from .fincat import (
    Category,
    FinCategory,
    Functor,
    NatTrans,
    ProductCategory,
    Profunctor,
    Report,
    StructuralError,
    Violation,
    check_functor,
    check_nat_trans,
    opposite,
    poset_category,
    product,
    terminal,
    validate_category,
)
from .extranat import ExtranatFrame, ExtranatTrans, check_extranatural, standard_frame
from .adjoint import Adjunction, check_adjunction, conjugate_left, conjugate_right
from .twovar import (
    ShapeFrame,
    TwoVarAdjunctionL,
    TwoVarAdjunctionR,
    check_two_var,
    conjugate2_left,
    conjugate2_right,
    conjugate_shape,
)
from .closedmon import ClosedMonoidalCategory, MonoidalCategory, check_closed
from .instances import chain, delooping, group_category, powerset, search_nonclosed_map, set_map_adjunctions
from .ekgraph import Signature, composable, ek_graph, evaluate

__version__ = "0.1.0"
