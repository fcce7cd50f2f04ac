"""Torsion of the identity class for boundary actions on affine buildings.

The package computes with three layers of structure:

  * exact integer linear algebra (Smith normal form, element orders in
    finitely presented abelian groups), in :mod:`buildingtorsion.intmat`;
  * finite spherical geometry (flags over GF(q), relative positions,
    sphere counts), in :mod:`buildingtorsion.fq`, :mod:`.weyl` and
    :mod:`.spherical`, plus p-adic lattice balls in :mod:`.padic`;
  * quotient complexes of rank-two affine buildings and the relation
    systems annihilating the identity class of their boundary crossed
    products, in :mod:`buildingtorsion.complexes` and :mod:`.torsion`.

The command line entry point lives in :mod:`buildingtorsion.cli`.
"""

from .errors import (
    DimensionError,
    FieldError,
    IncompleteLinkError,
    InconsistencyError,
    LinkValidationError,
    MultiplicityError,
    ParseError,
    SizeLimitError,
    StructureError,
)
from .intmat import (
    ElementOrder,
    IntMatrix,
    SnfResult,
    det,
    element_order,
    format_matrix,
    in_row_span,
    parse_matrix,
    snf,
)
from .fq import (
    FieldSpec,
    Flag,
    Subspace,
    enumerate_full_flags,
    enumerate_subspaces,
    gaussian_binomial,
)
from .weyl import Permutation, cycle_perm, length, poincare_polynomial
from .spherical import (
    count_at_distance,
    expected_count,
    position_counts,
    relative_position,
)
from .incidence import IncidenceStructure, plane_order
from .padic import BuildingBall, LatticeVertex, ball, estimate_ball_size, link
from .complexes import (
    A2Complex,
    CellCounts,
    DirectedCell,
    QuotientGraph,
    cell_counts,
    format_complex,
    format_graph,
    link_of,
    parse_complex,
    parse_graph,
    search_presentation,
    torus_complex,
    transfer_matrix,
    validate_links,
)
from .torsion import (
    BoundResult,
    EulerCharacteristic,
    RelationPresentation,
    a2_relations,
    annihilator_family,
    bound,
    chi,
    tree_relations,
)

__version__ = "0.1.0"

__all__ = [
    "A2Complex",
    "BoundResult",
    "BuildingBall",
    "CellCounts",
    "DimensionError",
    "DirectedCell",
    "ElementOrder",
    "EulerCharacteristic",
    "FieldError",
    "FieldSpec",
    "Flag",
    "IncidenceStructure",
    "IncompleteLinkError",
    "InconsistencyError",
    "IntMatrix",
    "LatticeVertex",
    "LinkValidationError",
    "MultiplicityError",
    "ParseError",
    "Permutation",
    "QuotientGraph",
    "RelationPresentation",
    "SizeLimitError",
    "SnfResult",
    "StructureError",
    "Subspace",
    "a2_relations",
    "annihilator_family",
    "ball",
    "bound",
    "cell_counts",
    "chi",
    "count_at_distance",
    "cycle_perm",
    "det",
    "element_order",
    "enumerate_full_flags",
    "enumerate_subspaces",
    "estimate_ball_size",
    "expected_count",
    "format_complex",
    "format_graph",
    "format_matrix",
    "gaussian_binomial",
    "in_row_span",
    "length",
    "link",
    "link_of",
    "parse_complex",
    "parse_graph",
    "parse_matrix",
    "plane_order",
    "poincare_polynomial",
    "position_counts",
    "relative_position",
    "search_presentation",
    "snf",
    "torus_complex",
    "transfer_matrix",
    "tree_relations",
    "validate_links",
]
