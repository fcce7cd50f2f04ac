"""Relation systems for the class of the identity function on the boundary,
and the closed-form torsion bounds.

For a finite graph or triangle complex covered by a building, the classes
of compactly supported boundary functions satisfy linear relations with
integer coefficients.  Presenting those relations as a matrix over the free
abelian group on the natural generators lets Smith normal form decide the
order of the identity class [I] exactly, which the closed-form bounds can
then be checked against.

Generators for a graph: I and one generator per dart.  For a triangle
complex: I; two generators per directed cell (the cell class d and its
complement class dbar); and three per edge (the edge class e, its
complement ebar, and the hat class ehat refining the complement along
chambers)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    A2Complex,
    QuotientGraph,
    cell_vertex,
    directed_cells,
    cell_index,
    extensions_of_edge,
    transfer_matrix,
    validate_links,
)
from .errors import DimensionError, InconsistencyError, StructureError
from .intmat import ElementOrder, IntMatrix, element_order, in_row_span


@dataclass(frozen=True)
class RelationPresentation:
    """Labeled relation matrix; rows are relations, columns generators.

    Generator 0 is always I.  row_tags records, per kept row, which family
    of relations produced it."""

    generators: tuple
    matrix: IntMatrix
    row_tags: tuple

    def __post_init__(self):
        assert self.generators[0] == "I"
        assert self.matrix.cols == len(self.generators)
        assert self.matrix.rows == len(self.row_tags)

    def order_of_identity(self) -> ElementOrder:
        return element_order(self.matrix, 0)

    def identity_multiple_in_span(self, m) -> bool:
        vec = [0] * len(self.generators)
        vec[0] = m
        return in_row_span(self.matrix, vec)


def _dedupe(rows, tags):
    seen = {}
    out_rows, out_tags = [], []
    for row, tag in zip(rows, tags):
        key = tuple(row)
        if key in seen:
            continue
        seen[key] = tag
        out_rows.append(row)
        out_tags.append(tag)
    return out_rows, out_tags


def tree_relations(g: QuotientGraph) -> RelationPresentation:
    """Relations for a graph quotient: per vertex, the darts leaving it sum
    to [I]; per geometric edge, the two opposite darts sum to [I]."""
    if not g.is_connected():
        raise StructureError("graph must be connected")
    generators = ["I"] + [f"e({d})" for d in range(g.n_darts)]
    rows, tags = [], []
    for v in range(g.n_vertices):
        row = [0] * len(generators)
        row[0] = -1
        for d in range(g.n_darts):
            if g.origin(d) == v:
                row[1 + d] += 1
        rows.append(row)
        tags.append(f"vertex-origin-sum {v}")
    for i in range(len(g.geom_edges)):
        row = [0] * len(generators)
        row[0] = -1
        row[1 + 2 * i] += 1
        row[1 + 2 * i + 1] += 1
        rows.append(row)
        tags.append(f"edge-pair {i}")
    rows, tags = _dedupe(rows, tags)
    return RelationPresentation(
        generators=tuple(generators),
        matrix=IntMatrix.from_rows(rows),
        row_tags=tuple(tags),
    )


def _a2_generators(x: A2Complex):
    labels = ["I"]
    for c in range(x.n2):
        for s in range(3):
            labels.append(f"d({c},{s})")
    for c in range(x.n2):
        for s in range(3):
            labels.append(f"dbar({c},{s})")
    for e in range(x.n1):
        labels.append(f"e({e})")
    for e in range(x.n1):
        labels.append(f"ebar({e})")
    for e in range(x.n1):
        labels.append(f"ehat({e})")
    return labels


def a2_relations(x: A2Complex, include_mk=False) -> RelationPresentation:
    """Relations for a triangle-complex quotient.

    Families: per vertex, cells rooted there sum to [I]; per chamber, the
    six cell classes on it sum to [I]; per edge, the three edge classes sum
    to [I]; per vertex, edges leaving it (and dually entering it) sum to
    [I]; per edge, [ehat] expands into the complement classes of the cells
    extending it.  With include_mk, each cell class equals the sum of its
    distance-k extensions for k = 1, 2."""
    q, report = validate_links(x)
    if q is None:
        raise InconsistencyError(
            "links must validate before building relations: " + "; ".join(report)
        )
    labels = _a2_generators(x)
    ncells = 3 * x.n2
    d_at = lambda ci: 1 + ci
    dbar_at = lambda ci: 1 + ncells + ci
    e_at = lambda e: 1 + 2 * ncells + e
    ebar_at = lambda e: 1 + 2 * ncells + x.n1 + e
    ehat_at = lambda e: 1 + 2 * ncells + 2 * x.n1 + e
    cells = directed_cells(x)
    rows, tags = [], []

    def blank():
        return [0] * len(labels)

    for v in range(x.n_vertices):
        row = blank()
        row[0] = -1
        for cell in cells:
            if cell_vertex(x, cell, 0) == v:
                row[d_at(cell_index(cell))] += 1
        rows.append(row)
        tags.append(f"vertex-cell-sum {v}")
    for c in range(x.n2):
        row = blank()
        row[0] = -1
        for s in range(3):
            ci = 3 * c + s
            row[d_at(ci)] += 1
            row[dbar_at(ci)] += 1
        rows.append(row)
        tags.append(f"chamber-pair-sum {c}")
    for e in range(x.n1):
        row = blank()
        row[0] = -1
        row[e_at(e)] += 1
        row[ebar_at(e)] += 1
        row[ehat_at(e)] += 1
        rows.append(row)
        tags.append(f"edge-triple {e}")
    for v in range(x.n_vertices):
        row = blank()
        row[0] = -1
        for e in range(x.n1):
            if x.tail(e) == v:
                row[e_at(e)] += 1
        rows.append(row)
        tags.append(f"vertex-out-sum {v}")
        row = blank()
        row[0] = -1
        for e in range(x.n1):
            if x.head(e) == v:
                row[ebar_at(e)] += 1
        rows.append(row)
        tags.append(f"vertex-in-sum {v}")
    for e in range(x.n1):
        row = blank()
        row[ehat_at(e)] += 1
        for cell in extensions_of_edge(x, e):
            row[dbar_at(cell_index(cell))] -= 1
        rows.append(row)
        tags.append(f"hat-expansion {e}")
    if include_mk:
        for k in (1, 2):
            mk = transfer_matrix(x, k)
            for cell in cells:
                ci = cell_index(cell)
                row = blank()
                row[d_at(ci)] += 1
                for di in range(ncells):
                    row[d_at(di)] -= mk.at(di, ci)
                rows.append(row)
                tags.append(f"position-transfer k={k} cell {ci}")
    rows, tags = _dedupe(rows, tags)
    return RelationPresentation(
        generators=tuple(labels),
        matrix=IntMatrix.from_rows(rows),
        row_tags=tuple(tags),
    )


@dataclass(frozen=True)
class BoundResult:
    value: int
    case: str


def bound(n, q, n0) -> BoundResult:
    """The closed-form annihilating bound m with m [I] = 0 for a rank-n
    quotient with n0 vertices and residue parameter q.

    Rank 2 is special: the bound divides by 3 unless q = 1 mod 3, and
    q = 0 mod 3 forces 3 | n0 (no quotient exists otherwise)."""
    if n < 1:
        raise DimensionError("rank must be >= 1")
    if q < 2:
        raise DimensionError("residue parameter must be >= 2")
    if n0 < 1:
        raise DimensionError("vertex count must be >= 1")
    if n == 2:
        r = q % 3
        if r == 1:
            return BoundResult(n0 * (q * q - 1), "q ≡ 1 mod 3")
        if r == 0 and n0 % 3 != 0:
            raise StructureError(
                "q ≡ 0 mod 3 forces the vertex count to be a multiple of 3"
            )
        return BoundResult(n0 * (q * q - 1) // 3, f"q ≡ {r} mod 3")
    if n % 2 == 1:
        return BoundResult(n0 * (q - 1), "n odd")
    return BoundResult(n0 * (q * q - 1), "n even")


@dataclass(frozen=True)
class EulerCharacteristic:
    value: Fraction
    integral: bool


def chi(n, q, n0) -> EulerCharacteristic:
    """Euler characteristic (-1)^n n0 prod_{i=1..n}(q^i - 1) / (n + 1),
    as an exact rational with an integrality flag."""
    if n < 1:
        raise DimensionError("rank must be >= 1")
    if q < 1:
        raise DimensionError("residue parameter must be >= 1")
    if n0 < 1:
        raise DimensionError("vertex count must be >= 1")
    prod = 1
    for i in range(1, n + 1):
        prod *= q**i - 1
    value = Fraction((-1) ** n * n0 * prod, n + 1)
    return EulerCharacteristic(value=value, integral=value.denominator == 1)


def annihilator_family(n, q, n0):
    """The multiples n0 (q^{k(n+1-k)} - 1) of [I] that vanish, k = 1..n.

    Their gcd (combined with |chi| in rank 2) must reproduce bound();
    checked internally whenever the bound is defined."""
    if n < 1:
        raise DimensionError("rank must be >= 1")
    if q < 2:
        raise DimensionError("residue parameter must be >= 2")
    if n0 < 1:
        raise DimensionError("vertex count must be >= 1")
    family = tuple(n0 * (q ** (k * (n + 1 - k)) - 1) for k in range(1, n + 1))
    try:
        expected = bound(n, q, n0).value
    except StructureError:
        return family
    g = 0
    for m in family:
        g = math.gcd(g, m)
    if n == 2:
        c = chi(n, q, n0)
        if c.integral:
            g = math.gcd(g, abs(int(c.value)))
    if g != expected:
        raise InconsistencyError(
            f"annihilator gcd {g} disagrees with the bound {expected}"
        )
    return family
