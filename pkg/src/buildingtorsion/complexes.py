"""Finite quotient complexes: graphs for rank 1 and triangle complexes for
rank 2.

A triangle complex is given by directed edges (one canonical direction per
geometric edge) and chambers listed as cyclic head-to-tail triples of edge
ids.  The corner of a chamber (e0, e1, e2) in slot t sits at the vertex
tail(e_t); its link flag pairs the outgoing dart of e_t with the incoming
dart of e_{t-1}.  Links are incidence structures on darts: points are the
edges leaving the vertex, lines the edges entering it, and every chamber
corner contributes one incidence.  A complex covered by an affine building
has every link a projective plane of a common order q; the validator checks
exactly that, accepting the degenerate order-1 plane (flat complexes).

A directed cell is a chamber with a chosen initial corner slot; the vertex
map sends p to the corner in slot (slot + p) mod 3.  Cells are indexed by
3 * chamber + slot throughout.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .errors import (
    DimensionError,
    InconsistencyError,
    MultiplicityError,
    ParseError,
    SizeLimitError,
    StructureError,
)
from .incidence import IncidenceStructure, plane_order
from .intmat import IntMatrix


@dataclass(frozen=True)
class QuotientGraph:
    """Finite graph with loops and parallel edges allowed.

    Darts (directed edges) are indexed 0..2*n_edges-1: dart 2i runs along
    geometric edge i, dart 2i+1 runs against it, and the reversal involution
    is xor with 1."""

    n_vertices: int
    geom_edges: tuple  # (u, v) pairs

    def __post_init__(self):
        if self.n_vertices < 1:
            raise StructureError("graph needs at least one vertex")
        for i, (u, v) in enumerate(self.geom_edges):
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise StructureError(f"edge {i} endpoint out of range")
        for v in range(self.n_vertices):
            d = self.degree(v)
            if d < 3:
                warnings.warn(
                    f"vertex {v} has degree {d} < 3; torsion statements "
                    "assume thick local structure",
                    stacklevel=2,
                )

    @property
    def n_darts(self):
        return 2 * len(self.geom_edges)

    def origin(self, dart):
        u, v = self.geom_edges[dart // 2]
        return u if dart % 2 == 0 else v

    def terminus(self, dart):
        return self.origin(dart ^ 1)

    def reverse(self, dart):
        return dart ^ 1

    def degree(self, v):
        return sum(1 for d in range(self.n_darts) if self.origin(d) == v)

    def is_connected(self):
        if self.n_vertices == 1:
            return True
        adj = {v: set() for v in range(self.n_vertices)}
        for u, v in self.geom_edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices


@dataclass(frozen=True)
class A2Complex:
    """Triangle complex with directed edges and cyclic chambers."""

    n_vertices: int
    edges: tuple  # (tail, head) per edge id
    chambers: tuple  # triples of edge ids, head-to-tail cyclically
    vertex_types: tuple | None = None

    def __post_init__(self):
        if self.n_vertices < 1:
            raise StructureError("complex needs at least one vertex")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise StructureError(f"edge {i} endpoint out of range")
        for ci, tri in enumerate(self.chambers):
            if len(tri) != 3:
                raise StructureError(f"chamber {ci} does not have 3 edges")
            for e in tri:
                if not (0 <= e < len(self.edges)):
                    raise StructureError(f"chamber {ci} references edge {e}")
            for t in range(3):
                if self.edges[tri[t]][1] != self.edges[tri[(t + 1) % 3]][0]:
                    raise StructureError(
                        f"chamber {ci} edges are not head-to-tail at slot {t}"
                    )
        if self.vertex_types is not None:
            if len(self.vertex_types) != self.n_vertices:
                raise StructureError("vertex_types length mismatch")
            if any(t not in (0, 1, 2) for t in self.vertex_types):
                raise StructureError("vertex types must lie in {0, 1, 2}")
            for i, (u, v) in enumerate(self.edges):
                if (self.vertex_types[u] + 1) % 3 != self.vertex_types[v]:
                    raise StructureError(
                        f"edge {i} does not raise the vertex type by one"
                    )

    @property
    def n0(self):
        return self.n_vertices

    @property
    def n1(self):
        return len(self.edges)

    @property
    def n2(self):
        return len(self.chambers)

    def tail(self, e):
        return self.edges[e][0]

    def head(self, e):
        return self.edges[e][1]

    def corner_vertex(self, chamber, slot):
        return self.tail(self.chambers[chamber][slot])

    def corner_flag(self, chamber, slot):
        """(outgoing edge, incoming edge) at the corner in this slot."""
        tri = self.chambers[chamber]
        return tri[slot], tri[(slot - 1) % 3]


@dataclass(frozen=True)
class DirectedCell:
    """Chamber with a chosen initial corner slot."""

    chamber: int
    slot: int


def directed_cells(x: A2Complex):
    return tuple(
        DirectedCell(c, s) for c in range(x.n2) for s in range(3)
    )


def cell_index(cell: DirectedCell):
    return 3 * cell.chamber + cell.slot


def cell_vertex(x: A2Complex, cell: DirectedCell, p):
    """The vertex the directed cell sends model vertex p to."""
    if p not in (0, 1, 2):
        raise DimensionError("model vertices are 0, 1, 2")
    return x.corner_vertex(cell.chamber, (cell.slot + p) % 3)


def extensions_of_edge(x: A2Complex, e):
    """Directed cells whose chamber contains edge e with the initial corner
    opposite e (so the cell restricted to its far face is the edge)."""
    out = []
    for c, tri in enumerate(x.chambers):
        for t in range(3):
            if tri[t] == e:
                out.append(DirectedCell(c, (t + 2) % 3))
    return out


def link_of(x: A2Complex, v):
    """The link of a vertex as a dart incidence structure.

    Points are edges with tail v, lines edges with head v (a loop at v
    shows up once on each side), and each chamber corner at v contributes
    the incidence of its outgoing and incoming darts."""
    points = tuple(e for e in range(x.n1) if x.tail(e) == v)
    lines = tuple(e for e in range(x.n1) if x.head(e) == v)
    flags = []
    for c in range(x.n2):
        for s in range(3):
            if x.corner_vertex(c, s) == v:
                flags.append(x.corner_flag(c, s))
    return IncidenceStructure(points=points, lines=lines, flags=tuple(flags))


def validate_links(x: A2Complex):
    """Check every vertex link against the plane axioms.

    Returns (q, report): the common link order with an empty report when
    all links pass, or (None, reasons) otherwise."""
    report = []
    orders = {}
    for v in range(x.n_vertices):
        q, problems = plane_order(link_of(x, v))
        if q is None:
            report.extend(f"vertex {v}: {msg}" for msg in problems)
        else:
            orders[v] = q
    if report:
        return None, report
    if len(set(orders.values())) > 1:
        listing = ", ".join(f"vertex {v}: q={orders[v]}" for v in sorted(orders))
        return None, [f"link orders are not constant ({listing})"]
    return orders[0], []


@dataclass(frozen=True)
class CellCounts:
    n0: int
    n1: int
    n2: int
    euler: int


def cell_counts(x: A2Complex, q=None):
    """Cell counts and Euler characteristic, cross-checked against the
    counts forced by link order q when q is supplied."""
    counts = CellCounts(x.n0, x.n1, x.n2, x.n0 - x.n1 + x.n2)
    if q is not None:
        per = q * q + q + 1
        if counts.n1 != counts.n0 * per:
            raise InconsistencyError(
                f"n1 = {counts.n1}, expected n0 (q^2+q+1) = {counts.n0 * per}"
            )
        if 3 * counts.n2 != counts.n0 * (q + 1) * per:
            raise InconsistencyError(
                f"n2 = {counts.n2}, expected n0 (q+1)(q^2+q+1)/3 "
                f"= {counts.n0 * (q + 1) * per // 3}"
            )
    return counts


def _link_tables(x: A2Complex):
    """Per-vertex incidence maps and the corner lookup used by the
    transfer matrices: flag (out, in) -> corner (chamber, slot)."""
    lines_through = {v: {} for v in range(x.n_vertices)}
    points_on = {v: {} for v in range(x.n_vertices)}
    corner_of = {v: {} for v in range(x.n_vertices)}
    for c in range(x.n2):
        for s in range(3):
            v = x.corner_vertex(c, s)
            p, l = x.corner_flag(c, s)
            lines_through[v].setdefault(p, set()).add(l)
            points_on[v].setdefault(l, set()).add(p)
            corner_of[v][(p, l)] = DirectedCell(c, s)
    return lines_through, points_on, corner_of


def transfer_matrix(x: A2Complex, k):
    """The 0/1 matrix M_k on directed cells: M_k[d, c] = 1 when cell d is a
    distance-k extension of cell c.

    The extension happens inside the link plane at v = c(k).  With the
    corner flag of c at v written (p0, l0):

    - k = 1: extensions are the flags (p, l) with l through p0, l != l0,
      p on l, p != p0;
    - k = 2: the flags with p on l0, p != p0, l through p, l != l0.

    Either way exactly q^2 flags qualify, each being the corner of a unique
    chamber at v; the extension is that chamber rooted at v.  Entries are
    accumulated and must stay 0/1; row and column sums must equal q^2."""
    if k not in (1, 2):
        raise DimensionError("transfer matrices exist for k = 1 and k = 2")
    q, report = validate_links(x)
    if q is None:
        raise InconsistencyError(
            "links must validate before transfer matrices: " + "; ".join(report)
        )
    lines_through, points_on, corner_of = _link_tables(x)
    n = 3 * x.n2
    entries = [[0] * n for _ in range(n)]
    for cell in directed_cells(x):
        c_idx = cell_index(cell)
        t = (cell.slot + k) % 3
        v = x.corner_vertex(cell.chamber, t)
        p0, l0 = x.corner_flag(cell.chamber, t)
        if k == 1:
            targets = [
                (p, l)
                for l in lines_through[v][p0]
                if l != l0
                for p in points_on[v][l]
                if p != p0
            ]
        else:
            targets = [
                (p, l)
                for p in points_on[v][l0]
                if p != p0
                for l in lines_through[v][p]
                if l != l0
            ]
        for g in targets:
            d = corner_of[v][g]
            d_idx = cell_index(d)
            if entries[d_idx][c_idx]:
                raise MultiplicityError(
                    f"extension multiplicity above 1 at cells ({d_idx}, {c_idx})"
                )
            entries[d_idx][c_idx] = 1
    expected = q * q
    for i in range(n):
        if sum(entries[i]) != expected:
            raise InconsistencyError(
                f"row {i} of M_{k} sums to {sum(entries[i])}, expected {expected}"
            )
    for j in range(n):
        col = sum(entries[i][j] for i in range(n))
        if col != expected:
            raise InconsistencyError(
                f"column {j} of M_{k} sums to {col}, expected {expected}"
            )
    return IntMatrix.from_rows(entries)


def torus_complex(s):
    """Flat one-dimensional family of triangle complexes (link order 1).

    Scale s has vertices Z/s; edge a_m runs m -> m+1, edge b_m runs
    m -> m-1, edge c_m is a loop at m, and each m carries one upward and
    one downward chamber.  Counts are (s, 3s, 2s) and every link is the
    degenerate plane of order 1."""
    if s < 1:
        raise DimensionError("scale must be >= 1")
    # edge ids: a_m = m, b_m = s + m, c_m = 2s + m
    edges = (
        [(m, (m + 1) % s) for m in range(s)]
        + [(m, (m - 1) % s) for m in range(s)]
        + [(m, m) for m in range(s)]
    )
    chambers = []
    for m in range(s):
        chambers.append((m, s + (m + 1) % s, 2 * s + m))
    for m in range(s):
        chambers.append((s + (m + 1) % s, m, 2 * s + (m + 1) % s))
    return A2Complex(
        n_vertices=s, edges=tuple(edges), chambers=tuple(chambers)
    )


FANO_LINES = tuple(
    tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))) for i in range(7)
)


def _rotate_min(tri):
    rots = [tuple(tri[i:]) + tuple(tri[:i]) for i in range(3)]
    return min(rots)


def _triangle_partitions(succ):
    """Partitions of {(a, b) : b in succ[a]} into directed triangles,
    yielded in the deterministic backtracking order."""
    arcs = {(a, b) for a in range(7) for b in succ[a]}
    chosen = []

    def step():
        if not arcs:
            yield tuple(chosen)
            return
        a, b = min(arcs)
        arcs.discard((a, b))
        for z in sorted(succ[b]):
            if a not in succ[z]:
                continue
            if (b, z) not in arcs or (z, a) not in arcs:
                continue
            arcs.discard((b, z))
            arcs.discard((z, a))
            chosen.append((a, b, z))
            yield from step()
            chosen.pop()
            arcs.add((b, z))
            arcs.add((z, a))
        arcs.add((a, b))

    yield from step()


def search_presentation(q, exhaustive=False):
    """Search for a one-vertex triangle complex whose link has order q.

    Implemented for q = 2: lines of a fixed plane of order 2 on points
    0..6 are matched to points by a bijection; the 21 resulting arcs must
    split into 7 directed triangles, which become the chambers on 7 loop
    edges.  Bijections and partitions are tried in lexicographic order, so
    the first hit is deterministic.  Returns (complex, count) where count
    is the total number of (bijection, partition) solutions when exhaustive
    is set and None otherwise."""
    if q != 2:
        raise SizeLimitError(
            f"presentation search is implemented for q = 2 only (got {q})"
        )
    first = None
    count = 0
    for sigma in itertools.permutations(range(7)):
        succ = {a: set(FANO_LINES[sigma[a]]) for a in range(7)}
        for triangles in _triangle_partitions(succ):
            count += 1
            if first is None:
                chambers = tuple(sorted(_rotate_min(t) for t in triangles))
                first = A2Complex(
                    n_vertices=1,
                    edges=tuple((0, 0) for _ in range(7)),
                    chambers=chambers,
                )
                if not exhaustive:
                    return first, None
        if first is not None and not exhaustive:
            return first, None
    if first is None:
        raise StructureError("no triangle presentation found")
    return first, count


def format_complex(x: A2Complex):
    lines = []
    for v in range(x.n_vertices):
        if x.vertex_types is not None:
            lines.append(f"vertex {v} {x.vertex_types[v]}")
        else:
            lines.append(f"vertex {v}")
    for e, (u, v) in enumerate(x.edges):
        lines.append(f"edge {e} {u} {v}")
    for tri in x.chambers:
        lines.append(f"chamber {tri[0]} {tri[1]} {tri[2]}")
    return "\n".join(lines) + "\n"


def _data_lines(text):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield num, line.split()


def _parse_int(tok, num, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(num, f"{what} must be an integer, got {tok!r}") from None


def parse_complex(text):
    """Parse the complex file format: 'vertex <id> [type]',
    'edge <id> <tail> <head>', 'chamber <e1> <e2> <e3>'.  Ids must appear
    in order starting from 0; comments (#) and blank lines are skipped."""
    n_vertices = 0
    types = []
    edges = []
    chambers = []
    for num, toks in _data_lines(text):
        kind = toks[0]
        if kind == "vertex":
            if len(toks) not in (2, 3):
                raise ParseError(num, "vertex takes an id and an optional type")
            vid = _parse_int(toks[1], num, "vertex id")
            if vid != n_vertices:
                raise ParseError(
                    num, f"vertex ids must be sequential; expected {n_vertices}"
                )
            if len(toks) == 3:
                t = _parse_int(toks[2], num, "vertex type")
                if t not in (0, 1, 2):
                    raise ParseError(num, f"vertex type must be 0, 1 or 2, got {t}")
                types.append(t)
            else:
                types.append(None)
            if types[0] is None and types[-1] is not None:
                raise ParseError(num, "typed vertex in an untyped complex")
            if types[0] is not None and types[-1] is None:
                raise ParseError(num, "untyped vertex in a typed complex")
            n_vertices += 1
        elif kind == "edge":
            if len(toks) != 4:
                raise ParseError(num, "edge takes an id, a tail and a head")
            eid = _parse_int(toks[1], num, "edge id")
            if eid != len(edges):
                raise ParseError(
                    num, f"edge ids must be sequential; expected {len(edges)}"
                )
            u = _parse_int(toks[2], num, "edge tail")
            v = _parse_int(toks[3], num, "edge head")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ParseError(num, f"edge endpoints {u}, {v} undeclared")
            edges.append((u, v))
        elif kind == "chamber":
            if len(toks) != 4:
                raise ParseError(num, "chamber takes exactly 3 edge ids")
            tri = tuple(_parse_int(t, num, "chamber edge") for t in toks[1:])
            for e in tri:
                if not (0 <= e < len(edges)):
                    raise ParseError(num, f"chamber references undeclared edge {e}")
            for t in range(3):
                if edges[tri[t]][1] != edges[tri[(t + 1) % 3]][0]:
                    raise ParseError(
                        num, f"chamber edges are not head-to-tail at slot {t}"
                    )
            chambers.append(tri)
        else:
            raise ParseError(num, f"unknown directive {kind!r}")
    if n_vertices == 0:
        raise ParseError(1, "no vertices declared")
    typed = types and types[0] is not None
    return A2Complex(
        n_vertices=n_vertices,
        edges=tuple(edges),
        chambers=tuple(chambers),
        vertex_types=tuple(types) if typed else None,
    )


def format_graph(g: QuotientGraph):
    lines = [f"vertex {v}" for v in range(g.n_vertices)]
    for i, (u, v) in enumerate(g.geom_edges):
        lines.append(f"geom-edge {i} {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text):
    """Parse the graph file format: 'vertex <id>', 'geom-edge <id> <u> <v>'."""
    n_vertices = 0
    edges = []
    for num, toks in _data_lines(text):
        kind = toks[0]
        if kind == "vertex":
            if len(toks) != 2:
                raise ParseError(num, "vertex takes exactly an id")
            vid = _parse_int(toks[1], num, "vertex id")
            if vid != n_vertices:
                raise ParseError(
                    num, f"vertex ids must be sequential; expected {n_vertices}"
                )
            n_vertices += 1
        elif kind == "geom-edge":
            if len(toks) != 4:
                raise ParseError(num, "geom-edge takes an id and two endpoints")
            eid = _parse_int(toks[1], num, "edge id")
            if eid != len(edges):
                raise ParseError(
                    num, f"edge ids must be sequential; expected {len(edges)}"
                )
            u = _parse_int(toks[2], num, "edge endpoint")
            v = _parse_int(toks[3], num, "edge endpoint")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ParseError(num, f"edge endpoints {u}, {v} undeclared")
            edges.append((u, v))
        else:
            raise ParseError(num, f"unknown directive {kind!r}")
    if n_vertices == 0:
        raise ParseError(1, "no vertices declared")
    return QuotientGraph(n_vertices=n_vertices, geom_edges=tuple(edges))
