"""Finite balls in the affine building of PGL(n+1, Q_p) via lattice classes.

Vertices are homothety classes of Z_p-lattices in Q_p^{n+1}.  Each class
has a unique representative L with L inside Z^{n+1}, L not inside p*Z^{n+1},
and a row-style Hermite basis: upper-triangular integer matrix, p-power
diagonal, entries above a pivot reduced modulo that pivot (the diagonal of
their column).  Two classes are adjacent when p*L < L' < L after scaling;
the lattices strictly between p*L and L are the preimages of the proper
nonzero F_p-subspaces of L/pL.

The vertex type is the valuation of the basis determinant mod n+1; it
distinguishes the n+1 classes of vertices and adjacent vertices always
differ in type.  Chambers are realized as (n+1)-cliques in the adjacency
graph carrying all n+1 types; for the sizes guarded here (n <= 3) typed
cliques and simplices of the building agree, a model fact the link and
counting tests exercise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionError, IncompleteLinkError, SizeLimitError
from .fq import FieldSpec, enumerate_subspaces, gaussian_binomial
from .incidence import IncidenceStructure, plane_order

DEFAULT_MAX_N = 3
DEFAULT_MAX_RADIUS = 3
DEFAULT_VERTEX_BUDGET = 10**6


def _row_hermite(rows, m):
    """Row-style Hermite form of a full-rank ZZ-lattice given by generators.

    Returns an m x m upper-triangular matrix with positive diagonal and
    0 <= H[i][j] < H[j][j] for i < j."""
    work = [list(r) for r in rows if any(r)]
    h = [None] * m
    col = 0
    while col < m:
        live = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not live:
            raise DimensionError("generators do not span a full-rank lattice")
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            small = live[0]
            sc = small[col]
            new_live = [small]
            for r in live[1:]:
                q = r[col] // sc
                if q:
                    for j in range(col, m):
                        r[j] -= q * small[j]
                if r[col]:
                    new_live.append(r)
                elif any(r[col:]):
                    rest.append(r)
            live = new_live
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        h[col] = pivot
        work = rest
        col += 1
    # reduce entries above each pivot
    for j in range(1, m):
        hj = h[j]
        pj = hj[j]
        for i in range(j):
            hi = h[i]
            q = hi[j] // pj
            if q:
                for t in range(j, m):
                    hi[t] -= q * hj[t]
    return [row[:] for row in h]


def _p_valuation(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class LatticeVertex:
    """Canonical homothety-class representative of a lattice in Q_p^{n+1}."""

    n_plus_1: int
    p: int
    basis: tuple  # tuple of row tuples, upper triangular Hermite form

    @property
    def det_valuation(self):
        total = 0
        for i in range(self.n_plus_1):
            total += _p_valuation(self.basis[i][i], self.p)
        return total

    @property
    def vertex_type(self):
        return self.det_valuation % self.n_plus_1

    @staticmethod
    def from_generators(p, m, rows):
        """Canonicalize: Hermite form, then divide out the largest common
        p-power so the class representative is not inside p*Z^m."""
        h = _row_hermite(rows, m)
        # diagonal entries must be p-powers for a p-power-index sublattice
        while all(all(x % p == 0 for x in row) for row in h):
            h = [[x // p for x in row] for row in h]
        for i in range(m):
            d = h[i][i]
            while d % p == 0:
                d //= p
            if d != 1:
                raise DimensionError(
                    f"lattice index is not a p-power (diagonal {h[i][i]})"
                )
        return LatticeVertex(m, p, tuple(tuple(r) for r in h))

    @staticmethod
    def standard(m, p):
        return LatticeVertex.from_generators(
            p, m, [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        )


@lru_cache(maxsize=None)
def _subspace_lifts(p, m):
    """Integer lifts of the bases of all proper nonzero subspaces of F_p^m,
    grouped with their dimensions, in the deterministic enumeration order."""
    spec = FieldSpec(p)
    out = []
    for d in range(1, m):
        for s in enumerate_subspaces(spec, m, d):
            out.append((d, s.basis))
    return tuple(out)


def neighbors(v: LatticeVertex):
    """All classes adjacent to v, in deterministic order.

    Each proper nonzero subspace W of L/pL yields the neighbor spanned by
    lifts of W together with p*L; distinct subspaces give distinct classes."""
    m, p = v.n_plus_1, v.p
    base = [list(r) for r in v.basis]
    out = []
    seen = set()
    for _d, w_basis in _subspace_lifts(p, m):
        rows = []
        for w in w_basis:
            rows.append([sum(w[i] * base[i][j] for i in range(m)) for j in range(m)])
        rows.extend([p * x for x in row] for row in base)
        nb = LatticeVertex.from_generators(p, m, rows)
        if nb.basis not in seen:
            seen.add(nb.basis)
            out.append(nb)
    assert len(out) == len(_subspace_lifts(p, m)), "subspace-to-neighbor map collided"
    return out


def degree(m, p):
    return sum(gaussian_binomial(m, d, p) for d in range(1, m))


def estimate_ball_size(n, p, radius):
    m = n + 1
    deg = degree(m, p)
    total = 1
    shell = 1
    for _ in range(radius):
        shell *= deg
        total += shell
    return total


@dataclass(frozen=True)
class BuildingBall:
    """A radius-r combinatorial ball around the standard lattice class.

    vertices are sorted by (graph distance, basis) so indexing is
    deterministic; edges and chambers hold sorted index tuples."""

    n: int
    p: int
    radius: int
    vertices: tuple  # LatticeVertex
    distances: tuple
    edges: tuple  # (i, j) with i < j
    chambers: tuple  # sorted (n+1)-tuples of indices

    @property
    def center_index(self):
        return self.distances.index(0)

    def vertex_types(self):
        return tuple(v.vertex_type for v in self.vertices)

    def adjacency(self):
        adj = {i: set() for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def ball(n, p, radius, allow_large=False) -> BuildingBall:
    """Breadth-first ball of lattice classes around the standard vertex."""
    if n < 1:
        raise DimensionError("n must be >= 1")
    if radius < 0:
        raise DimensionError("radius must be >= 0")
    est = estimate_ball_size(n, p, radius)
    if not allow_large:
        if n > DEFAULT_MAX_N:
            raise SizeLimitError(
                f"n={n} above the default guard {DEFAULT_MAX_N}", estimate=est
            )
        if radius > DEFAULT_MAX_RADIUS:
            raise SizeLimitError(
                f"radius={radius} above the default guard {DEFAULT_MAX_RADIUS}",
                estimate=est,
            )
        if est > DEFAULT_VERTEX_BUDGET:
            raise SizeLimitError(
                f"estimated ball size {est} above budget {DEFAULT_VERTEX_BUDGET}",
                estimate=est,
            )
    m = n + 1
    start = LatticeVertex.standard(m, p)
    dist = {start: 0}
    nbrs = {}
    frontier = [start]
    for depth in range(1, radius + 1):
        nxt = []
        for v in frontier:
            nv = neighbors(v)
            nbrs[v] = nv
            for w in nv:
                if w not in dist:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    for v in frontier:
        nbrs[v] = neighbors(v)

    order = sorted(dist, key=lambda v: (dist[v], v.basis))
    index = {v: i for i, v in enumerate(order)}
    edges = set()
    for v in order:
        i = index[v]
        for w in nbrs[v]:
            j = index.get(w)
            if j is not None and i != j:
                edges.add((min(i, j), max(i, j)))
    edges = tuple(sorted(edges))

    adj = {i: set() for i in range(len(order))}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    chambers = []
    for clique in _cliques(adj, m):
        types = {order[i].vertex_type for i in clique}
        assert len(types) == m, "clique missing a vertex type"
        chambers.append(clique)
    return BuildingBall(
        n=n,
        p=p,
        radius=radius,
        vertices=tuple(order),
        distances=tuple(dist[v] for v in order),
        edges=edges,
        chambers=tuple(sorted(chambers)),
    )


def _cliques(adj, size):
    """All cliques of the given size, as sorted index tuples."""
    out = []

    def extend(clique, candidates):
        if len(clique) == size:
            out.append(tuple(clique))
            return
        for v in sorted(candidates):
            extend(clique + [v], {w for w in candidates if w > v and w in adj[v]})

    for i in sorted(adj):
        extend([i], {j for j in adj[i] if j > i})
    return out


def link(b: BuildingBall, vertex_index: int):
    """The link of an interior vertex as a bipartite incidence structure.

    For n = 2: points are the neighbors of type tau+1, lines the neighbors
    of type tau+2, and a point is on a line when the three vertices share a
    chamber; the result must pass the plane axioms at order p.  For n = 1
    the link is the degenerate set of p+1 disconnected neighbors."""
    if not 0 <= vertex_index < len(b.vertices):
        raise DimensionError("vertex index out of range")
    if b.distances[vertex_index] > b.radius - 1:
        raise IncompleteLinkError(
            f"vertex {vertex_index} at distance {b.distances[vertex_index]} "
            f"has an incomplete star in a radius-{b.radius} ball"
        )
    if b.n not in (1, 2):
        raise DimensionError("links are produced for n = 1 and n = 2 only")
    adj = b.adjacency()
    nbrs = sorted(adj[vertex_index])
    if b.n == 1:
        return IncidenceStructure(points=tuple(nbrs), lines=(), flags=())
    tau = b.vertices[vertex_index].vertex_type
    t_pt = (tau + 1) % 3
    t_ln = (tau + 2) % 3
    points = tuple(i for i in nbrs if b.vertices[i].vertex_type == t_pt)
    lines = tuple(i for i in nbrs if b.vertices[i].vertex_type == t_ln)
    flags = []
    for ch in b.chambers:
        if vertex_index in ch:
            rest = [i for i in ch if i != vertex_index]
            pt = next(i for i in rest if b.vertices[i].vertex_type == t_pt)
            ln = next(i for i in rest if b.vertices[i].vertex_type == t_ln)
            flags.append((pt, ln))
    inc = IncidenceStructure(points=points, lines=lines, flags=tuple(sorted(flags)))
    q, problems = plane_order(inc)
    if q != b.p:
        raise IncompleteLinkError(
            f"link of vertex {vertex_index} fails plane axioms at order {b.p}: "
            + "; ".join(problems or [f"got order {q}"])
        )
    return inc
