"""Finite point-line incidence structures and the projective plane axioms.

Used for vertex links in two places: links extracted from lattice balls
and links of combinatorial 2-complexes.  The checker accepts the
degenerate order-1 plane (the triangle), which is what flat complexes
produce.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IncidenceStructure:
    """Points, lines, and a set of incident (point, line) pairs."""

    points: tuple
    lines: tuple
    flags: tuple  # (point, line) pairs, no duplicates expected

    def lines_through(self, p):
        return [l for (x, l) in self.flags if x == p]

    def points_on(self, l):
        return [x for (x, y) in self.flags if y == l]


def plane_order(inc: IncidenceStructure):
    """Check the axioms of a projective plane of some order q >= 1.

    Returns (q, problems): q is None when any axiom fails, and problems
    lists human-readable reasons.  Checks performed:

    - no repeated (point, line) incidence,
    - #points == #lines == q^2 + q + 1 with q+1 = common degree,
    - every point on exactly q+1 lines, every line through exactly q+1 points,
    - two distinct points lie on exactly one common line,
    - two distinct lines meet in exactly one common point.
    """
    problems = []
    flags = list(inc.flags)
    if len(set(flags)) != len(flags):
        dupes = sorted({f for f in flags if flags.count(f) > 1})
        problems.append(f"repeated incidences: {dupes[:4]}")
        return None, problems

    point_lines = {p: set() for p in inc.points}
    line_points = {l: set() for l in inc.lines}
    for p, l in flags:
        if p not in point_lines or l not in line_points:
            problems.append(f"incidence ({p!r}, {l!r}) references unknown element")
            return None, problems
        point_lines[p].add(l)
        line_points[l].add(p)

    degrees_p = {len(v) for v in point_lines.values()}
    degrees_l = {len(v) for v in line_points.values()}
    if len(degrees_p) != 1 or len(degrees_l) != 1:
        problems.append(
            f"non-constant degrees: points {sorted(degrees_p)}, lines {sorted(degrees_l)}"
        )
        return None, problems
    kp, kl = degrees_p.pop(), degrees_l.pop()
    if kp != kl:
        problems.append(f"point degree {kp} != line degree {kl}")
        return None, problems
    q = kp - 1
    if q < 1:
        problems.append(f"degree {kp} too small for a plane")
        return None, problems
    n_expected = q * q + q + 1
    if len(inc.points) != n_expected or len(inc.lines) != n_expected:
        problems.append(
            f"size {len(inc.points)} points / {len(inc.lines)} lines, "
            f"expected {n_expected} for order {q}"
        )
        return None, problems

    pts = list(inc.points)
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            common = point_lines[a] & point_lines[b]
            if len(common) != 1:
                problems.append(
                    f"points {a!r}, {b!r} lie on {len(common)} common lines"
                )
                return None, problems
    lns = list(inc.lines)
    for i, a in enumerate(lns):
        for b in lns[i + 1 :]:
            common = line_points[a] & line_points[b]
            if len(common) != 1:
                problems.append(
                    f"lines {a!r}, {b!r} meet in {len(common)} common points"
                )
                return None, problems
    return q, problems
