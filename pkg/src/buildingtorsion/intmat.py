"""Exact integer matrices, Smith normal form, and orders in finitely
presented abelian groups.

Everything here runs over Python's native big integers; no floating point
is involved anywhere.  The Smith form drives two consumers: invariant
factors of relation matrices, and the order of a distinguished generator
in the abelian group presented by the rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionError


@dataclass(frozen=True)
class IntMatrix:
    """An immutable rows x cols integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionError("ragged rows")
        return IntMatrix(nr, nc, tuple(x for r in rows for x in r))

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zeros(rows, cols):
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions disagree")
        a, b = self.to_lists(), other.to_lists()
        out = []
        for i in range(self.rows):
            ai = a[i]
            row = [0] * other.cols
            for k, aik in enumerate(ai):
                if aik:
                    bk = b[k]
                    for j in range(other.cols):
                        row[j] += aik * bk[j]
            out.append(row)
        return IntMatrix.from_rows(out) if out else IntMatrix.zeros(0, other.cols)

    def transpose(self):
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def __str__(self):
        return format_matrix(self)


@dataclass(frozen=True)
class SnfResult:
    """U * A * V = D with U, V unimodular and D in Smith normal form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple


@dataclass(frozen=True)
class ElementOrder:
    """Order of a group element: finite with a value, or infinite."""

    finite: bool
    value: int | None = None

    def __post_init__(self):
        if self.finite:
            assert self.value is not None and self.value >= 1
        else:
            assert self.value is None


def _ext_gcd(a, b):
    """Extended gcd: (g, x, y) with x*a + y*b = g and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _smith(a_rows, nr, nc):
    """Diagonalize in place, returning (U rows, D rows, V rows).

    Alternates Hermite-style row and column passes.  Within a pass every
    entry is reduced against the pivot of its column (or row) as soon as
    the pivot exists, which keeps entries near the size of the minors of
    the input rather than letting them compound pass over pass.
    """
    d = [row[:] for row in a_rows]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        ds, dd = d[src], d[dst]
        for j in range(nc):
            dd[j] += c * ds[j]
        us, ud = u[src], u[dst]
        for j in range(nr):
            ud[j] += c * us[j]

    def add_col(src, dst, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def combine_rows(i, j, x, y, z, w):
        # rows (i, j) <- (x*i + y*j, z*i + w*j); requires x*w - y*z = +-1
        for mat in (d, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * p + y * q for p, q in zip(ri, rj)]
            mat[j] = [z * p + w * q for p, q in zip(ri, rj)]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def row_pass():
        # one Hermite sweep by row operations: zeros below each pivot,
        # entries above a pivot reduced modulo it
        changed = False
        pr = 0
        for col in range(nc):
            if pr == nr:
                break
            live = [i for i in range(pr, nr) if d[i][col]]
            if not live:
                continue
            while len(live) > 1:
                live.sort(key=lambda i: (abs(d[i][col]), i))
                base = live[0]
                for i in live[1:]:
                    q = d[i][col] // d[base][col]
                    if q:
                        add_row(base, i, -q)
                        changed = True
                live = [i for i in live if d[i][col]]
            if live[0] != pr:
                swap_rows(live[0], pr)
                changed = True
            if d[pr][col] < 0:
                negate_row(pr)
                changed = True
            p = d[pr][col]
            for r in range(pr):
                q = d[r][col] // p
                if q:
                    add_row(pr, r, -q)
                    changed = True
            pr += 1
        return changed

    def col_pass():
        # the same sweep by column operations
        changed = False
        pc = 0
        for row in range(nr):
            if pc == nc:
                break
            dr = d[row]
            live = [j for j in range(pc, nc) if dr[j]]
            if not live:
                continue
            while len(live) > 1:
                live.sort(key=lambda j: (abs(dr[j]), j))
                base = live[0]
                for j in live[1:]:
                    q = dr[j] // dr[base]
                    if q:
                        add_col(base, j, -q)
                        changed = True
                live = [j for j in live if dr[j]]
            if live[0] != pc:
                swap_cols(live[0], pc)
                changed = True
            p = dr[pc]
            for c in range(pc):
                q = dr[c] // p
                if q:
                    add_col(pc, c, -q)
                    changed = True
            pc += 1
        return changed

    def is_diagonal():
        for i in range(nr):
            di = d[i]
            for j in range(nc):
                if i != j and di[j]:
                    return False
        return True

    guard = 0
    while True:
        changed = row_pass()
        changed |= col_pass()
        if not changed:
            break
        guard += 1
        assert guard < 1000, "diagonalization failed to settle"
    assert is_diagonal(), "stable under row and column sweeps but not diagonal"

    limit = min(nr, nc)
    for i in range(limit):
        if d[i][i] < 0:
            negate_row(i)

    # repair the divisibility chain: d[i][i] must divide every later entry
    for i in range(limit):
        for j in range(i + 1, limit):
            a, b = d[i][i], d[j][j]
            if b == 0 or (a != 0 and b % a == 0):
                continue
            add_col(j, i, 1)
            g, x, y = _ext_gcd(a, b)
            combine_rows(i, j, x, y, -(b // g), a // g)
            add_col(i, j, -(d[i][j] // g))
            if d[j][j] < 0:
                negate_row(j)

    return u, d, v


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form U*A*V = D.

    Raises DimensionError on empty input.  The invariant factor list has
    length min(rows, cols): positive factors d1 | d2 | ... then zeros.
    """
    if a.rows == 0 or a.cols == 0:
        raise DimensionError("snf of an empty matrix")
    u, d, v = _smith(a.to_lists(), a.rows, a.cols)
    factors = tuple(d[i][i] for i in range(min(a.rows, a.cols)))
    return SnfResult(
        U=IntMatrix.from_rows(u),
        D=IntMatrix.from_rows(d),
        V=IntMatrix.from_rows(v),
        invariant_factors=factors,
    )


def _transformed_coords(result: SnfResult, vector):
    """Coordinates of a row vector in the basis where the row span is
    diagonal: y = vector * V, paired with the factor governing each slot."""
    v = result.V
    n = v.rows
    assert len(vector) == n
    diag = list(result.invariant_factors) + [0] * (n - len(result.invariant_factors))
    y = [0] * n
    for i, x in enumerate(vector):
        if x:
            vr = v.row(i)
            for j in range(n):
                y[j] += x * vr[j]
    return y, diag


def in_row_span(relations: IntMatrix, vector) -> bool:
    """Is `vector` an integer combination of the rows of `relations`?"""
    return in_row_span_from_snf(snf(relations), vector)


def in_row_span_from_snf(result: SnfResult, vector) -> bool:
    y, diag = _transformed_coords(result, vector)
    for yj, dj in zip(y, diag):
        if dj == 0:
            if yj != 0:
                return False
        elif yj % dj:
            return False
    return True


def element_order(relations: IntMatrix, generator_index: int) -> ElementOrder:
    """Order of the image of the standard generator e_{generator_index}
    in Z^cols / (row span of `relations`).

    The least m > 0 with m*e_idx in the row span, or infinite if none.
    """
    if not 0 <= generator_index < relations.cols:
        raise DimensionError("generator index out of range")
    return element_order_from_snf(snf(relations), generator_index)


def element_order_from_snf(result: SnfResult, generator_index: int) -> ElementOrder:
    n = result.V.rows
    unit = [0] * n
    unit[generator_index] = 1
    y, diag = _transformed_coords(result, unit)
    order = 1
    for yj, dj in zip(y, diag):
        if dj == 0:
            if yj != 0:
                return ElementOrder(finite=False)
        elif yj % dj:
            order = order * (dj // math.gcd(dj, yj)) // math.gcd(order, dj // math.gcd(dj, yj))
    return ElementOrder(finite=True, value=order)


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def format_matrix(a: IntMatrix) -> str:
    """Text form: a 'rows cols' header line, then one line per row."""
    lines = [f"{a.rows} {a.cols}"]
    for i in range(a.rows):
        lines.append(" ".join(str(x) for x in a.row(i)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntMatrix:
    """Inverse of format_matrix.  Blank lines and #-comments are skipped."""
    from .errors import ParseError

    rows = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise ParseError(lineno, f"expected integers, got {line!r}")
        if header is None:
            if len(values) != 2:
                raise ParseError(lineno, "header must be 'rows cols'")
            header = (values[0], values[1])
            if header[0] < 0 or header[1] < 0:
                raise ParseError(lineno, "negative dimensions")
        else:
            if len(values) != header[1]:
                raise ParseError(lineno, f"expected {header[1]} entries per row")
            rows.append(values)
    if header is None:
        raise ParseError(1, "empty matrix file")
    if len(rows) != header[0]:
        raise ParseError(1, f"expected {header[0]} rows, got {len(rows)}")
    return IntMatrix(header[0], header[1], tuple(x for r in rows for x in r))
