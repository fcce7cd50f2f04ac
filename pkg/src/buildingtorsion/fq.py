"""Arithmetic and row reduction over small finite fields GF(p^e).

Field elements are integers in range(q) encoding polynomial residues in
base p (digit i is the coefficient of x^i).  A FieldSpec carries the
characteristic, degree, and monic irreducible modulus; irreducibility is
established at construction by trial division, so an invalid field cannot
be instantiated.

Subspaces are kept in reduced row echelon form, which makes the RREF
basis a canonical label: two Subspace values are equal exactly when they
are the same subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .errors import DimensionError, FieldError

# default moduli (ascending coefficients, monic) for the degrees used here:
# x^2+x+1 over F2, x^3+x+1 over F2, x^2+1 over F3
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (1, 0, 1),
}

_TABLE_LIMIT = 1 << 12  # largest q for which multiplication tables are built


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_mod(num, den, p):
    """Remainder of num by den over F_p; polynomials as ascending coeff lists."""
    num = [c % p for c in num]
    dn = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            f = c * inv_lead % p
            for j, dj in enumerate(den):
                num[i - dn + j] = (num[i - dn + j] - f * dj) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _poly_is_zero(poly):
    return all(c == 0 for c in poly)


def _monic_polys(degree, p):
    for tail in product(range(p), repeat=degree):
        yield list(tail) + [1]


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) presented as F_p[x] modulo a monic irreducible polynomial."""

    p: int
    e: int = 1
    modulus: tuple = field(default=None)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise FieldError("extension degree must be >= 1")
        if self.modulus is None:
            if self.e == 1:
                object.__setattr__(self, "modulus", (0, 1))
            elif (self.p, self.e) in DEFAULT_MODULI:
                object.__setattr__(self, "modulus", DEFAULT_MODULI[(self.p, self.e)])
            else:
                raise FieldError(
                    f"no default modulus for p={self.p}, e={self.e}; pass one explicitly"
                )
        object.__setattr__(self, "modulus", tuple(c % self.p for c in self.modulus))
        m = self.modulus
        if len(m) != self.e + 1 or m[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        # irreducibility by trial division against monic divisors of degree <= e/2
        for d in range(1, self.e // 2 + 1):
            for cand in _monic_polys(d, self.p):
                if _poly_is_zero(_poly_mod(list(m), cand, self.p)):
                    raise FieldError(
                        f"modulus {m} is reducible over F_{self.p}: divisible by {tuple(cand)}"
                    )

    @property
    def q(self):
        return self.p**self.e

    # --- element codec -------------------------------------------------
    def _decode(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, poly):
        a = 0
        for c in reversed(poly[: self.e] + [0] * (self.e - len(poly))):
            a = a * self.p + (c % self.p)
        return a

    # --- arithmetic ----------------------------------------------------
    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self._tables()[0][a][b]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        return self._tables()[2][a]

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        return self._tables()[1][a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._tables()[3][a]

    def elements(self):
        return range(self.q)

    def _tables(self):
        return _field_tables(self)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={self.modulus})"


@lru_cache(maxsize=None)
def _field_tables(spec: FieldSpec):
    q, p, e = spec.q, spec.p, spec.e
    if q > _TABLE_LIMIT:
        raise FieldError(f"field of size {q} exceeds the table limit {_TABLE_LIMIT}")
    mod = list(spec.modulus)
    add = [[0] * q for _ in range(q)]
    mul = [[0] * q for _ in range(q)]
    neg = [0] * q
    for a in range(q):
        pa = spec._decode(a)
        neg[a] = spec._encode([-c % p for c in pa])
        for b in range(a, q):
            pb = spec._decode(b)
            s = spec._encode([(x + y) % p for x, y in zip(pa, pb)])
            add[a][b] = add[b][a] = s
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(pa):
                if x:
                    for j, y in enumerate(pb):
                        prod[i + j] += x * y
            m = spec._encode(_poly_mod(prod, mod, p))
            mul[a][b] = mul[b][a] = m
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 1:
                inv[a] = b
                break
        else:
            raise FieldError("modulus is not irreducible (no inverse found)")
    return add, mul, neg, inv


@dataclass(frozen=True)
class FqMatrix:
    """Matrix over a FieldSpec; entries are encoded field elements, row-major."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError("entry count does not match shape")
        if any(not (0 <= x < self.field.q) for x in self.entries):
            raise FieldError("entry out of field range")

    @staticmethod
    def from_rows(spec, rows):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionError("ragged rows")
        return FqMatrix(spec, nr, nc, tuple(x for r in rows for x in r))

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]


def rref(m: FqMatrix):
    """Reduced row echelon form.  Returns (FqMatrix, rank)."""
    spec = m.field
    rows = m.to_lists()
    nr, nc = m.rows, m.cols
    pivot_row = 0
    pivots = []
    for col in range(nc):
        sel = None
        for r in range(pivot_row, nr):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        inv = spec.inv(rows[pivot_row][col])
        if inv != 1:
            rows[pivot_row] = [spec.mul(inv, x) for x in rows[pivot_row]]
        for r in range(nr):
            if r != pivot_row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [
                    spec.sub(x, spec.mul(f, y))
                    for x, y in zip(rows[r], rows[pivot_row])
                ]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == nr:
            break
    return FqMatrix.from_rows(spec, rows), pivot_row


def _echelon_insert(spec, basis, vec):
    """Insert vec into a pivot-keyed echelon dict; return True if rank grew.

    basis maps pivot column -> normalized row (tuple)."""
    v = list(vec)
    for col in range(len(v)):
        if not v[col]:
            continue
        if col in basis:
            f = v[col]
            b = basis[col]
            v = [spec.sub(x, spec.mul(f, y)) for x, y in zip(v, b)]
        else:
            inv = spec.inv(v[col])
            if inv != 1:
                v = [spec.mul(inv, x) for x in v]
            basis[col] = tuple(v)
            return True
    return False


def rank_of_rows(spec, vectors, ncols):
    basis = {}
    r = 0
    for v in vectors:
        if _echelon_insert(spec, basis, v):
            r += 1
    return r


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F_q^m, held as an RREF basis with no zero rows."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple  # tuple of row tuples, in RREF

    @property
    def dim(self):
        return len(self.basis)

    @staticmethod
    def from_vectors(spec, ambient_dim, vectors):
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise DimensionError("vector length does not match ambient dimension")
        if not vectors:
            return Subspace(spec, ambient_dim, ())
        m, rank = rref(FqMatrix.from_rows(spec, vectors))
        return Subspace(spec, ambient_dim, tuple(m.row(i) for i in range(rank)))

    def contains_vector(self, vec):
        basis = {}
        for row in self.basis:
            _echelon_insert(self.field, basis, row)
        return not _echelon_insert(self.field, basis, vec)

    def contains(self, other: "Subspace") -> bool:
        if (self.field, self.ambient_dim) != (other.field, other.ambient_dim):
            raise FieldError("subspaces live in different ambient spaces")
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other):
        return other.contains(self)


def _rref_bases(spec, m, d):
    """All RREF bases of d-dim subspaces of F_q^m, one per subspace."""
    q = spec.q
    out = []
    for pivots in combinations(range(m), d):
        free_positions = []
        for i in range(d):
            for j in range(pivots[i] + 1, m):
                if j not in pivots:
                    free_positions.append((i, j))
        for values in product(range(q), repeat=len(free_positions)):
            rows = [[0] * m for _ in range(d)]
            for i, col in enumerate(pivots):
                rows[i][col] = 1
            for (i, j), val in zip(free_positions, values):
                rows[i][j] = val
            out.append(tuple(tuple(r) for r in rows))
    out.sort()
    return out


def enumerate_subspaces(spec: FieldSpec, m: int, d: int):
    """All d-dimensional subspaces of F_q^m, each exactly once,
    ordered lexicographically by RREF basis."""
    if not (0 <= d <= m):
        raise DimensionError(f"subspace dimension {d} out of range for ambient {m}")
    return [Subspace(spec, m, basis) for basis in _rref_bases(spec, m, d)]


def gaussian_binomial(m, d, q):
    """Number of d-dim subspaces of F_q^m."""
    if not (0 <= d <= m):
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Flag:
    """A full flag V_1 < V_2 < ... < V_{m-1} in F_q^m (dims 1..m-1)."""

    field: FieldSpec
    ambient_dim: int
    subspaces: tuple  # of Subspace, dims 1..m-1

    def __post_init__(self):
        m = self.ambient_dim
        if len(self.subspaces) != m - 1:
            raise DimensionError("a full flag needs subspaces of dims 1..m-1")
        for i, s in enumerate(self.subspaces):
            if s.dim != i + 1:
                raise DimensionError("flag dims must be 1..m-1 in order")
        for a, b in zip(self.subspaces, self.subspaces[1:]):
            if not b.contains(a):
                raise DimensionError("flag subspaces are not nested")


def enumerate_full_flags(spec: FieldSpec, m: int):
    """All full flags of F_q^m in depth-first lexicographic chain order."""
    if m < 1:
        raise DimensionError("ambient dimension must be >= 1")
    levels = [enumerate_subspaces(spec, m, d) for d in range(1, m)]
    flags = []

    def extend(chain, depth):
        if depth == m - 1:
            flags.append(Flag(spec, m, tuple(chain)))
            return
        prev = chain[-1] if chain else None
        for s in levels[depth]:
            if prev is None or s.contains(prev):
                chain.append(s)
                extend(chain, depth + 1)
                chain.pop()

    extend([], 0)
    return flags
