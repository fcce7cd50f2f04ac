"""Relative position of full flags and chamber counting at fixed position.

The relative position of flags F, G in F_q^m is the permutation w read off
the table d_ij = dim(F_i `intersect` G_j) through the jump condition

    w(j) = i  iff  d_ij - d_{i-1,j} - d_{i,j-1} + d_{i-1,j-1} = 1.

Convention fixed project-wide: rows of the table are indexed by F, columns
by G, and w maps G-indices to F-indices.  Swapping the arguments inverts w,
so only lengths and counts are convention-free; downstream consumers use
exactly those.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DimensionError, FieldError
from .fq import FieldSpec, Flag, _echelon_insert, enumerate_full_flags
from .weyl import Permutation, length


def _check_compatible(F: Flag, G: Flag):
    if F.field != G.field:
        raise FieldError("flags over different fields")
    if F.ambient_dim != G.ambient_dim:
        raise DimensionError("flags with different ambient dimensions")


def relative_position(F: Flag, G: Flag) -> Permutation:
    """The permutation w with w(j) = i at the intersection-dimension jumps."""
    _check_compatible(F, G)
    spec = F.field
    m = F.ambient_dim

    # d[i][j] = dim(F_i meet G_j) with F_0 = 0, F_m = ambient
    def chain(flag):
        return [()] + [s.basis for s in flag.subspaces] + [
            tuple(tuple(1 if a == b else 0 for b in range(m)) for a in range(m))
        ]

    fc, gc = chain(F), chain(G)
    fech = []
    for i in range(m + 1):
        basis = {}
        for v in fc[i]:
            _echelon_insert(spec, basis, v)
        fech.append(basis)
    d = [[0] * (m + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            basis = dict(fech[i])
            r = i
            for v in gc[j]:
                if _echelon_insert(spec, basis, v):
                    r += 1
            assert i + j >= r
            d[i][j] = i + j - r
    images = [0] * m
    for j in range(1, m + 1):
        for i in range(1, m + 1):
            if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1:
                images[j - 1] = i
                break
    return Permutation(tuple(images))


@lru_cache(maxsize=32)
def _flags_cached(spec: FieldSpec, m: int):
    return tuple(enumerate_full_flags(spec, m))


def count_at_distance(spec: FieldSpec, m: int, base: Flag, w: Permutation) -> int:
    """Number of full flags G with relative_position(base, G) = w."""
    if w.degree != m:
        raise DimensionError("permutation degree must equal the ambient dimension")
    return sum(
        1 for G in _flags_cached(spec, m) if relative_position(base, G).images == w.images
    )


def position_counts(spec: FieldSpec, m: int, base: Flag) -> dict:
    """count_at_distance for every w at once: one scan over all flags,
    returning {one-line images tuple: count}."""
    counts = {}
    for G in _flags_cached(spec, m):
        w = relative_position(base, G).images
        counts[w] = counts.get(w, 0) + 1
    return counts


def expected_count(q: int, w: Permutation) -> int:
    return q ** length(w)
