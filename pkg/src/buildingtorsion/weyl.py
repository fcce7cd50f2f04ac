"""Symmetric group words: Coxeter length, rotation permutations, and the
length generating polynomial.

Permutations are written in one-line notation with 1-indexed images, so
Permutation((2, 3, 1)) sends 1 to 2, 2 to 3, 3 to 1.  Coxeter length in
type A equals the inversion count of the one-line word.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _all_perms

from .errors import DimensionError, SizeLimitError

POINCARE_DEGREE_LIMIT = 9


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        m = len(self.images)
        if sorted(self.images) != list(range(1, m + 1)):
            raise DimensionError(
                f"{self.images} is not a permutation of 1..{m} in one-line notation"
            )

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, w in enumerate(self.images, start=1):
            inv[w - 1] = i
        return Permutation(tuple(inv))

    @staticmethod
    def identity(m):
        return Permutation(tuple(range(1, m + 1)))


def length(w: Permutation) -> int:
    """Coxeter length = number of inversions of the one-line word."""
    img = w.images
    m = len(img)
    return sum(1 for i in range(m) for j in range(i + 1, m) if img[i] > img[j])


def cycle_perm(n: int, k: int) -> Permutation:
    """The degree n+1 rotation sending 1..n+1 to k+1, ..., n+1, 1, ..., k."""
    if not 1 <= k <= n:
        raise DimensionError(f"k={k} out of range 1..{n}")
    return Permutation(tuple(range(k + 1, n + 2)) + tuple(range(1, k + 1)))


def poincare_polynomial(m: int, q: int) -> int:
    """Sum of q^length(w) over all w in S_m, by explicit enumeration."""
    if m < 1:
        raise DimensionError("m must be >= 1")
    if m > POINCARE_DEGREE_LIMIT:
        raise SizeLimitError(
            f"S_{m} enumeration refused (limit m <= {POINCARE_DEGREE_LIMIT})",
            estimate=None,
        )
    total = 0
    for img in _all_perms(range(1, m + 1)):
        inv = sum(
            1 for i in range(m) for j in range(i + 1, m) if img[i] > img[j]
        )
        total += q**inv
    return total
