"""The eight-dimensional torus algebra over F2.

Basis: two idempotents i0, i1 and six Reidemeister elements
rho1, rho2, rho3, rho12, rho23, rho123.  Elements are stored as 8-bit
masks; sums are XOR.  The algebra differential is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

# Basis indices.
I0, I1, R1, R2, R3, R12, R23, R123 = range(8)

BASIS_LABELS = ("i0", "i1", "1", "2", "3", "12", "23", "123")
LABEL_TO_BASIS = {lab: i for i, lab in enumerate(BASIS_LABELS)}

IDEMPOTENTS = (I0, I1)
RHOS = (R1, R2, R3, R12, R23, R123)

# (left, right) idempotent of each basis element.
_PROFILE = {
    I0: (I0, I0),
    I1: (I1, I1),
    R1: (I0, I1),
    R2: (I1, I0),
    R3: (I0, I1),
    R12: (I0, I0),
    R23: (I1, I1),
    R123: (I0, I1),
}

# Nonzero products of two rho-basis elements.
_RHO_PRODUCTS = {
    (R1, R2): R12,
    (R2, R3): R23,
    (R1, R23): R123,
    (R12, R3): R123,
}

# The nontrivial factorizations rho = mu2(b, c) with b, c both rhos.
RHO_FACTORIZATIONS = {
    R12: ((R1, R2),),
    R23: ((R2, R3),),
    R123: ((R1, R23), (R12, R3)),
}


def idempotent_profile(basis: int) -> Tuple[int, int]:
    """Return the (left, right) idempotent of a single basis element."""
    if basis not in _PROFILE:
        raise ValueError(f"not a basis element: {basis!r}")
    return _PROFILE[basis]


def basis_multiply(a: int, b: int) -> int | None:
    """Product of two basis elements; None encodes zero."""
    la, ra = _PROFILE[a]
    lb, rb = _PROFILE[b]
    if a in IDEMPOTENTS:
        return b if a == lb else None
    if b in IDEMPOTENTS:
        return a if b == ra else None
    return _RHO_PRODUCTS.get((a, b))


@dataclass(frozen=True)
class AlgebraElement:
    """F2-linear combination of the eight basis elements, as a bit mask."""

    mask: int = 0

    @staticmethod
    def basis(i: int) -> "AlgebraElement":
        if not 0 <= i < 8:
            raise ValueError(f"not a basis element: {i!r}")
        return AlgebraElement(1 << i)

    @staticmethod
    def zero() -> "AlgebraElement":
        return AlgebraElement(0)

    @staticmethod
    def unit() -> "AlgebraElement":
        return AlgebraElement((1 << I0) | (1 << I1))

    @staticmethod
    def from_labels(labels: Iterable[str]) -> "AlgebraElement":
        mask = 0
        for lab in labels:
            mask ^= 1 << LABEL_TO_BASIS[lab]
        return AlgebraElement(mask)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.mask ^ other.mask)

    def __bool__(self) -> bool:
        return self.mask != 0

    def terms(self):
        return [i for i in range(8) if (self.mask >> i) & 1]

    def is_basis(self) -> bool:
        return self.mask != 0 and (self.mask & (self.mask - 1)) == 0

    def basis_index(self) -> int:
        if not self.is_basis():
            raise ValueError("not a single basis element")
        return self.mask.bit_length() - 1

    def labels(self):
        return [BASIS_LABELS[i] for i in self.terms()]

    def __str__(self) -> str:
        if not self.mask:
            return "0"
        return "+".join(self.labels())


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of the basis product table."""
    mask = 0
    for i in a.terms():
        for j in b.terms():
            p = basis_multiply(i, j)
            if p is not None:
                mask ^= 1 << p
    return AlgebraElement(mask)


class RhoWord(tuple):
    """An ordered sequence of rho-basis labels, the inputs of one A-infinity
    operation.  Composability chains idempotent profiles; it does not require
    nonzero products."""

    def __new__(cls, entries: Iterable[int]):
        entries = tuple(entries)
        for e in entries:
            if e not in RHOS:
                raise ValueError(f"not a rho-basis element: {e!r}")
        return super().__new__(cls, entries)

    def is_composable(self) -> bool:
        for a, b in zip(self, self[1:]):
            if _PROFILE[a][1] != _PROFILE[b][0]:
                return False
        return True

    @property
    def left_idempotent(self) -> int:
        if not self:
            raise ValueError("empty word has no idempotent profile")
        return _PROFILE[self[0]][0]

    @property
    def right_idempotent(self) -> int:
        if not self:
            raise ValueError("empty word has no idempotent profile")
        return _PROFILE[self[-1]][1]

    @staticmethod
    def from_labels(labels: Iterable[str]) -> "RhoWord":
        return RhoWord(LABEL_TO_BASIS[lab] for lab in labels)

    def labels(self):
        return [BASIS_LABELS[i] for i in self]

    def __repr__(self) -> str:
        return f"RhoWord({list(self.labels())})"
