"""Independent certificates: the satellite Alexander polynomial formula and
finite permutation quotients of group presentations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Dict, List, Sequence, Tuple


class LaurentPoly:
    """Integer Laurent polynomial, stored sparsely by exponent."""

    def __init__(self, coeffs: Dict[int, int]):
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    @staticmethod
    def constant(c: int) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def from_list(min_exp: int, coeffs: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly({min_exp + i: c for i, c in enumerate(coeffs)})

    def to_list(self) -> Tuple[int, List[int]]:
        if not self.coeffs:
            return 0, [0]
        lo, hi = min(self.coeffs), max(self.coeffs)
        return lo, [self.coeffs.get(e, 0) for e in range(lo, hi + 1)]

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def scale(self, c: int, shift: int = 0) -> "LaurentPoly":
        return LaurentPoly({e + shift: c * v for e, v in self.coeffs.items()})

    def substitute_power(self, w: int) -> "LaurentPoly":
        """t -> t^w; w = 0 yields the constant value at t = 1."""
        if w == 0:
            return LaurentPoly.constant(self.evaluate(1))
        out: Dict[int, int] = {}
        for e, c in self.coeffs.items():
            out[e * w] = out.get(e * w, 0) + c
        return LaurentPoly(out)

    def evaluate(self, t: int) -> int:
        total = 0
        for e, c in self.coeffs.items():
            if t == 1:
                total += c
            elif t == -1:
                total += c if e % 2 == 0 else -c
            else:
                total += c * t ** e
        return total

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get(-e, 0) == c for e, c in self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            term = "" if abs(c) == 1 and e != 0 else str(abs(c))
            if e == 1:
                term += "t"
            elif e == -1:
                term += "t^-1"
            elif e != 0:
                term += f"t^{e}"
            parts.append(("-" if c < 0 else "+") + term)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def alexander_satellite(dp: LaurentPoly, dk: LaurentPoly,
                        w: int) -> LaurentPoly:
    """Alexander polynomial of a satellite: dp(t) * dk(t^w), normalized by
    a sign and a power of t so the result is symmetric with value +1 at
    t = 1."""
    if dk.evaluate(1) not in (1, -1):
        raise ValueError("companion polynomial must evaluate to +-1 at t=1")
    product = dp * dk.substitute_power(w)
    value = product.evaluate(1)
    if value not in (1, -1):
        raise ValueError("product does not evaluate to +-1 at t=1; cannot "
                         "normalize")
    if not product.coeffs:
        raise ValueError("zero polynomial cannot be normalized")
    lo, hi = min(product.coeffs), max(product.coeffs)
    if (lo + hi) % 2:
        raise ValueError("polynomial cannot be centered symmetrically")
    centered = product.scale(value, shift=-(lo + hi) // 2)
    if not centered.is_symmetric():
        raise ValueError("normalized polynomial is not symmetric")
    return centered


# ---------------------------------------------------------------------------
# Permutation quotients
# ---------------------------------------------------------------------------

Perm = Tuple[int, ...]


def _compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _identity(n: int) -> Perm:
    return tuple(range(n))


def cycle(n: int, *entries: int) -> Perm:
    """The cycle (entries...) in S_n, 1-indexed."""
    out = list(range(n))
    for a, b in zip(entries, entries[1:] + entries[:1]):
        out[a - 1] = b - 1
    return tuple(out)


@dataclass
class FinitePresentation:
    """Relator letters are generator names; a capitalized name is the
    inverse of the lower-case generator."""

    generators: List[str]
    relators: List[List[str]]

    def __post_init__(self):
        known = set(self.generators)
        for rel in self.relators:
            for letter in rel:
                if letter not in known and letter.lower() not in known:
                    raise ValueError(f"relator letter {letter!r} is not a "
                                     "generator or inverse")


@dataclass(frozen=True)
class PermutationHom:
    degree: int
    images: Tuple[Tuple[str, Perm], ...]

    def image(self, gen: str) -> Perm:
        return dict(self.images)[gen]

    def evaluate(self, word: Sequence[str]) -> Perm:
        table = dict(self.images)
        out = _identity(self.degree)
        for letter in word:
            if letter.islower() or letter in table:
                p = table[letter]
            else:
                p = _inverse(table[letter.lower()])
            out = _compose(out, p)
        return out

    def kills(self, pres: FinitePresentation) -> bool:
        ident = _identity(self.degree)
        return all(self.evaluate(rel) == ident for rel in pres.relators)

    def is_surjective(self) -> bool:
        gens = [p for _, p in self.images]
        seen = {_identity(self.degree)}
        frontier = [_identity(self.degree)]
        target = factorial(self.degree)
        while frontier and len(seen) < target:
            nxt = []
            for g in frontier:
                for p in gens:
                    h = _compose(g, p)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return len(seen) == target


def find_homs(pres: FinitePresentation, n: int,
              surjective_only: bool = False) -> List[PermutationHom]:
    """All homomorphisms of the presented group to S_n, by brute force over
    generator images."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n > 6:
        raise ValueError("degree capped at 6")
    perms = list(itertools.permutations(range(n)))
    out = []
    for images in itertools.product(perms, repeat=len(pres.generators)):
        hom = PermutationHom(n, tuple(zip(pres.generators, images)))
        if not hom.kills(pres):
            continue
        if surjective_only and not hom.is_surjective():
            continue
        out.append(hom)
    return out
