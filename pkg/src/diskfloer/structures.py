"""Type D structures, type A structures, and type D morphisms over the
torus algebra, with structure-equation validators and morphism spaces.

Type A operation tables come in two forms: finite operations
m(x, rho-word) = U^p * y, and parametric families whose word is
prefix + repeat^i + suffix with U-power alpha*i + beta, one operation per
i >= 0.  The parameter i is determined by the word length, so exact word
lookup needs no instantiation cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import F2Matrix, f2_homology
from .torus_algebra import (
    BASIS_LABELS,
    IDEMPOTENTS,
    RHO_FACTORIZATIONS,
    basis_multiply,
    idempotent_profile,
)

Word = Tuple[int, ...]


def word_profile(word: Word) -> Optional[Tuple[int, int]]:
    """(left, right) idempotent of a composable word; None if not composable."""
    if not word:
        return None
    for a, b in zip(word, word[1:]):
        if idempotent_profile(a)[1] != idempotent_profile(b)[0]:
            return None
    return (idempotent_profile(word[0])[0], idempotent_profile(word[-1])[1])


# ---------------------------------------------------------------------------
# Type D structures
# ---------------------------------------------------------------------------

class TypeDStructure:
    """Generators with idempotents and delta-1 edges labeled by algebra
    basis elements."""

    def __init__(self, generators: Sequence[Tuple[str, int]],
                 edges: Sequence[Tuple[str, int, str]],
                 name: str = ""):
        self.generator_order = [g for g, _ in generators]
        self.idempotents = dict(generators)
        self.edges = [tuple(e) for e in edges]
        self.name = name
        if len(self.idempotents) != len(self.generator_order):
            raise ValueError("duplicate generator names")
        for s, a, t in self.edges:
            if s not in self.idempotents or t not in self.idempotents:
                raise ValueError(f"edge on unknown generator: {s}->{t}")
            if not 0 <= a < 8:
                raise ValueError(f"bad edge label on {s}->{t}")
        self._out: Dict[str, List[Tuple[int, str]]] = {}
        for s, a, t in self.edges:
            self._out.setdefault(s, []).append((a, t))

    @property
    def generators(self) -> List[str]:
        return list(self.generator_order)

    def idempotent(self, g: str) -> int:
        return self.idempotents[g]

    def outgoing(self, g: str) -> List[Tuple[int, str]]:
        return self._out.get(g, [])

    def validate(self) -> List[str]:
        problems = []
        for s, a, t in self.edges:
            left, right = idempotent_profile(a)
            if left != self.idempotents[s] or right != self.idempotents[t]:
                problems.append(
                    f"idempotent mismatch on edge {s} --{BASIS_LABELS[a]}--> {t}")
        if problems:
            return problems
        # structure equation: products along all 2-edge paths cancel
        residual: Dict[Tuple[str, str], int] = {}
        for x in self.generator_order:
            for a, y in self.outgoing(x):
                for b, z in self.outgoing(y):
                    p = basis_multiply(a, b)
                    if p is not None:
                        key = (x, z)
                        residual[key] = residual.get(key, 0) ^ (1 << p)
        for (x, z), mask in sorted(residual.items()):
            if mask:
                labels = "+".join(BASIS_LABELS[i] for i in range(8)
                                  if (mask >> i) & 1)
                problems.append(f"structure equation fails on ({x},{z}): {labels}")
        return problems

    def check_valid(self) -> None:
        problems = self.validate()
        if problems:
            raise ValueError("; ".join(problems))


# ---------------------------------------------------------------------------
# Type A structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeAOp:
    source: str
    word: Word
    upow: int
    target: str


@dataclass(frozen=True)
class TypeAFamily:
    source: str
    prefix: Word
    repeat: Word
    suffix: Word
    alpha: int
    beta: int
    target: str

    def instance(self, i: int) -> TypeAOp:
        word = self.prefix + self.repeat * i + self.suffix
        return TypeAOp(self.source, word, self.alpha * i + self.beta, self.target)

    def match(self, word: Word) -> Optional[int]:
        """The unique i with word = prefix + repeat^i + suffix, or None."""
        if not self.repeat:
            return 0 if word == self.prefix + self.suffix else None
        extra = len(word) - len(self.prefix) - len(self.suffix)
        if extra < 0 or extra % len(self.repeat):
            return None
        i = extra // len(self.repeat)
        return i if self.instance(i).word == word else None


@dataclass(frozen=True)
class AGenerator:
    name: str
    idempotent: int
    filtration: Optional[int] = None
    passive: bool = False


class TypeAStructure:
    """A-infinity module over the torus algebra, over F2 or F2[U]."""

    def __init__(self, ring: str, generators: Sequence[AGenerator],
                 ops: Sequence[TypeAOp] = (),
                 families: Sequence[TypeAFamily] = (),
                 fragment: bool = False, name: str = ""):
        if ring not in ("F2", "F2U"):
            raise ValueError(f"unknown ring {ring!r}")
        self.ring = ring
        self.generator_order = [g.name for g in generators]
        self.gen_info = {g.name: g for g in generators}
        self.ops = list(ops)
        self.families = list(families)
        self.fragment = fragment
        self.name = name
        if len(self.gen_info) != len(self.generator_order):
            raise ValueError("duplicate generator names")
        for op in self.ops:
            self._check_names(op.source, op.target)
        for fam in self.families:
            self._check_names(fam.source, fam.target)
            if not fam.repeat:
                raise ValueError("family repeat block must be nonempty")

    def _check_names(self, *names: str) -> None:
        for n in names:
            if n not in self.gen_info:
                raise ValueError(f"operation on unknown generator: {n}")

    @property
    def generators(self) -> List[str]:
        return list(self.generator_order)

    def idempotent(self, g: str) -> int:
        return self.gen_info[g].idempotent

    def filtration(self, g: str) -> Optional[int]:
        return self.gen_info[g].filtration

    def instantiated_ops(self, cap: int) -> List[TypeAOp]:
        out = list(self.ops)
        for fam in self.families:
            out += [fam.instance(i) for i in range(cap + 1)]
        return out

    def lookup(self, source: str, word: Word) -> Dict[str, int]:
        """All operations m(source, word): target -> F2[U] coefficient mask.

        Family matching is exact: the parameter is determined by the word
        length, so no cap is involved.
        """
        acc: Dict[str, int] = {}
        for op in self.ops:
            if op.source == source and op.word == word:
                acc[op.target] = acc.get(op.target, 0) ^ (1 << op.upow)
        for fam in self.families:
            if fam.source != source:
                continue
            i = fam.match(word)
            if i is not None:
                acc[fam.target] = acc.get(fam.target, 0) ^ (1 << (fam.alpha * i + fam.beta))
        return {t: m for t, m in acc.items() if m}

    def ops_into(self, target: str, cap: int) -> List[TypeAOp]:
        return [op for op in self.instantiated_ops(cap) if op.target == target]

    # -- validation --------------------------------------------------------

    def validate(self, cap: int = 8) -> List[str]:
        if cap < 2:
            raise ValueError("cap must be >= 2")
        problems = []
        if self.ring == "F2":
            for op in self.ops:
                if op.upow:
                    problems.append(f"U-power on F2 module: {op}")
            for fam in self.families:
                if fam.alpha or fam.beta:
                    problems.append(f"U-power on F2 module: {fam}")
        for op in self.instantiated_ops(2):
            problems += self._compat(op)
        problems += self._a_infinity(cap)
        return problems

    def _compat(self, op: TypeAOp) -> List[str]:
        src_idem = self.idempotent(op.source)
        tgt_idem = self.idempotent(op.target)
        if not op.word:
            if src_idem != tgt_idem:
                return [f"m1 changes idempotent: {op.source}->{op.target}"]
            return []
        prof = word_profile(op.word)
        if prof is None:
            return [f"non-composable word on {op.source}: "
                    f"{[BASIS_LABELS[a] for a in op.word]}"]
        left, right = prof
        if left != src_idem or right != tgt_idem:
            return [f"idempotent mismatch on {op.source}"
                    f" --{[BASIS_LABELS[a] for a in op.word]}--> {op.target}"]
        return []

    def _a_infinity(self, cap: int) -> List[str]:
        """Check the A-infinity relations on all words where a term can be
        nonzero: concatenations of two operation words, and operation words
        with one letter expanded by a mu2-factorization.  Relations at all
        other words vanish term by term."""
        by_source: Dict[str, List[TypeAOp]] = {}
        for op in self.instantiated_ops(cap):
            by_source.setdefault(op.source, []).append(op)
        candidates: Dict[str, set] = {g: set() for g in self.generator_order}
        for src, ops in by_source.items():
            for op in ops:
                for op2 in by_source.get(op.target, []):
                    candidates[src].add(op.word + op2.word)
                for idx, letter in enumerate(op.word):
                    for pair in RHO_FACTORIZATIONS.get(letter, ()):
                        candidates[src].add(
                            op.word[:idx] + pair + op.word[idx + 1:])
        problems = []
        for src in self.generator_order:
            for word in sorted(candidates[src]):
                residual = self.a_infinity_residual(src, word)
                if residual:
                    labels = [BASIS_LABELS[a] for a in word]
                    problems.append(
                        f"A-infinity relation fails at ({src}, {labels}): "
                        f"{sorted(residual)}")
        return problems

    def a_infinity_residual(self, src: str, word: Word) -> Dict[str, int]:
        """Sum of all A-infinity relation terms at (src, word)."""
        from .linalg import pmul

        acc: Dict[str, int] = {}

        def add(target: str, mask: int) -> None:
            acc[target] = acc.get(target, 0) ^ mask

        for j in range(len(word) + 1):
            for mid, poly1 in self.lookup(src, word[:j]).items():
                for tgt, poly2 in self.lookup(mid, word[j:]).items():
                    add(tgt, pmul(poly1, poly2))
        for idx in range(len(word) - 1):
            prod = basis_multiply(word[idx], word[idx + 1])
            if prod is None:
                continue
            contracted = word[:idx] + (prod,) + word[idx + 2:]
            for tgt, poly in self.lookup(src, contracted).items():
                add(tgt, poly)
        return {t: m for t, m in acc.items() if m}

    def check_valid(self, cap: int = 8) -> None:
        problems = self.validate(cap)
        if problems:
            raise ValueError("; ".join(problems))


# ---------------------------------------------------------------------------
# Type D morphisms
# ---------------------------------------------------------------------------

class TypeDMorphism:
    """f1: N1 -> A (x) N2, stored as (source, algebra basis element, target)
    entries.  An idempotent coefficient encodes a unit entry."""

    def __init__(self, entries: Sequence[Tuple[str, int, str]], name: str = ""):
        self.entries = [tuple(e) for e in entries]
        self.name = name
        for s, a, t in self.entries:
            if not 0 <= a < 8:
                raise ValueError(f"bad coefficient on {s}->{t}")

    def validate(self, n1: TypeDStructure, n2: TypeDStructure) -> List[str]:
        problems = []
        for s, a, t in self.entries:
            if s not in n1.idempotents:
                problems.append(f"morphism source {s} not in domain")
                continue
            if t not in n2.idempotents:
                problems.append(f"morphism target {t} not in codomain")
                continue
            left, right = idempotent_profile(a)
            if left != n1.idempotent(s) or right != n2.idempotent(t):
                problems.append(
                    f"idempotent mismatch on entry {s} --{BASIS_LABELS[a]}--> {t}")
        if problems:
            return problems
        residual = morphism_residual(self.entries, n1, n2)
        for (s, t), mask in sorted(residual.items()):
            if mask:
                labels = "+".join(BASIS_LABELS[i] for i in range(8)
                                  if (mask >> i) & 1)
                problems.append(f"morphism equation fails on ({s},{t}): {labels}")
        return problems

    def check_valid(self, n1: TypeDStructure, n2: TypeDStructure) -> None:
        problems = self.validate(n1, n2)
        if problems:
            raise ValueError("; ".join(problems))


def morphism_residual(entries: Iterable[Tuple[str, int, str]],
                      n1: TypeDStructure,
                      n2: TypeDStructure) -> Dict[Tuple[str, str], int]:
    """The morphism equation residual
    (mu2 (x) I)(I (x) f)delta1_N1 + (mu2 (x) I)(I (x) delta1_N2)f,
    as (source, target) -> algebra mask."""
    residual: Dict[Tuple[str, str], int] = {}

    def add(s: str, t: str, basis: int) -> None:
        key = (s, t)
        residual[key] = residual.get(key, 0) ^ (1 << basis)

    entry_list = list(entries)
    by_src: Dict[str, List[Tuple[int, str]]] = {}
    for s, a, t in entry_list:
        by_src.setdefault(s, []).append((a, t))
    for x in n1.generator_order:
        for a, y in n1.outgoing(x):
            for c, z in by_src.get(y, []):
                p = basis_multiply(a, c)
                if p is not None:
                    add(x, z, p)
    for s, c, t in entry_list:
        for b, w in n2.outgoing(t):
            p = basis_multiply(c, b)
            if p is not None:
                add(s, w, p)
    return {k: m for k, m in residual.items() if m}


def morphism_space(n1: TypeDStructure, n2: TypeDStructure):
    """Chain-homotopy classes of type D morphisms N1 -> N2.

    The entry space of idempotent-compatible (source, basis, target) triples
    carries the F2-linear operator L sending a morphism to its equation
    residual; L is also the homotopy differential, and L^2 = 0, so the answer
    is the homology of (entries, L).

    Returns (dimension, representatives) where each representative is a list
    of entries.
    """
    n1.check_valid()
    n2.check_valid()
    slots: List[Tuple[str, int, str]] = []
    for x in n1.generator_order:
        for z in n2.generator_order:
            for a in range(8):
                if idempotent_profile(a) == (n1.idempotent(x), n2.idempotent(z)):
                    slots.append((x, a, z))
    index = {slot: i for i, slot in enumerate(slots)}
    n = len(slots)
    mat = F2Matrix(n, n)
    for col, slot in enumerate(slots):
        residual = morphism_residual([slot], n1, n2)
        for (s, t), mask in residual.items():
            for basis in range(8):
                if (mask >> basis) & 1:
                    mat.toggle(index[(s, basis, t)], col)
    summary = f2_homology(mat)
    reps = []
    for vec in summary.representatives:
        reps.append([slots[i] for i, bit in enumerate(vec) if bit])
    return summary.free_rank, reps, slots, mat
