"""Box tensor products and induced maps.

The differential on M (box) N matches operation words of the type A side
against delta-path label sequences on the type D side.  Parametric families
match paths whose middle segment is a power of the repeat block; if the
repeat-block transition graph has a directed cycle between prefix and
suffix match points, infinitely many instances match and the pairing is
refused with :class:`NonterminationError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .linalg import HomologySummary, UMatrix, f2_homology, u_homology
from .structures import TypeAFamily, TypeAStructure, TypeDMorphism, TypeDStructure
from .torus_algebra import IDEMPOTENTS

Graph = Dict[object, List[Tuple[int, object]]]
Frontier = Dict[object, int]  # node -> parity of matching paths


class NonterminationError(RuntimeError):
    """A parametric family matches infinitely many delta-paths."""


def _d_graph(n: TypeDStructure) -> Graph:
    g: Graph = {gen: [] for gen in n.generator_order}
    for s, a, t in n.edges:
        g[s].append((a, t))
    return g


def _step(graph: Graph, frontier: Frontier, letter: int) -> Frontier:
    out: Frontier = {}
    for node, par in frontier.items():
        if not par:
            continue
        for a, t in graph.get(node, []):
            if a == letter:
                out[t] = out.get(t, 0) ^ par
    return {node: par for node, par in out.items() if par}


def match_word(graph: Graph, start, word) -> Frontier:
    """Endpoints of delta-paths from start with the given label sequence,
    with path-count parity."""
    frontier: Frontier = {start: 1}
    for letter in word:
        frontier = _step(graph, frontier, letter)
        if not frontier:
            break
    return frontier


def _word_reaches(graph: Graph, nodes, word) -> set:
    """Set-level (no parity) endpoints of word-labeled paths from nodes."""
    cur = set(nodes)
    for letter in word:
        cur = {t for node in cur for a, t in graph.get(node, []) if a == letter}
        if not cur:
            break
    return cur


def match_family(graph: Graph, start, fam: TypeAFamily,
                 context: str = "") -> Dict[object, int]:
    """Total contribution of a family from start: endpoint -> F2[U] mask,
    summed over all instances i >= 0 (power alpha*i + beta).

    Raises NonterminationError when infinitely many instances can match.
    """
    prefix_frontier = match_word(graph, start, fam.prefix)
    if not prefix_frontier:
        return {}
    # set-level repeat transitions for the termination analysis
    node_set = set(graph)
    for outs in graph.values():
        node_set.update(t for _, t in outs)
    node_set.update(prefix_frontier)
    nodes = list(node_set)
    succ = {u: _word_reaches(graph, [u], fam.repeat) for u in nodes}
    # nodes that admit a suffix match
    can_finish = {u for u in nodes if _word_reaches(graph, [u], fam.suffix)}
    # co-reachability: can reach a finishing node through repeat blocks
    co = set(can_finish)
    changed = True
    while changed:
        changed = False
        for u in nodes:
            if u not in co and succ[u] & co:
                co.add(u)
                changed = True
    # forward reachability from the prefix endpoints
    reach = {u for u, par in prefix_frontier.items() if par}
    frontier_sets = [set(reach)]
    while True:
        nxt = {t for u in frontier_sets[-1] for t in succ[u]}
        if nxt <= reach:
            break
        reach |= nxt
        frontier_sets.append(nxt)
    relevant = reach & co
    # cycle detection on the repeat transition graph within relevant nodes
    color: Dict[object, int] = {}

    def has_cycle(u) -> bool:
        color[u] = 1
        for t in succ[u]:
            if t not in relevant:
                continue
            c = color.get(t, 0)
            if c == 1:
                return True
            if c == 0 and has_cycle(t):
                return True
        color[u] = 2
        return False

    for u in relevant:
        if color.get(u, 0) == 0 and has_cycle(u):
            raise NonterminationError(
                f"family {fam} admits unboundedly many matches"
                + (f" in {context}" if context else ""))

    out: Dict[object, int] = {}
    frontier = prefix_frontier
    for i in range(len(nodes) + 1):
        ends = dict(frontier)
        for letter in fam.suffix:
            ends = _step(graph, ends, letter)
        mask = 1 << (fam.alpha * i + fam.beta)
        for node, par in ends.items():
            if par:
                out[node] = out.get(node, 0) ^ mask
        if not frontier:
            break
        nxt: Frontier = dict(frontier)
        for letter in fam.repeat:
            nxt = _step(graph, nxt, letter)
        frontier = nxt
    return {node: m for node, m in out.items() if m}


@dataclass
class BoxComplex:
    """Pairing chain complex of a type A and a type D structure."""

    ring: str
    generators: List[Tuple[str, str]]
    d: UMatrix
    name: str = ""

    def index(self, pair: Tuple[str, str]) -> int:
        return self.generators.index(pair)

    def d_squared_zero(self) -> bool:
        return self.d.matmul(self.d).is_zero()

    def homology(self) -> HomologySummary:
        if self.ring == "F2":
            return f2_homology(self.d.to_f2())
        return u_homology(self.d)


def _preserves_filtration(m: TypeAStructure, source: str, target: str) -> bool:
    fs, ft = m.filtration(source), m.filtration(target)
    return fs is None or ft is None or fs == ft


def box_tensor(m: TypeAStructure, n: TypeDStructure,
               preserving_only: bool = False) -> BoxComplex:
    """The box tensor product M (box) N with its differential.

    With ``preserving_only`` the differential keeps only terms coming from
    filtration-preserving operations (operations without complete filtration
    data count as preserving): the associated graded of the filtered pairing
    complex, whose homology carries the distinguishability classes.
    """
    graph = _d_graph(n)
    gens = [(x, y) for x in m.generator_order for y in n.generator_order
            if m.idempotent(x) == n.idempotent(y)]
    index = {g: i for i, g in enumerate(gens)}
    d = UMatrix(len(gens), len(gens))
    by_source: Dict[str, list] = {}
    for op in m.ops:
        if preserving_only and not _preserves_filtration(m, op.source, op.target):
            continue
        by_source.setdefault(op.source, []).append(op)
    fam_by_source: Dict[str, list] = {}
    for fam in m.families:
        if preserving_only and not _preserves_filtration(m, fam.source, fam.target):
            continue
        fam_by_source.setdefault(fam.source, []).append(fam)
    name = f"{m.name} (box) {n.name}"
    for col, (x, y) in enumerate(gens):
        for op in by_source.get(x, []):
            for end, par in match_word(graph, y, op.word).items():
                if par:
                    d.entries[index[(op.target, end)]][col] ^= 1 << op.upow
        for fam in fam_by_source.get(x, []):
            for end, mask in match_family(graph, y, fam, context=name).items():
                d.entries[index[(fam.target, end)]][col] ^= mask
    return BoxComplex(m.ring, gens, d, name=name)


@dataclass
class ChainMap:
    domain: BoxComplex
    codomain: BoxComplex
    matrix: UMatrix

    def apply_generator(self, pair: Tuple[str, str]) -> List[int]:
        col = self.domain.index(pair)
        return [self.matrix.entries[r][col] for r in range(self.matrix.rows)]


def induced_map(m: TypeAStructure, f: TypeDMorphism,
                n1: TypeDStructure, n2: TypeDStructure) -> ChainMap:
    """The chain map (I_M box f): M (box) N1 -> M (box) N2.

    Operation words are matched against paths in the combined graph of N1
    and N2 joined by the rho-entries of f; a path uses exactly one f-entry.
    Unit entries of f contribute only through the strict-unit action, giving
    the diagonal x (x) y -> x (x) z terms.
    """
    f.check_valid(n1, n2)
    graph: Graph = {}
    for s, a, t in n1.edges:
        graph.setdefault((1, s), []).append((a, (1, t)))
    for s, a, t in n2.edges:
        graph.setdefault((2, s), []).append((a, (2, t)))
    unit_entries: List[Tuple[str, str]] = []
    for s, a, t in f.entries:
        if a in IDEMPOTENTS:
            unit_entries.append((s, t))
        else:
            graph.setdefault((1, s), []).append((a, (2, t)))

    domain = box_tensor(m, n1)
    codomain = box_tensor(m, n2)
    cod_index = {g: i for i, g in enumerate(codomain.generators)}
    mat = UMatrix(len(codomain.generators), len(domain.generators))
    name = f"induced {f.name or 'map'} on {m.name}"
    for col, (x, y) in enumerate(domain.generators):
        for s, t in unit_entries:
            if s == y:
                mat.entries[cod_index[(x, t)]][col] ^= 1
        for op in m.ops:
            if op.source != x:
                continue
            for end, par in match_word(graph, (1, y), op.word).items():
                if par and end[0] == 2:
                    mat.entries[cod_index[(op.target, end[1])]][col] ^= 1 << op.upow
        for fam in m.families:
            if fam.source != x:
                continue
            for end, mask in match_family(graph, (1, y), fam, context=name).items():
                if end[0] == 2:
                    mat.entries[cod_index[(fam.target, end[1])]][col] ^= mask

    if not mat.matmul(domain.d).entries == codomain.d.matmul(mat).entries:
        raise AssertionError(
            "induced map fails to commute with the differentials "
            f"({name}); this indicates invalid input structures")
    return ChainMap(domain, codomain, mat)
