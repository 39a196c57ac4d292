"""Directed graphs of FOCCs over set coalgebras.

Over 𝕂(O) every subbicomodule of Υ^U is a sum of lines <[p⊗q]> with p ≠ q;
the line <[p⊗q]> becomes the edge q → p. Two FOCCs are isomorphic exactly
when their graphs are.
"""
import logging
import time
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

import networkx as nx
from tqdm import tqdm

from .bicomodule import UniversalBicomodule
from .coalgebra import Coalgebra, CoalgebraMorphism, morphism
from .config import settings
from .errors import InputError, StructureError
from .linalg import Subspace

logger = logging.getLogger("codiff.graphs")


@dataclass(frozen=True)
class FoccGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def to_dot(self, name: str = "focc") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for s, t in self.edges:
            lines.append(f'  "{s}" -> "{t}";')
        lines.append("}")
        return "\n".join(lines)


def is_set_coalgebra(C: Coalgebra) -> bool:
    one = C.field.one
    return all(C.coproduct[i] == ((i, i, one),) and C.counit[i] == one for i in range(C.n))


def _require_set(C: Coalgebra):
    if not is_set_coalgebra(C):
        raise StructureError(f"{C.name} is not a set coalgebra")


def set_coalgebra_graph(U: UniversalBicomodule, S: Subspace) -> FoccGraph:
    C = U.coalgebra
    _require_set(C)
    edges = []
    for k, (p, q) in enumerate(U.reps):
        e = [U.field.zero] * U.dim
        e[k] = U.field.one
        if S.member(e):
            edges.append((C.labels[q], C.labels[p]))
    if len(edges) != S.dim:
        raise StructureError("subspace is not a sum of singleton components")
    return FoccGraph(C.labels, tuple(edges))


def focc_from_edges(U: UniversalBicomodule, edges: Sequence[tuple[str, str]]) -> Subspace:
    """Υ_I = ⊕ <[p⊗q]> for edges q → p."""
    C = U.coalgebra
    _require_set(C)
    vecs = []
    for src, tgt in edges:
        q, p = C.index(src), C.index(tgt)
        if p == q:
            raise InputError("loops do not correspond to FOCC components")
        vecs.append(U.dense(U.cls(p, q)))
    return Subspace.from_vectors(vecs, U.dim, U.field)


def permutation_morphism(C: Coalgebra, perm: Sequence[int]) -> CoalgebraMorphism:
    """The set coalgebra automorphism e_i ↦ e_perm[i]."""
    _require_set(C)
    rows = [[C.field.zero] * C.n for _ in range(C.n)]
    for i, j in enumerate(perm):
        rows[j][i] = C.field.one
    return morphism(C, C, rows)


def graphs_isomorphic(a: FoccGraph, b: FoccGraph) -> bool:
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx())


@dataclass
class GraphClass:
    graph: FoccGraph
    count: int


def classify_set_foccs(points: int, dim: int) -> list[GraphClass]:
    """Isomorphism classes of loop-free digraphs with ``dim`` edges on ``points`` vertices."""
    if points < 1 or dim < 0:
        raise InputError("need at least one point and a nonnegative dimension")
    t0 = time.perf_counter()
    labels = tuple(f"p{i}" for i in range(points))
    pairs = list(permutations(labels, 2))
    buckets: dict[str, list[tuple[nx.DiGraph, GraphClass]]] = {}
    total = 0
    for chosen in tqdm(combinations(pairs, dim), desc="graphs", disable=not settings.progress):
        total += 1
        fg = FoccGraph(labels, tuple(chosen))
        g = fg.to_networkx()
        h = nx.weisfeiler_lehman_graph_hash(g)
        bucket = buckets.setdefault(h, [])
        for rep, cls in bucket:
            if nx.is_isomorphic(rep, g):
                cls.count += 1
                break
        else:
            bucket.append((g, GraphClass(fg, 1)))
    classes = [cls for bucket in buckets.values() for _, cls in bucket]
    classes.sort(key=lambda c: (-c.count, c.graph.edges))
    logger.debug(
        "classify %d points dim %d took %.3fs; dim=%d", points, dim, time.perf_counter() - t0, len(classes)
    )
    logger.info("%d FOCCs of dim %d on %d points fall into %d classes", total, dim, points, len(classes))
    return classes
