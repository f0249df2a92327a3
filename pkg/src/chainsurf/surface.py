"""Fenchel-Nielsen surface model over a cubic graph and its decomposition along separating cuffs.

A vertex of the graph is a pair of pants, an edge is a cuff. Every metric
quantity used downstream depends only on (graph, cuff lengths); twists are
carried but never read.

Area conventions: a block ``M_i`` owns its pants outright (area 2*pi per
pants). Its core ``M_i^0`` is the block minus the half-collars of the
*separating* cuffs on its boundary. The pants model in :mod:`chainsurf.rayleigh`
subtracts the half-collars of all three cuffs of every pants instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import hypgeom
from .errors import DomainError, StructureError
from .graphs import CubicGraph, MultiGraph, bridge_components, bridges


@dataclass(frozen=True)
class FNSurface:
    graph: CubicGraph
    cuff_lengths: tuple
    twists: tuple

    def __post_init__(self):
        m = self.graph.edge_count
        if len(self.cuff_lengths) != m or len(self.twists) != m:
            raise DomainError("need one cuff length and one twist per edge")
        if any(not (math.isfinite(x) and x > 0) for x in self.cuff_lengths):
            raise DomainError("cuff lengths must be positive and finite")
        if any(not math.isfinite(x) for x in self.twists):
            raise DomainError("twists must be finite")

    @property
    def genus(self) -> int:
        return self.graph.vertex_count // 2 + 1

    @property
    def area(self) -> float:
        return hypgeom.PANTS_AREA * self.graph.vertex_count

    @property
    def uniform_length(self) -> float | None:
        first = self.cuff_lengths[0]
        return first if all(x == first for x in self.cuff_lengths) else None


def assemble(graph: MultiGraph, epsilon: float, twists=None) -> FNSurface:
    """Glue one copy of the equilateral pants P_epsilon per vertex along the edges."""
    try:
        cubic = CubicGraph.from_multigraph(graph)
    except DomainError as exc:
        raise DomainError(f"cannot assemble a surface: {exc}") from None
    eps = hypgeom._check_length(epsilon, "epsilon")
    m = cubic.edge_count
    if twists is None:
        twists = (0.0,) * m
    return FNSurface(cubic, (eps,) * m, tuple(float(t) for t in twists))


@dataclass(frozen=True)
class Component:
    vertices: tuple
    area: float
    boundary_cuffs: tuple


@dataclass(frozen=True)
class BlockChain:
    """Blocks M_0..M_g0 in path order and the separating cuffs gamma_1..gamma_g0 between them.

    ``separating_cuffs[i]`` joins ``components[i]`` and ``components[i + 1]``.
    ``cuff_lengths[i]`` is the length of ``separating_cuffs[i]``.
    """

    components: tuple
    separating_cuffs: tuple
    core_areas: tuple
    cuff_lengths: tuple

    @property
    def block_count(self) -> int:
        return len(self.components)


def block_chain(surface: FNSurface) -> BlockChain:
    graph = surface.graph
    cut = bridges(graph)
    label = bridge_components(graph, cut)
    ncomp = max(label) + 1
    links = {c: [] for c in range(ncomp)}
    for i in sorted(cut):
        u, v = graph.edges[i]
        links[label[u]].append((label[v], i))
        links[label[v]].append((label[u], i))
    if any(len(nb) > 2 for nb in links.values()):
        raise StructureError("separating cuffs do not form a path: surface is not of chain type")

    # walk the path from the end block holding the smallest vertex id
    ends = [c for c in range(ncomp) if len(links[c]) <= 1]
    start = min(ends, key=lambda c: label.index(c))
    order, cuffs = [start], []
    prev = None
    while True:
        nxt = [(c, i) for c, i in links[order[-1]] if c != prev]
        if not nxt:
            break
        prev = order[-1]
        c, i = nxt[0]
        order.append(c)
        cuffs.append(i)

    members = {c: [] for c in range(ncomp)}
    for v, c in enumerate(label):
        members[c].append(v)
    components, cores = [], []
    for pos, c in enumerate(order):
        bound = tuple(cuffs[j] for j in (pos - 1, pos) if 0 <= j < len(cuffs))
        area = hypgeom.PANTS_AREA * len(members[c])
        core = area - sum(hypgeom.half_collar_area(surface.cuff_lengths[i]) for i in bound)
        components.append(Component(tuple(members[c]), area, bound))
        cores.append(core)
    return BlockChain(
        tuple(components),
        tuple(cuffs),
        tuple(cores),
        tuple(surface.cuff_lengths[i] for i in cuffs),
    )


def separating_count(surface: FNSurface) -> int:
    """Number of separating cuffs, i.e. bridges of the graph."""
    return len(bridges(surface.graph))
