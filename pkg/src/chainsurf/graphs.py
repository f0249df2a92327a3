"""Trivalent multigraphs: girth, bridges, random generation and the chained graph.

Edges are stored as ``(u, v)`` with ``u <= v``; repeats are parallel edges and
``(u, u)`` is a self-loop, which adds 2 to the degree of ``u``. Functions that
return edge sets return *edge indices*, since parallel edges share endpoints.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, GenerationFailure, UnsupportedError

INFINITE_GIRTH = math.inf

# smallest cubic graph of each girth (cage orders)
CAGE_ORDERS = {3: 4, 4: 6, 5: 10, 6: 14, 7: 24, 8: 30}

# above this girth uniform rejection is hopeless (acceptance ~ exp(-13.9) at girth 7)
UNIFORM_MAX_GIRTH = 5

MAX_SUPPORTED_GIRTH = 12


@dataclass(frozen=True)
class MultiGraph:
    vertex_count: int
    edges: tuple

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise DomainError(f"vertex_count must be a non-negative integer, got {n!r}")
        norm = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {e!r} has an endpoint outside [0, {n})")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "vertex_count", int(n))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def incidence(self) -> list[list[tuple[int, int]]]:
        """Per vertex, the list of ``(neighbour, edge_index)``; a loop appears twice."""
        inc = [[] for _ in range(self.vertex_count)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((v, i))
            inc[v].append((u, i))
        return inc

    def is_connected(self, skip_edge: int | None = None) -> bool:
        if self.vertex_count == 0:
            return True
        inc = self.incidence()
        seen = [False] * self.vertex_count
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for y, i in inc[x]:
                if i != skip_edge and not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        return count == self.vertex_count

    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees())


class CubicGraph(MultiGraph):
    """Connected multigraph with every degree equal to 3."""

    def __post_init__(self):
        super().__post_init__()
        if self.vertex_count == 0 or self.vertex_count % 2:
            raise DomainError(f"a cubic graph needs a positive even vertex count, got {self.vertex_count}")
        if not self.is_cubic():
            raise DomainError("graph is not 3-regular")
        if not self.is_connected():
            raise DomainError("graph is not connected")

    @classmethod
    def from_multigraph(cls, graph: MultiGraph) -> "CubicGraph":
        if isinstance(graph, CubicGraph):
            return graph
        return cls(graph.vertex_count, graph.edges)


def girth(graph: MultiGraph, limit: float = INFINITE_GIRTH):
    """Length of the shortest cycle; ``math.inf`` for a forest.

    Loops count 1 and parallel pairs 2. With ``limit``, the search stops as
    soon as it is known that the girth is at least ``limit``; the returned
    value is then exact if below ``limit`` and some value ``>= limit`` otherwise.
    """
    if any(u == v for u, v in graph.edges):
        return 1
    if len(set(graph.edges)) < graph.edge_count:
        return 2
    if limit <= 3:
        # simple graph: girth >= 3 is already established
        return 3 if _has_cycle(graph) else INFINITE_GIRTH

    n = graph.vertex_count
    adj = [[] for _ in range(n)]
    for u, v in graph.edges:
        adj[u].append(v)
        adj[v].append(u)
    best = INFINITE_GIRTH
    dist = [-1] * n
    parent = [-1] * n
    for s in range(n):
        cap = min(best, limit)
        touched = [s]
        dist[s] = 0
        parent[s] = -1
        queue = deque([s])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            # every cycle detected from x has length >= 2 * dx
            if 2 * dx >= cap:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dx + 1
                    parent[y] = x
                    touched.append(y)
                    queue.append(y)
                elif y != parent[x]:
                    best = min(best, dx + dist[y] + 1)
                    cap = min(best, limit)
        for x in touched:
            dist[x] = -1
        if best == 3:
            break
    if best >= limit:
        return best if limit == INFINITE_GIRTH else limit
    return best


def _has_cycle(graph: MultiGraph) -> bool:
    # union-find: an edge inside one tree closes a cycle
    parent = list(range(graph.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in graph.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def bridges(graph: MultiGraph) -> frozenset:
    """Indices of the edges whose removal disconnects the graph."""
    if not graph.is_connected():
        raise DomainError("bridges() requires a connected graph")
    n = graph.vertex_count
    if n == 0:
        return frozenset()
    inc = graph.incidence()
    disc = [-1] * n
    low = [0] * n
    found = set()
    timer = 0
    # iterative DFS; frames are (vertex, edge used to enter, iterator position)
    disc[0] = low[0] = timer
    timer += 1
    stack = [(0, -1, 0)]
    while stack:
        x, via, pos = stack[-1]
        if pos < len(inc[x]):
            stack[-1] = (x, via, pos + 1)
            y, i = inc[x][pos]
            if i == via:
                continue
            if disc[y] < 0:
                disc[y] = low[y] = timer
                timer += 1
                stack.append((y, i, 0))
            else:
                low[x] = min(low[x], disc[y])
        else:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] > disc[p]:
                    found.add(via)
    return frozenset(found)


def moore_bound(min_girth: int) -> int:
    """Lower bound on the order of a simple cubic graph with the given girth."""
    if min_girth <= 2:
        return 2
    r, odd = divmod(min_girth, 2)
    if odd:
        return 1 + 3 * (2**r - 1)
    return 2 * (2**r - 1)


def random_pairing(vertex_count: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform perfect matching of 3 stubs per vertex, as an edge list."""
    perm = rng.permutation(3 * vertex_count) // 3
    return [(int(a), int(b)) for a, b in zip(perm[0::2], perm[1::2])]


def _greedy_girth_pairing(n, min_girth, rng):
    """Pair stubs one edge at a time, never closing a cycle shorter than ``min_girth``.

    The next edge starts at a most-saturated open vertex and goes to a random
    open vertex (weighted by free stubs) outside its radius ``min_girth - 2``
    ball. Returns None on a dead end.
    """
    adj = [[] for _ in range(n)]
    free = np.full(n, 3, dtype=np.int64)
    radius = min_girth - 2
    dist = [-1] * n
    in_ball = np.zeros(n, dtype=bool)
    while True:
        open_v = np.flatnonzero(free)
        if open_v.size == 0:
            break
        f = free[open_v]
        tied = open_v[f == f.min()]
        u = int(tied[rng.integers(tied.size)])
        dist[u] = 0
        touched = [u]
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if dist[x] == radius:
                continue
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    touched.append(y)
                    queue.append(y)
        in_ball[touched] = True
        cand = open_v[~in_ball[open_v]]
        in_ball[touched] = False
        for x in touched:
            dist[x] = -1
        if cand.size == 0:
            return None
        weights = free[cand].astype(float)
        v = int(cand[rng.choice(cand.size, p=weights / weights.sum())])
        adj[u].append(v)
        adj[v].append(u)
        free[u] -= 1
        free[v] -= 1
    return [(u, v) for u in range(n) for v in adj[u] if u < v]


# successful generations keyed by (n, girth, seed, bridgeless) -> (attempts used, graph);
# output is a deterministic function of the key, so a hit within budget is exact
_GENERATED: dict = {}
_GENERATED_MAX = 4096


def random_cubic_with_girth(
    vertex_count: int,
    min_girth: int,
    seed: int = 0,
    retry_budget: int = 100_000,
    bridgeless: bool = False,
) -> CubicGraph:
    """Random connected cubic multigraph with girth at least ``min_girth``.

    For ``min_girth <= 5`` this is the configuration model conditioned by
    rejection: whole pairings are resampled until one is accepted, so the
    result is uniform over accepted pairings. Larger girths use a greedy
    girth-constrained pairing with restarts. ``bridgeless`` additionally
    rejects graphs that have a bridge. Deterministic in ``seed``.
    """
    n = int(vertex_count)
    if n < 2 or n % 2:
        raise DomainError(f"vertex_count must be even and >= 2, got {vertex_count!r}")
    if min_girth < 1:
        raise DomainError(f"min_girth must be >= 1, got {min_girth!r}")
    if min_girth >= 3 and n < moore_bound(min_girth):
        raise GenerationFailure(
            f"no cubic graph on {n} vertices has girth >= {min_girth} (Moore bound {moore_bound(min_girth)})",
            attempts=0,
        )
    key = (n, int(min_girth), seed, bool(bridgeless))
    hit = _GENERATED.get(key)
    if hit is not None and hit[0] <= retry_budget:
        return hit[1]
    rng = np.random.default_rng(seed)
    uniform = min_girth <= UNIFORM_MAX_GIRTH
    for attempt in range(1, retry_budget + 1):
        edges = random_pairing(n, rng) if uniform else _greedy_girth_pairing(n, min_girth, rng)
        if edges is None:
            continue
        g = MultiGraph(n, edges)
        if not g.is_connected():
            continue
        if min_girth > 1 and girth(g, limit=min_girth) < min_girth:
            continue
        if bridgeless and bridges(g):
            continue
        result = CubicGraph(n, g.edges)
        if len(_GENERATED) >= _GENERATED_MAX:
            _GENERATED.clear()
        _GENERATED[key] = (attempt, result)
        return result
    raise GenerationFailure(
        f"no connected cubic graph with {n} vertices and girth >= {min_girth} "
        f"found in {retry_budget} attempts; vertex_count is probably too small",
        attempts=retry_budget,
    )


def lcf_graph(n: int, shifts: Sequence[int], repeats: int) -> CubicGraph:
    """Hamiltonian cubic graph from LCF notation ``[shifts]^repeats``."""
    jumps = list(shifts) * repeats
    if len(jumps) != n:
        raise DomainError("LCF word length must equal the vertex count")
    edges = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)}
    for i, s in enumerate(jumps):
        j = (i + s) % n
        edges.add((min(i, j), max(i, j)))
    return CubicGraph(n, sorted(edges))


def petersen_graph() -> CubicGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicGraph(10, outer + spokes + inner)


def known_cage(min_girth: int) -> CubicGraph | None:
    """The unique cubic cage for girths 3..8, or None."""
    builders = {
        3: lambda: lcf_graph(4, [2], 4),
        4: lambda: lcf_graph(6, [3], 6),
        5: petersen_graph,
        6: lambda: lcf_graph(14, [5, -5], 7),
        7: lambda: lcf_graph(24, [12, 7, -7], 8),
        8: lambda: lcf_graph(30, [-13, -9, 7, -7, 9, 13], 5),
    }
    build = builders.get(min_girth)
    return build() if build else None


def theta_graph() -> CubicGraph:
    """Two vertices joined by three parallel edges (girth 2)."""
    return CubicGraph(2, [(0, 1)] * 3)


def block_graph(vertex_count: int, min_girth: int, seed: int = 0, retry_budget: int = 100_000) -> CubicGraph:
    """A bridgeless cubic block for the chain: a known cage when the size matches, else random."""
    if min_girth <= 2 and vertex_count == 2:
        return theta_graph()
    if CAGE_ORDERS.get(min_girth) == vertex_count:
        return known_cage(min_girth)
    return random_cubic_with_girth(vertex_count, min_girth, seed, retry_budget, bridgeless=True)


@lru_cache(maxsize=64)
def min_block_size(min_girth: int, seed: int = 0, retry_budget: int = 64) -> int:
    """Even block order V0 used for blocks of the required girth.

    Table lookup up to girth 8; beyond that, doubling search from the Moore
    bound using :func:`random_cubic_with_girth`.
    """
    if min_girth < 1:
        raise DomainError(f"min_girth must be >= 1, got {min_girth!r}")
    if min_girth > MAX_SUPPORTED_GIRTH:
        raise UnsupportedError(f"girth {min_girth} exceeds the supported maximum {MAX_SUPPORTED_GIRTH}")
    if min_girth <= 2:
        return 2
    if min_girth in CAGE_ORDERS:
        return CAGE_ORDERS[min_girth]
    n = moore_bound(min_girth)
    n += n % 2
    while True:
        try:
            random_cubic_with_girth(n, min_girth, seed, retry_budget, bridgeless=True)
            return n
        except GenerationFailure:
            n *= 2


@dataclass(frozen=True)
class ChainPlan:
    genus: int
    block_size: int
    block_count_full: int
    last_block_size: int
    required_girth: int = 1

    def __post_init__(self):
        v0, g0, v1 = self.block_size, self.block_count_full, self.last_block_size
        if 2 * self.genus - 2 != g0 * (v0 + 2) + v1:
            raise DomainError("chain plan violates 2g-2 = g0 (V0+2) + V1")
        if g0 > 0 and not v0 <= v1 <= 2 * v0 + 2:
            raise DomainError("chain plan violates V0 <= V1 <= 2 V0 + 2")

    @property
    def vertex_count(self) -> int:
        return 2 * self.genus - 2


def chain_plan(genus: int, block_size: int, required_girth: int = 1) -> ChainPlan:
    """Split 2g-2 pants into g0 blocks of V0 (+2 attachment vertices) and one of V1.

    When two splits exist (V1 = V0 or V1 = 2V0 + 2) the one with more blocks is used.
    """
    v0 = int(block_size)
    if v0 < 2 or v0 % 2:
        raise DomainError(f"block_size must be even and >= 2, got {block_size!r}")
    total = 2 * int(genus) - 2
    min_genus = v0 + 2  # g0 = 1, V1 = V0
    if genus < min_genus:
        raise DomainError(f"genus {genus} too small for block size {v0}; minimum supported genus is {min_genus}")
    g0 = (total - v0) // (v0 + 2)
    v1 = total - g0 * (v0 + 2)
    return ChainPlan(int(genus), v0, g0, v1, int(required_girth))


def _attachment_edges(block: MultiGraph, count: int) -> list[int]:
    cut = bridges(block)
    order = sorted(range(block.edge_count), key=lambda i: (block.edges[i], i))
    usable = [i for i in order if i not in cut and block.edges[i][0] != block.edges[i][1]]
    if len(usable) < count:
        raise DomainError("block has too few non-bridge, non-loop edges to attach")
    return usable[:count]


def build_chain(plan: ChainPlan, blocks: Sequence[CubicGraph]) -> CubicGraph:
    """Join the blocks left to right by bridges through subdivision vertices.

    Each attachment subdivides a fresh non-bridge, non-loop edge (first in
    sorted order) of its block with a new vertex; consecutive blocks are joined
    by an edge between their new vertices. Interior blocks gain two vertices,
    end blocks one.
    """
    g0 = plan.block_count_full
    if len(blocks) != g0 + 1:
        raise DomainError(f"plan expects {g0 + 1} blocks, got {len(blocks)}")
    for idx, b in enumerate(blocks):
        want = plan.last_block_size if idx == g0 else plan.block_size
        if b.vertex_count != want:
            raise DomainError(f"block {idx} has {b.vertex_count} vertices, plan expects {want}")
        if not b.is_cubic() or not b.is_connected():
            raise DomainError(f"block {idx} is not a connected cubic graph")
        if girth(b, limit=plan.required_girth) < plan.required_girth:
            raise DomainError(f"block {idx} has girth below {plan.required_girth}")
        if bridges(b):
            raise DomainError(f"block {idx} has a bridge")
    if g0 == 0:
        return CubicGraph.from_multigraph(blocks[0])

    edges: list[tuple[int, int]] = []
    offset = 0
    left_port = None
    for idx, b in enumerate(blocks):
        sides = (["left"] if idx > 0 else []) + (["right"] if idx < g0 else [])
        chosen = _attachment_edges(b, len(sides))
        ports = {}
        new_vertex = offset + b.vertex_count
        for side, ei in zip(sides, chosen):
            ports[side] = new_vertex
            new_vertex += 1
        split = dict(zip(chosen, (ports[s] for s in sides)))
        for i, (u, v) in enumerate(b.edges):
            if i in split:
                x = split[i]
                edges.append((offset + u, x))
                edges.append((offset + v, x))
            else:
                edges.append((offset + u, offset + v))
        if idx > 0:
            edges.append((left_port, ports["left"]))
        left_port = ports.get("right")
        offset = new_vertex
    graph = CubicGraph(offset, edges)
    assert graph.vertex_count == plan.vertex_count
    return graph


def build_small_eps_chain(genus: int) -> CubicGraph:
    """Path of 2g-2 vertices: loops at both ends, double edges inside pairs, single bridges between.

    v0 -- v1 == v2 -- v3 == v4 -- ... -- v_{2g-3}, with a loop at v0 and at v_{2g-3}.
    """
    if int(genus) != genus or genus < 2:
        raise DomainError(f"genus must be an integer >= 2, got {genus!r}")
    n = 2 * int(genus) - 2
    edges = [(0, 0), (n - 1, n - 1)]
    for i in range(n - 1):
        edges.append((i, i + 1))
        if i % 2 == 1:
            edges.append((i, i + 1))
    return CubicGraph(n, edges)


def graph_bridge_forest_is_path(graph: MultiGraph) -> bool:
    cut = bridges(graph)
    comp = bridge_components(graph, cut)
    deg = {}
    for i in cut:
        u, v = graph.edges[i]
        for c in (comp[u], comp[v]):
            deg[c] = deg.get(c, 0) + 1
    return all(d <= 2 for d in deg.values())


def bridge_components(graph: MultiGraph, cut=None) -> list[int]:
    """Component label per vertex after deleting the bridges (labels in order of least vertex)."""
    if cut is None:
        cut = bridges(graph)
    inc = graph.incidence()
    label = [-1] * graph.vertex_count
    current = 0
    for s in range(graph.vertex_count):
        if label[s] >= 0:
            continue
        label[s] = current
        stack = [s]
        while stack:
            x = stack.pop()
            for y, i in inc[x]:
                if i not in cut and label[y] < 0:
                    label[y] = current
                    stack.append(y)
        current += 1
    return label
