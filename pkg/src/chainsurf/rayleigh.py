"""Test functions, Rayleigh-quotient upper bounds and discrete collar-network models.

Upper bounds here rest on one observation: a function that is constant on
each block core and follows the harmonic profile across each collar has
Dirichlet energy sum_c conductance_c * jump_c^2, and its L2 mass is at least
the sum of core_area * value^2 (collar mass is dropped, which can only raise
the quotient). Every vector of a :class:`DiscreteModel` therefore lifts to a
function on the surface with no smaller Rayleigh quotient, and min-max makes
the model's lambda_k an upper bound for the surface's lambda_k.

The test functions phi_0..phi_k have pairwise disjoint supports (and no
energy cross terms), so any combination has quotient at most the largest
individual quotient. That replaces orthogonalizing against the unknown
eigenfunctions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import hypgeom
from .eigen import jacobi_eigs, tridiagonal_eigs
from .errors import BoundUndefinedError, DegenerateFamilyError, DomainError, NumericalError
from .graphs import MultiGraph, chain_plan
from .surface import BlockChain, FNSurface

JACOBI_MAX_NODES = 64


@dataclass(frozen=True)
class TestFunctionFamily:
    """Piles of consecutive interior blocks carrying tent-shaped integer values.

    ``piles[i]`` lists the block indices of pile i, ``values[i]`` the matching
    values. Blocks outside every pile (both end blocks and the ``remainder``
    rightmost interior blocks) carry 0 for every function. Each transition is
    ``(pile, collar, a, b)`` where collar c separates blocks c-1 and c
    (1-based, as gamma_c) and a, b are the values on its left and right.
    """

    __test__ = False  # not a pytest class

    k: int
    g1: int
    remainder: int
    block_count: int
    piles: tuple
    values: tuple
    collar_transitions: tuple

    def block_values(self, i: int) -> np.ndarray:
        out = np.zeros(self.block_count)
        out[list(self.piles[i])] = self.values[i]
        return out

    def support(self, i: int) -> set:
        """Blocks and collars on which phi_i is not identically zero."""
        vals = self.block_values(i)
        supp = {("block", j) for j in np.nonzero(vals)[0].tolist()}
        for c in range(1, self.block_count):
            if vals[c - 1] != 0 or vals[c] != 0:
                supp.add(("collar", c))
        return supp


def build_test_functions(chain: BlockChain, k: int) -> TestFunctionFamily:
    g0 = len(chain.separating_cuffs)
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if g0 - 1 < k + 1:
        raise DomainError(f"chain has {g0 - 1} interior blocks; need at least k+1 = {k + 1}")
    g1, r = divmod(g0 - 1, k + 1)
    piles, values = [], []
    for i in range(k + 1):
        blocks = tuple(i * g1 + j for j in range(1, g1 + 1))
        vals = tuple(min(j - 1, g1 - j) for j in range(1, g1 + 1))
        piles.append(blocks)
        values.append(vals)
    nblocks = g0 + 1
    transitions = []
    for i in range(k + 1):
        full = np.zeros(nblocks, dtype=int)
        full[list(piles[i])] = values[i]
        for c in range(1, nblocks):
            a, b = int(full[c - 1]), int(full[c])
            if a != b:
                transitions.append((i, c, a, b))
    return TestFunctionFamily(k, g1, r, nblocks, tuple(piles), tuple(values), tuple(transitions))


def family_mass(family: TestFunctionFamily, chain: BlockChain) -> np.ndarray:
    """Per pile: sum over blocks of value^2 * core area (collar mass left out)."""
    cores = np.asarray(chain.core_areas)
    return np.array([float(np.sum(family.block_values(i) ** 2 * cores)) for i in range(family.k + 1)])


def family_energy(family: TestFunctionFamily, epsilon: float) -> np.ndarray:
    """Per pile: exact Dirichlet energy with the harmonic profile across every jumping collar."""
    w = hypgeom.collar_half_width(epsilon)
    out = np.zeros(family.k + 1)
    for i, _, a, b in family.collar_transitions:
        out[i] += hypgeom.collar_energy_min(hypgeom.CollarProfile(float(epsilon), w, float(a), float(b)))
    return out


def exact_family_bound(family: TestFunctionFamily, chain: BlockChain, epsilon: float) -> float:
    mass = family_mass(family, chain)
    if np.any(mass <= 0):
        raise DegenerateFamilyError(f"pile with zero mass (g1 = {family.g1}); family spans fewer than k+1 functions")
    return float(np.max(family_energy(family, epsilon) / mass))


def core_area(epsilon: float, V0: int) -> float:
    """Area of an interior block core: 2 pi (V0+2) - 2 eps / sinh(eps/2)."""
    return 2.0 * math.pi * (V0 + 2) - hypgeom.collar_area(epsilon)


def energy_upper_bound(epsilon: float, g1: int) -> float:
    """g1 * eps / (4 arctan(tanh(w/2)))."""
    return g1 * hypgeom.collar_conductance(epsilon)


def mass_lower_bound(epsilon: float, V0: int, g1: int) -> float:
    """core_area * (g1-2)^3 / 24."""
    return core_area(epsilon, V0) * (g1 - 2) ** 3 / 24.0


def pile_length(genus: int, k: int, V0: int) -> int:
    """g1 from the pipeline's integer arithmetic: g0 - 1 = g1 (k+1) + r."""
    plan = chain_plan(genus, V0)
    return (plan.block_count_full - 1) // (k + 1)


def closed_form_bound(genus: int, k: int, epsilon: float, V0: int) -> float:
    """24 eps / (4 arctan(tanh(w/2)) * core_area) * g1 / (g1-2)^3."""
    g1 = pile_length(genus, k, V0)
    if g1 < 3:
        raise BoundUndefinedError(f"closed-form bound needs g1 >= 3, got g1 = {g1}")
    coef = 24.0 * hypgeom.collar_conductance(epsilon) / core_area(epsilon, V0)
    return coef * g1 / (g1 - 2) ** 3


def beta(epsilon: float, V0: int) -> float:
    """1e10 eps V0^2 / (arctan(tanh(w/2)) (pi (V0+2) - eps/sinh(eps/2))); overflows beyond eps of about 1350."""
    eps = hypgeom._check_length(epsilon, "epsilon")
    denom = hypgeom.collar_angle(eps) * (math.pi * (V0 + 2) - hypgeom.half_collar_area(eps))
    value = 1e10 * eps * V0**2 / denom if denom > 0.0 else math.inf
    if not math.isfinite(value):
        raise NumericalError(f"beta overflows float64 at epsilon {eps!r}")
    return value


@dataclass(frozen=True)
class DiscreteModel:
    """Weighted graph: node masses (areas) and edge conductances on ``topology``."""

    node_masses: np.ndarray
    edge_conductances: np.ndarray
    topology: MultiGraph

    def __post_init__(self):
        m = np.asarray(self.node_masses, dtype=float)
        c = np.asarray(self.edge_conductances, dtype=float)
        if m.shape != (self.topology.vertex_count,) or c.shape != (self.topology.edge_count,):
            raise DomainError("one mass per node and one conductance per edge required")
        if np.any(~(m > 0)) or np.any(~(c > 0)):
            raise DomainError("masses and conductances must be positive")
        if not self.topology.is_connected():
            raise DomainError("model topology must be connected")
        object.__setattr__(self, "node_masses", m)
        object.__setattr__(self, "edge_conductances", c)

    @property
    def size(self) -> int:
        return self.topology.vertex_count

    def laplacian(self) -> np.ndarray:
        n = self.size
        lap = np.zeros((n, n))
        for (u, v), c in zip(self.topology.edges, self.edge_conductances):
            if u == v:
                continue
            lap[u, u] += c
            lap[v, v] += c
            lap[u, v] -= c
            lap[v, u] -= c
        return lap

    def rayleigh_quotient(self, x) -> float:
        x = np.asarray(x, dtype=float)
        energy = sum(c * (x[u] - x[v]) ** 2 for (u, v), c in zip(self.topology.edges, self.edge_conductances))
        return float(energy / np.sum(self.node_masses * x * x))


def build_path_model(chain: BlockChain, epsilon: float | None = None) -> DiscreteModel:
    """One node per block core, one edge per separating collar."""
    n = chain.block_count
    lengths = chain.cuff_lengths if epsilon is None else (float(epsilon),) * (n - 1)
    cond = np.array([hypgeom.collar_conductance(ell) for ell in lengths])
    topo = MultiGraph(n, [(i, i + 1) for i in range(n - 1)])
    return DiscreteModel(np.asarray(chain.core_areas, dtype=float), cond, topo)


def build_pants_model(surface: FNSurface) -> DiscreteModel:
    """One node per pants (mass 2 pi minus three half-collars), one edge per cuff."""
    eps = surface.uniform_length
    if eps is None:
        raise DomainError("pants model needs uniform cuff lengths")
    mass = hypgeom.PANTS_AREA - 3.0 * hypgeom.half_collar_area(eps)
    n = surface.graph.vertex_count
    cond = np.full(surface.graph.edge_count, hypgeom.collar_conductance(eps))
    return DiscreteModel(np.full(n, mass), cond, surface.graph)


def _path_order(topology: MultiGraph):
    """Vertex order along the path if the topology is a simple path, else None."""
    n = topology.vertex_count
    if topology.edge_count != n - 1:
        return None
    inc = topology.incidence()
    if any(u == v for u, v in topology.edges) or any(len(x) > 2 for x in inc):
        return None
    if n == 1:
        return [0]
    start = next((v for v in range(n) if len(inc[v]) == 1), None)
    if start is None:
        return None
    order, prev_edge = [start], None
    while len(order) < n:
        step = [(y, i) for y, i in inc[order[-1]] if i != prev_edge]
        if not step:
            return None
        y, prev_edge = step[0]
        order.append(y)
    return order if len(set(order)) == n else None


def _edge_index_map(topology):
    return {(u, v): i for i, (u, v) in enumerate(topology.edges)}


def generalized_eigs(model: DiscreteModel, count: int, method: str = "auto") -> np.ndarray:
    """Smallest ``count`` eigenvalues of L x = lambda M x, ascending.

    Solved in the symmetric form M^-1/2 L M^-1/2. ``method`` is ``"sturm"``
    (path topologies only), ``"jacobi"``, ``"lapack"`` or ``"auto"`` (sturm on
    paths, jacobi up to 64 nodes, lapack beyond).
    """
    n = model.size
    if not 1 <= count <= n:
        raise DomainError(f"count must lie in [1, {n}], got {count}")
    order = _path_order(model.topology)
    if method == "auto":
        method = "sturm" if order is not None else ("jacobi" if n <= JACOBI_MAX_NODES else "lapack")
    root = 1.0 / np.sqrt(model.node_masses)
    if method == "sturm":
        if order is None:
            raise DomainError("sturm method needs a path topology")
        index = _edge_index_map(model.topology)
        m = model.node_masses[order]
        conds = []
        for a, b in zip(order, order[1:]):
            conds.append(model.edge_conductances[index[(min(a, b), max(a, b))]])
        conds = np.array(conds)
        deg = np.zeros(n)
        deg[:-1] += conds
        deg[1:] += conds
        diag = deg / m
        off = -conds / np.sqrt(m[:-1] * m[1:])
        return tridiagonal_eigs(diag, off, count)
    sym = model.laplacian() * root[:, None] * root[None, :]
    if method == "jacobi":
        return jacobi_eigs(sym)[:count]
    if method == "lapack":
        try:
            return scipy.linalg.eigh(sym, eigvals_only=True, subset_by_index=[0, count - 1])
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"LAPACK eigensolver failed: {exc}") from None
    raise DomainError(f"unknown eigensolver method {method!r}")
