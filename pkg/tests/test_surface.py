import math

import numpy as np
import pytest

from chainsurf import graphs as gr
from chainsurf import hypgeom as hg
from chainsurf import rayleigh
from chainsurf.certify import certify_systole
from chainsurf.errors import DomainError, StructureError
from chainsurf.surface import assemble, block_chain, separating_count
from oracles import naive_bridges


def k4_chain_graph(genus):
    plan = gr.chain_plan(genus, 4, 3)
    blocks = [gr.block_graph(4, 3)] * plan.block_count_full + [gr.block_graph(plan.last_block_size, 3, 1)]
    return plan, gr.build_chain(plan, blocks)


@pytest.fixture(scope="module")
def chain101():
    plan, graph = k4_chain_graph(101)
    return plan, assemble(graph, 1.0)


def test_genus_two_area():
    s = assemble(gr.build_small_eps_chain(2), 1.0)
    assert s.genus == 2
    assert s.area == pytest.approx(4 * math.pi)


def test_chain_counts(chain101):
    _, s = chain101
    assert s.genus == 101
    assert s.graph.edge_count == 300


@pytest.mark.parametrize("eps", [0.1, 1.0, 3.0])
def test_gauss_bonnet(eps):
    _, graph = k4_chain_graph(57)
    s = assemble(graph, eps)
    chain = block_chain(s)
    total = sum(chain.core_areas) + sum(hg.collar_area(x) for x in chain.cuff_lengths)
    assert total == pytest.approx(4 * math.pi * (s.genus - 1), rel=1e-10)
    assert sum(c.area for c in chain.components) == pytest.approx(4 * math.pi * (s.genus - 1), rel=1e-12)


def test_interior_core_areas(chain101):
    plan, s = chain101
    chain = block_chain(s)
    assert chain.block_count == plan.block_count_full + 1 == 33
    interior = chain.core_areas[1:-1]
    expected = 12 * math.pi - 2 / math.sinh(0.5)
    assert expected == pytest.approx(33.861042340407631423, rel=1e-15)
    for a in interior:
        assert a == pytest.approx(expected, rel=1e-14)
    for c in chain.components[1:-1]:
        assert len(c.vertices) == 6
        assert c.area == pytest.approx(12 * math.pi)


def test_separating_count(chain101):
    _, s = chain101
    assert separating_count(s) == 32
    assert separating_count(s) == len(naive_bridges(200, list(s.graph.edges)))


def test_separating_bounds(chain101):
    plan, s = chain101
    assert plan.block_count_full <= separating_count(s) <= 3 * s.genus - 3


def test_cycle_shaped_graph_has_no_separating_cuff():
    s = assemble(gr.known_cage(6), 1.0)
    assert separating_count(s) == 0
    assert block_chain(s).block_count == 1


def test_separating_density_tends_to_one_third():
    ratios = []
    for g in (100, 400, 1600, 6400):
        plan = gr.chain_plan(g, 4)
        ratios.append(plan.block_count_full / g)
    errs = [abs(r - 1 / 3) for r in ratios]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-3
    _, graph = k4_chain_graph(400)
    assert separating_count(assemble(graph, 1.0)) / 400 == pytest.approx(1 / 3, abs=0.01)


K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_non_path_structure():
    # a centre K4 with three subdivided edges, each port bridged to a leaf K4: the bridge tree is a star
    edges = [e for e in K4 if e not in {(0, 1), (2, 3), (0, 2)}]
    edges += [(0, 4), (4, 1), (2, 5), (5, 3), (0, 6), (6, 2)]
    base = 7
    for port in (4, 5, 6):
        leaf = [(a + base, b + base) for a, b in K4 if (a, b) != (0, 1)]
        edges += leaf + [(base, base + 4), (base + 4, base + 1), (port, base + 4)]
        base += 5
    g = gr.MultiGraph(base, edges)
    assert g.is_cubic() and g.is_connected()
    with pytest.raises(StructureError):
        block_chain(assemble(g, 1.0))


def test_twists_do_not_change_anything(chain101):
    _, s = chain101
    twisted = assemble(s.graph, 1.0, twists=np.random.default_rng(0).uniform(-5, 5, 300))
    assert certify_systole(s) == certify_systole(twisted)
    a, b = block_chain(s), block_chain(twisted)
    assert a == b
    fa = rayleigh.build_test_functions(a, 3)
    fb = rayleigh.build_test_functions(b, 3)
    assert np.array_equal(rayleigh.family_energy(fa, 1.0), rayleigh.family_energy(fb, 1.0))
    assert np.array_equal(rayleigh.family_mass(fa, a), rayleigh.family_mass(fb, b))
    ea = rayleigh.generalized_eigs(rayleigh.build_pants_model(s), 4)
    eb = rayleigh.generalized_eigs(rayleigh.build_pants_model(twisted), 4)
    assert np.array_equal(ea, eb)


def test_assemble_rejects_non_cubic():
    with pytest.raises(DomainError):
        assemble(gr.MultiGraph(3, [(0, 1), (1, 2)]), 1.0)


@pytest.mark.parametrize("eps", [0.0, -1.0, math.inf])
def test_assemble_rejects_bad_eps(eps):
    with pytest.raises(DomainError):
        assemble(gr.theta_graph(), eps)
