from fractions import Fraction
from unittest import mock

import pytest
from hypothesis import given
from hypothesis import strategies as st

import brute
from cases import cases, random_case
from nwsparse import (Instance, Property, WeightedGraph, solve_branching_ell, solve_center_enumeration,
                      solve_deletion_side, solve_subset_enumeration, verify_solution)
from nwsparse.oracle import NotUnweighted, RelevantEdgeLimit

K3 = WeightedGraph.complete(3)
ALL3 = (frozenset({0, 1, 2}),)
C4 = WeightedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_triangle_connectivity_optimum():
    inst = Instance(K3, ALL3, Property.CONNECTIVITY, 2, Fraction(2))
    res = solve_subset_enumeration(inst, "optimize")
    assert res.answer and res.optimum == (2, 2)


def test_triangle_stars_needs_two_edges():
    assert not solve_subset_enumeration(Instance(K3, ALL3, Property.STARS, 1))


def test_four_cycle_examples():
    # {0,2} induces no edge of the 4-cycle, so it can never be connected.
    inst = Instance(C4, tuple(map(frozenset, [{0, 1, 2}, {1, 2, 3}, {0, 2}])), Property.CONNECTIVITY, 3)
    assert not solve_subset_enumeration(inst)
    assert brute.optimum(inst) is None
    inst = Instance(C4, tuple(map(frozenset, [{0, 1, 2}, {1, 2, 3}])), Property.CONNECTIVITY, 3)
    res = solve_subset_enumeration(inst, "optimize")
    assert res.optimum == (3, 3)
    assert res.solution.sorted_pairs(inst) == [(0, 1), (1, 2), (2, 3)]


def test_figure_instance_optima():
    g = WeightedGraph.from_edges(5, [(2, 1), (0, 1), (0, 2), (2, 3), (4, 3), (2, 4), (1, 3), (1, 4)])
    comms = tuple(map(frozenset, [{4, 2, 3}, {4, 1, 3}, {0, 1, 2, 3, 4}]))
    stars = Instance(g, comms, Property.STARS, 8)
    conn = Instance(g, comms, Property.CONNECTIVITY, 8)
    assert solve_subset_enumeration(stars, "optimize").optimum == (6, 6)
    assert solve_subset_enumeration(conn, "optimize").optimum == (4, 4)
    drawn = [(1, 2), (0, 1), (2, 3), (2, 4), (1, 3), (1, 4)]
    assert verify_solution(stars.with_budgets(ell=6), [g.edge_id(*e) for e in drawn]).valid
    # Reading the large community without the bottom vertex allows five edges.
    literal = Instance(g, comms[:2] + (frozenset({0, 1, 2, 4}),), Property.STARS, 8)
    assert solve_subset_enumeration(literal, "optimize").optimum == (5, 5)


def test_deletion_examples():
    k4 = Instance(WeightedGraph.complete(4), (frozenset(range(4)),), Property.CONNECTIVITY, 4)
    assert solve_deletion_side(k4, k=2)
    assert not solve_deletion_side(Instance(K3, ALL3, Property.STARS, 1), k=2)
    whole = Instance(C4, (frozenset({0, 1, 2}),), Property.STARS, 4)
    assert solve_deletion_side(whole, k=0)
    assert not solve_deletion_side(Instance(C4, (frozenset({0, 2}),), Property.STARS, 4), k=0)


def test_deletion_rejects_weights():
    g = WeightedGraph.from_edges(2, [(0, 1, 2)])
    with pytest.raises(NotUnweighted):
        solve_deletion_side(Instance(g, (frozenset({0, 1}),), Property.STARS, 1))


def test_branching_examples():
    assert solve_branching_ell(Instance(K3, ALL3, Property.STARS, 2))
    big = Instance(WeightedGraph.complete(5), (frozenset(range(4)),), Property.CONNECTIVITY, 2)
    with mock.patch("nwsparse.oracle.MaskModel", side_effect=AssertionError("searched")):
        assert not solve_branching_ell(big)


def test_relevant_edge_cap():
    k8 = Instance(WeightedGraph.complete(8), (frozenset(range(8)),), Property.CONNECTIVITY, 7)
    with pytest.raises(RelevantEdgeLimit):
        solve_subset_enumeration(k8)


def test_irrelevant_edges_ignored():
    g = WeightedGraph.from_edges(4, [(0, 1), (2, 3)])
    inst = Instance(g, (frozenset({0, 1}),), Property.CONNECTIVITY, 1)
    assert inst.relevant_edges == (0,)
    assert solve_subset_enumeration(inst).solution.edge_set == {0}


@pytest.mark.parametrize("seed", range(40))
def test_subset_enumeration_matches_brute_force(seed):
    inst = cases(1, start=seed * 37, n=(3, 6), max_relevant=10)[0]
    res = solve_subset_enumeration(inst, "optimize")
    expect = brute.optimum(inst)
    if expect is None:
        assert not res
    else:
        assert (res.solution.weight(inst), len(res.solution.edge_set)) == expect
        assert brute.satisfies(inst, res.solution.edge_set)


def test_oracles_agree():
    for inst in cases(150, start=1000, max_relevant=16):
        want = solve_subset_enumeration(inst).answer
        assert solve_branching_ell(inst).answer == want
        if inst.graph.unit_weights:
            assert solve_deletion_side(inst).answer == want
        if inst.property is Property.STARS:
            assert solve_center_enumeration(inst).answer == want
            opt = solve_subset_enumeration(inst, "optimize")
            if opt:
                assert solve_center_enumeration(inst, "optimize").optimum[1] == opt.optimum[1]


def test_yes_answers_verify():
    for inst in cases(60, start=3000):
        for res in (solve_subset_enumeration(inst), solve_branching_ell(inst)):
            if res:
                assert verify_solution(inst, res.solution.edge_set).valid


def test_chunking_does_not_change_optimum():
    for inst in cases(20, start=5000):
        a = solve_subset_enumeration(inst, "optimize")
        b = solve_subset_enumeration(inst, "optimize", chunk_bits=3)
        assert a == b


@given(st.integers(0, 10_000), st.data())
def test_adding_an_edge_keeps_solutions_valid(seed, data):
    inst = random_case(seed, tight=False, max_relevant=14)
    if inst is None:
        return
    res = solve_subset_enumeration(inst, "optimize")
    if not res:
        return
    extra = data.draw(st.sampled_from(range(inst.graph.m))) if inst.graph.m else None
    loose = inst.with_budgets(ell=inst.graph.m, budget=None)
    if extra is not None:
        assert verify_solution(loose, res.solution.edge_set | {extra}).valid


def test_optimum_beats_every_solution():
    for inst in cases(25, start=7000, max_relevant=9):
        res = solve_subset_enumeration(inst, "optimize")
        for es, w in brute.solutions(inst):
            assert res.solution.weight(inst) <= w
