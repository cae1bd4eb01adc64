"""Connectivity NWS when ell = n' - x: the solution must be a forest.

Each edge gets an auxiliary weight (number of communities containing it plus a
fraction that shrinks as the real weight grows); a maximum spanning tree per
hypergraph component under that weight is the only candidate worth checking.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (NO, Inapplicable, Instance, NWSError, OracleResult, Property, feedback_edge_parameter,
                   hypergraph_components, is_community_connected, yes)


class ComponentDisconnected(NWSError):
    pass


class WrongParameterRegime(Inapplicable):
    pass


@dataclass(frozen=True)
class AuxWeight:
    community_count: int
    q: Fraction

    @property
    def total(self) -> Fraction:
        return self.community_count + self.q


def aux_weights(instance: Instance) -> list[AuxWeight]:
    g = instance.graph
    if not g.edges:
        return []
    x = max(w for _, _, w in g.edges) + 1
    out = []
    for u, v, w in g.edges:
        z = sum(1 for c in instance.communities if u in c and v in c)
        out.append(AuxWeight(z, (x - w) / x))
    return out


def max_weight_spanning_tree(n: int, edges: Iterable[tuple[int, int, int]], aux: list[AuxWeight],
                             vertices: Iterable[int]) -> list[int]:
    """Kruskal on the given (u, v, edge_id) triples spanning `vertices`.

    Ties on the auxiliary weight go to the lexicographically smaller (u, v).
    """
    vertices = sorted(set(vertices))
    parent = {v: v for v in vertices}
    size = {v: 1 for v in vertices}

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    order = sorted(edges, key=lambda e: (-aux[e[2]].total, e[0], e[1]))
    tree = []
    for u, v, i in order:
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        tree.append(i)
        if len(tree) == len(vertices) - 1:
            break
    if len(tree) != len(vertices) - 1:
        raise ComponentDisconnected(f"component {vertices} is disconnected in G")
    return sorted(tree)


def solve_tree_support(instance: Instance, component: Iterable[int],
                       aux: list[AuxWeight] | None = None) -> tuple[list[int], Fraction] | None:
    """Minimum-weight tree solution on one hypergraph component, or None."""
    comp = frozenset(component)
    aux = aux_weights(instance) if aux is None else aux
    g = instance.graph
    inside = [(u, v, i) for i, (u, v, _) in enumerate(g.edges) if u in comp and v in comp]
    try:
        tree = max_weight_spanning_tree(g.n, inside, aux, comp)
    except ComponentDisconnected:
        return None
    pairs = [g.edges[i][:2] for i in tree]
    for c in instance.communities:
        if c <= comp and not is_community_connected(pairs, c):
            return None
    return tree, g.weight_of(tree)


def solve_forest_support(instance: Instance) -> OracleResult:
    if instance.property is not Property.CONNECTIVITY:
        raise WrongParameterRegime("tree support needs a Connectivity instance")
    t = feedback_edge_parameter(instance)
    if t != 0:
        raise WrongParameterRegime(f"tree support needs t = 0, got t = {t}")
    comps, _ = hypergraph_components(instance)
    aux = aux_weights(instance)
    edges: list[int] = []
    for comp in comps:
        res = solve_tree_support(instance, comp, aux)
        if res is None:
            return NO
        edges.extend(res[0])
    result = yes(instance, edges, optimize=True)
    if instance.budget is not None and result.optimum[1] > instance.budget:
        return NO
    return result
