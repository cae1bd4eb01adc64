"""XP algorithm for weighted Stars NWS parameterized by t.

Guess the set E* of local edges (edges on cycles formed by two overlapping
stars), shrink the candidate center sets fit(C) with five pruning rules, then
pick one cheapest center per partition group.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Literal

from .core import (NO, Deadline, Instance, OracleResult, Property, Solution, check_deadline,
                   feedback_edge_parameter, graph_pairs, log, make_solution, solution_key,
                   universal_vertices)
from .tree_support import WrongParameterRegime


def _local_adjacency(instance: Instance, local: Iterable[int]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for i in local:
        u, v, _ = instance.graph.edges[i]
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def is_locally_universal(v: int, A: Iterable[int], local_pairs: Iterable[tuple[int, int]]) -> bool:
    nbrs = {b if a == v else a for a, b in local_pairs if v in (a, b)}
    return all(w in nbrs for w in A if w != v)


def _lu(v: int, A: Iterable[int], ladj: dict[int, set[int]]) -> bool:
    nbrs = ladj.get(v, ())
    return all(w in nbrs for w in A if w != v)


@dataclass
class FitState:
    instance: Instance
    local: frozenset[int]
    ladj: dict[int, set[int]]
    fit: list[set[int]]
    groups: list[tuple[int, ...]]
    group_of: list[int]
    local_inside: list[list[tuple[int, int]]] = field(default_factory=list)

    def has_local_edge(self, i: int) -> bool:
        return bool(self.local_inside[i])

    def same_group(self, i: int, j: int) -> bool:
        return self.group_of[i] == self.group_of[j]

    @property
    def empty(self) -> bool:
        return any(not f for f in self.fit)


def compute_partition(instance: Instance, local: Iterable[int]) -> list[tuple[int, ...]]:
    """Components of the graph on communities where C ~ D iff |C & D| >= 3 and
    no vertex of C | D is locally universal for C & D."""
    ladj = _local_adjacency(instance, local)
    comms = instance.communities
    parent = list(range(len(comms)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in itertools.combinations(range(len(comms)), 2):
        inter = comms[i] & comms[j]
        if len(inter) < 3:
            continue
        if any(_lu(v, inter, ladj) for v in comms[i] | comms[j]):
            continue
        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(comms)):
        groups.setdefault(find(i), []).append(i)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def init_fit(instance: Instance, local: Iterable[int] = ()) -> FitState | None:
    """fit(C) = univ_G(C) for every community; None if some set is empty."""
    local = frozenset(local)
    pairs = graph_pairs(instance.graph)
    fit = [universal_vertices(pairs, c) for c in instance.communities]
    if any(not f for f in fit):
        return None
    groups = compute_partition(instance, local)
    group_of = [0] * instance.c
    for gi, grp in enumerate(groups):
        for i in grp:
            group_of[i] = gi
    inside = []
    for c in instance.communities:
        inside.append([instance.graph.edges[e][:2] for e in sorted(local)
                       if instance.graph.edges[e][0] in c and instance.graph.edges[e][1] in c])
    return FitState(instance, local, _local_adjacency(instance, local), fit, groups, group_of, inside)


def _restrict(state: FitState, i: int, keep: set[int]) -> bool:
    new = state.fit[i] & keep
    if new != state.fit[i]:
        state.fit[i] = new
        return True
    return False


def apply_operation_1(state: FitState, i: int, edge: tuple[int, int]) -> bool:
    """Keep only centers locally universal for the local edge {y, z} inside C."""
    y, z = edge
    keep = {v for v in state.fit[i] if _lu(v, (y, z), state.ladj)}
    return _restrict(state, i, keep)


def apply_operation_2(state: FitState, i: int) -> bool:
    shared = set.intersection(*(state.fit[j] for j in state.groups[state.group_of[i]]))
    return _restrict(state, i, shared)


def apply_operation_3(state: FitState, i: int, j: int) -> bool:
    """C without local edges must be centered inside C & D when |C & D| >= 2."""
    comms = state.instance.communities
    if state.has_local_edge(i) or i == j:
        return False
    inter = comms[i] & comms[j]
    if len(inter) < 2:
        return False
    return _restrict(state, i, set(inter))


def apply_operation_4(state: FitState, i: int, j: int) -> bool:
    comms = state.instance.communities
    if i == j or not state.has_local_edge(i) or state.same_group(i, j):
        return False
    inter = comms[i] & comms[j]
    if len(inter) != 2:
        return False
    x, y = sorted(inter)
    if y in state.ladj.get(x, ()):
        return False
    hit = state.fit[i] & inter
    if not hit:
        return _restrict(state, j, state.fit[j] - inter)
    if len(hit) == 1:
        return _restrict(state, i, hit)
    return False


def apply_operation_5(state: FitState, i: int, j: int) -> bool:
    comms = state.instance.communities
    if i == j or not state.has_local_edge(i) or state.same_group(i, j):
        return False
    inter = comms[i] & comms[j]
    if len(inter) < 3:
        return False
    drop = set()
    for x, y in itertools.combinations(sorted(inter), 2):
        if y not in state.ladj.get(x, ()):
            drop.update((x, y))
    return _restrict(state, j, state.fit[j] - drop)


def run_operations(state: FitState) -> FitState:
    """Shrink fit sets until no operation changes anything."""
    c = state.instance.c
    pairs = [(i, j) for i in range(c) for j in range(c) if i != j]
    while True:
        changed = False
        while True:
            step = False
            for i in range(c):
                for edge in state.local_inside[i]:
                    step |= apply_operation_1(state, i, edge)
            changed |= step
            if not step:
                break
        for i in range(c):
            changed |= apply_operation_2(state, i)
        for op in (apply_operation_3, apply_operation_4, apply_operation_5):
            for i, j in pairs:
                changed |= op(state, i, j)
        if state.empty or not changed:
            return state


def fitting_solve(instance: Instance, local: Iterable[int]) -> Solution | None:
    """Cheapest solution containing E* built from one center per group, or None."""
    state = init_fit(instance, local)
    if state is None:
        return None
    run_operations(state)
    if state.empty:
        return None
    g = instance.graph
    chosen = set(state.local)
    for grp in state.groups:
        span = frozenset().union(*(instance.communities[i] for i in grp))
        shared = set.intersection(*(state.fit[i] for i in grp))
        if not shared:
            return None
        best = None
        for u in sorted(shared):
            star = {g.edge_id(u, v) for v in span if v != u}
            cost = g.weight_of(star - state.local)
            if best is None or cost < best[0]:
                best = (cost, star)
        chosen |= best[1]
    if len(chosen) > instance.ell:
        return None
    if instance.budget is not None and g.weight_of(chosen) > instance.budget:
        return None
    return make_solution(instance, chosen)


def enumerate_local_sets(instance: Instance, t: int) -> Iterator[frozenset[int]]:
    """All subsets of community-internal edges of size <= 4t, by size then lex."""
    cand = instance.relevant_edges
    for k in range(0, min(4 * t, len(cand)) + 1):
        for combo in itertools.combinations(cand, k):
            yield frozenset(combo)


def candidate_local_cycles(instance: Instance) -> list[frozenset[int]]:
    """Every 3- or 4-cycle in a union of two G-stars of overlapping communities."""
    g = instance.graph
    pairs = graph_pairs(g)
    comms = instance.communities
    univ = [sorted(universal_vertices(pairs, c)) for c in comms]
    found: set[frozenset[int]] = set()
    for i, j in itertools.combinations(range(len(comms)), 2):
        inter = comms[i] & comms[j]
        if len(inter) < 2:
            continue
        for c1 in univ[i]:
            for c2 in univ[j]:
                if c1 == c2:
                    continue
                common = sorted(inter - {c1, c2})
                if c2 in comms[i] or c1 in comms[j]:
                    for w in common:
                        found.add(frozenset((g.edge_id(c1, c2), g.edge_id(c1, w), g.edge_id(c2, w))))
                for w, x in itertools.combinations(common, 2):
                    found.add(frozenset((g.edge_id(c1, w), g.edge_id(w, c2),
                                         g.edge_id(c2, x), g.edge_id(x, c1))))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def cycle_unions(instance: Instance, t: int) -> list[frozenset[int]]:
    """Unions of at most t candidate local cycles with at most 4t edges."""
    cycles = candidate_local_cycles(instance)
    seen = {frozenset()}
    frontier = {frozenset()}
    for _ in range(t):
        nxt = set()
        for base in frontier:
            for cyc in cycles:
                u = base | cyc
                if u != base and len(u) <= 4 * t and u not in seen:
                    seen.add(u)
                    nxt.add(u)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def _batch(instance: Instance, sets: list[frozenset[int]]) -> list[Solution | None]:
    return [fitting_solve(instance, s) for s in sets]


def solve_stars_xp(instance: Instance, mode: Literal["decide", "optimize"] = "decide",
                   t_override: int | None = None, strategy: str = "cycles", jobs: int = 1,
                   deadline: Deadline | None = None) -> OracleResult:
    if instance.property is not Property.STARS:
        raise WrongParameterRegime("stars-xp needs a Stars instance")
    t = feedback_edge_parameter(instance) if t_override is None else t_override
    if t < 0:
        return NO
    if strategy == "cycles":
        sets: Iterable[frozenset[int]] = cycle_unions(instance, t)
    elif strategy == "subsets":
        sets = enumerate_local_sets(instance, t)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    best = None
    tried = 0
    if jobs > 1:
        sets = list(sets)
        size = max(1, len(sets) // (4 * jobs))
        chunks = [sets[k:k + size] for k in range(0, len(sets), size)]
        with ProcessPoolExecutor(jobs) as pool:
            outcomes = (sol for batch in pool.map(_batch, itertools.repeat(instance), chunks) for sol in batch)
            best, tried = _reduce(instance, outcomes, mode, deadline)
    else:
        best, tried = _reduce(instance, (fitting_solve(instance, s) for s in sets), mode, deadline)
    log.debug("stars-xp t=%d tried %d local sets", t, tried)
    if best is None:
        return NO
    sol = best[1]
    opt = (len(sol.edge_set), best[0][0]) if mode == "optimize" else None
    return OracleResult(sol, opt)


def _reduce(instance, outcomes, mode, deadline):
    best = None
    tried = 0
    for sol in outcomes:
        tried += 1
        check_deadline(deadline)
        if sol is None:
            continue
        key = solution_key(instance, sol)
        if best is None or key < best[0]:
            best = (key, sol)
        if mode == "decide":
            break
    return best, tried


def induces_local_cycle(C1: Iterable[int], C2: Iterable[int], c1: int, c2: int) -> bool:
    """Whether the stars of C1 (center c1) and C2 (center c2) together hold a cycle."""
    edges = {frozenset((c1, v)) for v in C1 if v != c1} | {frozenset((c2, v)) for v in C2 if v != c2}
    verts = set(C1) | set(C2)
    parent = {v: v for v in verts}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in edges:
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
    return False


def local_cycle_edges(instance: Instance, edge_set: Iterable[int]) -> frozenset[int]:
    """Union of the local cycles of a Stars solution (over all center choices)."""
    g = instance.graph
    edge_set = frozenset(edge_set)
    pairs = [g.edges[i][:2] for i in edge_set]
    comms = instance.communities
    univ = [sorted(universal_vertices(pairs, c)) for c in comms]
    out: set[int] = set()
    for i, j in itertools.combinations(range(len(comms)), 2):
        inter = comms[i] & comms[j]
        if len(inter) < 2:
            continue
        for c1 in univ[i]:
            for c2 in univ[j]:
                if c1 == c2:
                    continue
                common = inter - {c1, c2}
                if (c2 in comms[i] or c1 in comms[j]) and common:
                    out.add(g.edge_id(c1, c2))
                if (c2 in comms[i] or c1 in comms[j]) or len(common) >= 2:
                    out.update(g.edge_id(c1, w) for w in common)
                    out.update(g.edge_id(c2, w) for w in common)
    return frozenset(out)
