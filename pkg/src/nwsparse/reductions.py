"""Instance generators: hardness gadgets and seeded random instances.

Each gadget generator maps a small source problem to an NWS instance that is a
yes-instance exactly when the source is.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (Instance, NWSError, Property, WeightedGraph, graph_pairs, universal_vertices)


class NotRegular(NWSError):
    pass


class GenerationFailed(NWSError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]  # DIMACS literals: +-(i+1)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for cl in self.clauses:
            if len(cl) != 3:
                raise ValueError(f"clause {cl} does not have three literals")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in cl):
                raise ValueError(f"clause {cl} mentions an unknown variable")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in cl) for cl in self.clauses)


def parse_dimacs_cnf(text: str) -> CnfFormula:
    num_vars = None
    lits: list[int] = []
    for line in text.splitlines():
        toks = line.split()
        if not toks or toks[0] == "c" or toks[0] == "%":
            continue
        if toks[0] == "p":
            num_vars = int(toks[2])
            continue
        lits.extend(int(t) for t in toks)
    if num_vars is None:
        raise ValueError("missing 'p cnf' header")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    return CnfFormula(num_vars, tuple(clauses))


def parse_dimacs_graph(text: str) -> WeightedGraph:
    """'p edge n m' followed by 'e u v' lines, 1-based."""
    n = None
    edges = []
    for line in text.splitlines():
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "p":
            n = int(toks[2])
        elif toks[0] == "e":
            edges.append((int(toks[1]) - 1, int(toks[2]) - 1))
    if n is None:
        raise ValueError("missing 'p edge' header")
    return WeightedGraph.from_edges(n, edges)


def _sat_gadget(formula: CnfFormula, fix_p_z: bool) -> Instance:
    if not formula.clauses and formula.num_vars == 0:
        raise ValueError("empty formula")
    nx = math.isqrt(formula.num_vars - 1) + 1 if formula.num_vars else 0
    nc = math.isqrt(len(formula.clauses) - 1) + 1 if formula.clauses else 0
    nxt = itertools.count()
    U = [next(nxt) for _ in range(nx)]
    P1 = [next(nxt) for _ in range(nx)]
    P2 = [next(nxt) for _ in range(nx)]
    Y = [next(nxt) for _ in range(nc)]
    Z = [[next(nxt) for _ in range(nc)] for _ in range(3)]
    n = next(nxt)
    P, Zall = P1 + P2, Z[0] + Z[1] + Z[2]
    graph = WeightedGraph.complete(n)

    comms: list[frozenset[int]] = []
    fixed = list(itertools.combinations(P, 2)) + list(itertools.combinations(Zall, 2))
    fixed += list(itertools.product(U, Zall)) + list(itertools.product(P, Y))
    if fix_p_z:
        fixed += list(itertools.product(P, Zall))
    comms.extend(frozenset(e) for e in fixed)

    theta = {}
    for i in range(formula.num_vars):
        j, s = divmod(i, nx)
        comms.append(frozenset((U[j], P1[s], P2[s])))
        theta[i + 1] = (U[j], P1[s])
        theta[-(i + 1)] = (U[j], P2[s])
    nu = {}
    for q, clause in enumerate(formula.clauses):
        j, s = divmod(q, nc)
        y, z = Y[j], [Z[k][s] for k in range(3)]
        comms.append(frozenset((y, z[1], z[2])))
        comms.append(frozenset((y, z[0], z[2])))
        comms.append(frozenset((y, z[0], z[1])))
        for k in range(3):
            nu[(q, k)] = (y, z[k])
    for q, clause in enumerate(formula.clauses):
        for k, lit in enumerate(clause):
            comms.append(frozenset(nu[(q, k)] + theta[-lit]))

    ell = (formula.num_vars + 2 * len(formula.clauses) + math.comb(len(P), 2) + math.comb(len(Zall), 2)
           + len(U) * len(Zall) + len(P) * len(Y) + len(P) * len(Zall))
    if not fix_p_z:
        ell -= len(P) * len(Zall)
    meta = {
        "kind": "3sat-stars" if fix_p_z else "3sat-conn",
        "theta": {str(lit): list(e) for lit, e in theta.items()},
        "nu": {f"{q},{k}": list(e) for (q, k), e in nu.items()},
        "layout": {"U": U, "P1": P1, "P2": P2, "Y": Y, "Z1": Z[0], "Z2": Z[1], "Z3": Z[2]},
        "fixed_edges": len(fixed),
    }
    prop = Property.STARS if fix_p_z else Property.CONNECTIVITY
    return Instance(graph, tuple(comms), prop, ell, None, meta)


def from_3sat_stars(formula: CnfFormula) -> Instance:
    return _sat_gadget(formula, fix_p_z=True)


def from_3sat_connectivity(formula: CnfFormula) -> Instance:
    return _sat_gadget(formula, fix_p_z=False)


def decode_assignment(instance: Instance, edge_pairs: Iterable[tuple[int, int]]) -> list[bool]:
    """A(x) is False when the selection edge of x is used, True when that of not-x is."""
    chosen = {tuple(sorted(e)) for e in edge_pairs}
    theta = instance.meta["theta"]
    out = []
    for i in range(1, len(theta) // 2 + 1):
        pos = tuple(sorted(theta[str(i)]))
        out.append(pos not in chosen)
    return out


def from_hamiltonian_cycle(graph: WeightedGraph) -> Instance:
    if graph.n < 3:
        raise ValueError("need at least 3 vertices")
    unit = WeightedGraph.from_edges(graph.n, graph_pairs(graph))
    verts = frozenset(range(graph.n))
    comms = tuple(verts - {v} for v in range(graph.n))
    return Instance(unit, comms, Property.CONNECTIVITY, graph.n, None, {"kind": "hamcycle"})


@dataclass(frozen=True)
class HittingSetInstance:
    universe_size: int
    family: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "family", tuple(frozenset(f) for f in self.family))
        if self.universe_size < 2:
            raise ValueError("universe needs at least 2 elements")
        for f in self.family:
            if not f or min(f) < 0 or max(f) >= self.universe_size:
                raise ValueError(f"bad set {sorted(f)}")


def from_hitting_set(hs: HittingSetInstance) -> Instance:
    u = hs.universe_size
    zs = u ** 3
    Z = range(u, u + zs)
    edges = list(itertools.combinations(range(u), 2)) + [(a, z) for a in range(u) for z in Z]
    graph = WeightedGraph.from_edges(u + zs, edges)
    comms = tuple(f | frozenset(Z) for f in hs.family)
    ell = hs.k * zs + u * u
    return Instance(graph, comms, Property.STARS, ell, None, {"kind": "hitting-set"})


def mcc_min_padding(n: int, kappa: int, r: int) -> int:
    """Smallest padding size s that keeps wrong centers over budget."""
    return kappa * n + kappa * r - kappa * kappa + kappa + 2


def from_multicolored_clique(graph: WeightedGraph, colors: Sequence[Iterable[int]],
                             padding: int | None = None) -> Instance:
    n = graph.n
    colors = [frozenset(c) for c in colors]
    if sorted(v for c in colors for v in c) != list(range(n)):
        raise ValueError("colors must partition the vertex set")
    degs = {len(a) for a in graph.adjacency}
    if len(degs) > 1:
        raise NotRegular(f"degrees {sorted(degs)} differ")
    r = degs.pop() if degs else 0
    kappa = len(colors)
    s = n ** 3 if padding is None else padding
    if s < mcc_min_padding(n, kappa, r):
        raise ValueError(f"padding {s} too small, need >= {mcc_min_padding(n, kappa, r)}")
    blocks = [list(range(n + i * s, n + (i + 1) * s)) for i in range(kappa)]
    block_of = {v: i for i, blk in enumerate(blocks) for v in blk}
    total = n + kappa * s
    original = {(a, b) for a, b, _ in graph.edges}
    edges = []
    for a in range(total):
        for b in range(a + 1, total):
            if b < n:
                w = 2 if (a, b) in original else 1
            elif a < n:
                w = 1 if a in colors[block_of[b]] else 2
            else:
                w = 2
            edges.append((a, b, Fraction(w)))
    big = WeightedGraph(total, tuple(edges))
    comms = tuple(frozenset(range(n)) | frozenset(blk) for blk in blocks)
    pairs = math.comb(kappa, 2)
    ell = kappa * (s + n - 1) - pairs
    b = Fraction(kappa * (s + n - 1 + r) - 2 * pairs)
    meta = {"kind": "mcc", "padding": s, "r": r, "colors": [sorted(c) for c in colors]}
    return Instance(big, comms, Property.STARS, ell, b, meta)


def from_vertex_cover_clique(graph: WeightedGraph, k: int) -> Instance:
    """Yes iff `graph` has an independent set of size >= k."""
    n = graph.n
    if k > n:
        raise ValueError("k exceeds the vertex count")
    x = n
    clique = WeightedGraph.complete(n + 1)
    comms = [frozenset(p) for p in itertools.combinations(range(n), 2)]
    comms += [frozenset((u, v, x)) for u, v, _ in graph.edges]
    ell = math.comb(n, 2) + n - k
    return Instance(clique, tuple(comms), Property.CONNECTIVITY, ell, None, {"kind": "vc-clique"})


@dataclass(frozen=True)
class RandomParams:
    n: int
    edge_prob: float = 0.6
    community_count: int = 3
    size_range: tuple[int, int] = (2, 4)
    weight_range: tuple[int, int] = (1, 1)
    property: Property = Property.CONNECTIVITY
    ell: int | None = None
    budget: Fraction | None = None
    retries: int = 200


def random_instance(params: RandomParams, seed: int) -> Instance:
    rng = random.Random(seed)
    p = params
    lo, hi = p.weight_range
    edges = [(u, v, rng.randint(lo, hi)) for u, v in itertools.combinations(range(p.n), 2)
             if rng.random() < p.edge_prob]
    graph = WeightedGraph.from_edges(p.n, edges)
    pairs = graph_pairs(graph)
    comms = []
    smin, smax = p.size_range
    smax = min(smax, p.n)
    for _ in range(p.community_count):
        for _ in range(p.retries):
            c = frozenset(rng.sample(range(p.n), rng.randint(smin, smax)))
            if Property(p.property) is not Property.STARS or universal_vertices(pairs, c):
                break
        else:
            raise GenerationFailed("no community with a universal vertex found")
        comms.append(c)
    inst = Instance(graph, tuple(comms), Property(p.property), 0, p.budget)
    ell = len(inst.relevant_edges) if p.ell is None else p.ell
    return inst.with_budgets(ell=ell)
