"""Instance model, exact weights, solution checks and the parameter t."""
from __future__ import annotations

import enum
import logging
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

log = logging.getLogger("nwsparse")
if "NWS_LOG" in os.environ:
    logging.basicConfig(level=os.environ["NWS_LOG"].upper(), format="%(levelname)s %(name)s: %(message)s")


class NWSError(Exception):
    """Base class for library errors."""


class ParseError(NWSError):
    pass


class Inapplicable(NWSError):
    """The chosen algorithm does not cover this instance."""


class Timeout(NWSError):
    pass


class Property(enum.Enum):
    STARS = "stars"
    CONNECTIVITY = "conn"


def parse_rational(text: str) -> Fraction:
    """Parse "3", "3.25", "-1/4" or "13/4" exactly."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {text!r}") from exc


def _is_decimal(den: int) -> bool:
    for p in (2, 5):
        while den % p == 0:
            den //= p
    return den == 1


def format_rational(r: Fraction) -> str:
    """Exact decimal when the denominator allows it, else "num/den"."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    if not _is_decimal(r.denominator):
        return f"{r.numerator}/{r.denominator}"
    digits = 0
    scaled = r
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    num = abs(scaled.numerator)
    sign = "-" if r < 0 else ""
    whole, frac = divmod(num, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_budget(b: Fraction | None) -> str:
    return "inf" if b is None else format_rational(b)


class Deadline:
    """Cooperative timeout; solvers call check() inside their loops."""

    def __init__(self, seconds: float | None):
        self.expires = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self.expires is not None and time.monotonic() > self.expires:
            raise Timeout("time limit exceeded")


def check_deadline(deadline: Deadline | None) -> None:
    if deadline is not None:
        deadline.check()


@dataclass(frozen=True)
class WeightedGraph:
    """Graph on vertices 0..n-1; edges stored as (u, v, w) with u < v."""

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = []
        seen = set()
        for e in self.edges:
            u, v, w = e
            w = Fraction(w)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise ValueError(f"edge ({u},{v}) out of range")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            if w <= 0:
                raise ValueError(f"non-positive weight on ({u},{v})")
            seen.add((u, v))
            norm.append((u, v, w))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "WeightedGraph":
        """Edges as (u, v) or (u, v, w); weights may be str, int or Fraction."""
        out = []
        for e in edges:
            if len(e) == 2:
                out.append((e[0], e[1], Fraction(1)))
            else:
                w = e[2]
                out.append((e[0], e[1], parse_rational(w) if isinstance(w, str) else Fraction(w)))
        return cls(n, tuple(out))

    @classmethod
    def complete(cls, n: int) -> "WeightedGraph":
        return cls(n, tuple((u, v, Fraction(1)) for u in range(n) for v in range(u + 1, n)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {(u, v): i for i, (u, v, _) in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def edge_id(self, u: int, v: int) -> int | None:
        if u > v:
            u, v = v, u
        return self.index.get((u, v))

    def weight_of(self, edge_ids: Iterable[int]) -> Fraction:
        return sum((self.edges[i][2] for i in edge_ids), Fraction(0))

    @property
    def unit_weights(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)


@dataclass(frozen=True)
class Instance:
    graph: WeightedGraph
    communities: tuple[frozenset[int], ...]
    property: Property
    ell: int
    budget: Fraction | None = None
    meta: Mapping = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if isinstance(self.property, str):
            object.__setattr__(self, "property", Property(self.property))
        seen = set()
        comms = []
        for c in self.communities:
            c = frozenset(c)
            if not c:
                raise ValueError("empty community")
            if min(c) < 0 or max(c) >= self.graph.n:
                raise ValueError(f"community {sorted(c)} out of range")
            if c not in seen:
                seen.add(c)
                comms.append(c)
        object.__setattr__(self, "communities", tuple(comms))
        if self.ell < 0:
            raise ValueError("negative edge budget")
        if self.budget is not None:
            object.__setattr__(self, "budget", Fraction(self.budget))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def c(self) -> int:
        return len(self.communities)

    @cached_property
    def d(self) -> int:
        return max((len(c) for c in self.communities), default=0)

    @cached_property
    def relevant_edges(self) -> tuple[int, ...]:
        """Edges with both endpoints inside some community."""
        return tuple(sorted({i for c in self.communities for i in induced_edge_set(self.graph, c)}))

    @cached_property
    def covered(self) -> frozenset[int]:
        return frozenset().union(*self.communities) if self.communities else frozenset()

    def within_budget(self, count: int, weight: Fraction) -> bool:
        return count <= self.ell and (self.budget is None or weight <= self.budget)

    def with_budgets(self, ell: int | None = None, budget: Fraction | None | str = "keep") -> "Instance":
        return Instance(self.graph, self.communities, self.property,
                        self.ell if ell is None else ell,
                        self.budget if budget == "keep" else budget, self.meta)


def induced_edge_set(graph: WeightedGraph, S: Iterable[int]) -> set[int]:
    S = set(S)
    return {i for i, (u, v, _) in enumerate(graph.edges) if u in S and v in S}


def _pairs(graph: WeightedGraph, edge_ids: Iterable[int]) -> set[tuple[int, int]]:
    return {graph.edges[i][:2] for i in edge_ids}


def is_community_connected(edges: Iterable[tuple[int, int]], C: Iterable[int]) -> bool:
    """Connectivity of the subgraph induced on C by the given (u, v) pairs."""
    C = set(C)
    adj = {v: [] for v in C}
    for u, v in edges:
        if u in C and v in C:
            adj[u].append(v)
            adj[v].append(u)
    start = next(iter(C))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(C)


def universal_vertices(edges: Iterable[tuple[int, int]], C: Iterable[int]) -> set[int]:
    """Vertices of C adjacent (via the given pairs) to all of C."""
    C = set(C)
    deg = {v: 0 for v in C}
    for u, v in set((min(a, b), max(a, b)) for a, b in edges):
        if u in C and v in C:
            deg[u] += 1
            deg[v] += 1
    return {v for v in C if deg[v] == len(C) - 1}


def graph_pairs(graph: WeightedGraph) -> list[tuple[int, int]]:
    return [(u, v) for u, v, _ in graph.edges]


def hypergraph_components(instance: Instance) -> tuple[list[frozenset[int]], frozenset[int]]:
    """Components of the community hypergraph and the set of uncovered vertices.

    Components are sorted by their smallest vertex; x is the list length.
    """
    parent = list(range(instance.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in instance.communities:
        it = iter(c)
        root = find(next(it))
        for v in it:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict[int, set[int]] = {}
    for v in sorted(instance.covered):
        groups.setdefault(find(v), set()).add(v)
    comps = sorted((frozenset(g) for g in groups.values()), key=min)
    uncovered = frozenset(range(instance.n)) - instance.covered
    return comps, uncovered


def feedback_edge_parameter(instance: Instance) -> int:
    comps, _ = hypergraph_components(instance)
    return instance.ell - len(instance.covered) + len(comps)


@dataclass(frozen=True)
class Solution:
    edge_set: frozenset[int]
    certificates: tuple  # per community: center vertex (Stars) or bool (Connectivity)

    def weight(self, instance: Instance) -> Fraction:
        return instance.graph.weight_of(self.edge_set)

    def sorted_pairs(self, instance: Instance) -> list[tuple[int, int]]:
        return sorted(instance.graph.edges[i][:2] for i in self.edge_set)


def make_solution(instance: Instance, edge_ids: Iterable[int]) -> Solution:
    edge_ids = frozenset(edge_ids)
    pairs = _pairs(instance.graph, edge_ids)
    certs = []
    for c in instance.communities:
        if instance.property is Property.STARS:
            univ = universal_vertices(pairs, c)
            certs.append(min(univ) if univ else None)
        else:
            certs.append(is_community_connected(pairs, c))
    return Solution(edge_ids, tuple(certs))


def solution_key(instance: Instance, sol: Solution) -> tuple:
    """Tie-break order: weight, edge count, sorted edge list."""
    return (sol.weight(instance), len(sol.edge_set), sorted(sol.edge_set))


@dataclass(frozen=True)
class OracleResult:
    solution: Solution | None
    optimum: tuple[int, Fraction] | None = None

    @property
    def answer(self) -> bool:
        return self.solution is not None

    def __bool__(self) -> bool:
        return self.answer


NO = OracleResult(None)


def yes(instance: Instance, edge_ids: Iterable[int], optimize: bool = False) -> OracleResult:
    sol = make_solution(instance, edge_ids)
    opt = (len(sol.edge_set), sol.weight(instance)) if optimize else None
    return OracleResult(sol, opt)


@dataclass
class VerifyReport:
    valid: bool
    edge_count: int
    total_weight: Fraction
    violations: list[str]


def verify_solution(instance: Instance, edge_set: Iterable[int]) -> VerifyReport:
    edge_set = set(edge_set)
    bad = [i for i in edge_set if not 0 <= i < instance.graph.m]
    if bad:
        return VerifyReport(False, len(edge_set), Fraction(0), [f"unknown edge index {i}" for i in sorted(bad)])
    pairs = _pairs(instance.graph, edge_set)
    weight = instance.graph.weight_of(edge_set)
    violations = []
    if len(edge_set) > instance.ell:
        violations.append(f"edge budget: {len(edge_set)} > {instance.ell}")
    if instance.budget is not None and weight > instance.budget:
        violations.append(f"weight budget: {format_rational(weight)} > {format_rational(instance.budget)}")
    for i, c in enumerate(instance.communities):
        if instance.property is Property.STARS:
            if not universal_vertices(pairs, c):
                violations.append(f"community {i} has no center")
        elif not is_community_connected(pairs, c):
            violations.append(f"community {i} is not connected")
    return VerifyReport(not violations, len(edge_set), weight, violations)


def trivially_infeasible(instance: Instance) -> int | None:
    """Index of a community that no subgraph of G can satisfy, if any."""
    pairs = graph_pairs(instance.graph)
    for i, c in enumerate(instance.communities):
        if instance.property is Property.STARS:
            if not universal_vertices(pairs, c):
                return i
        elif not is_community_connected(pairs, c):
            return i
    return None
