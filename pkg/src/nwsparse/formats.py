"""Line-oriented instance and solution files (1-based vertices on the wire)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (Instance, OracleResult, ParseError, Property, WeightedGraph,
                   format_budget, format_rational, parse_rational)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected integer, got {tok!r}") from None


def parse_instance(text: str) -> Instance:
    header = None
    prop = Property.CONNECTIVITY
    edges, comms = [], []
    ell = None
    budget: Fraction | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        kind = toks[0]
        if kind == "p":
            if len(toks) != 5 or toks[1] != "nws":
                raise ParseError(f"line {lineno}: header must be 'p nws <n> <m> <c>'")
            header = tuple(_int(t, lineno) for t in toks[2:])
        elif kind == "w":
            if len(toks) != 2 or toks[1] not in ("stars", "conn"):
                raise ParseError(f"line {lineno}: property must be 'stars' or 'conn'")
            prop = Property(toks[1])
        elif kind == "l":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: expected 'l <ell>'")
            ell = _int(toks[1], lineno)
        elif kind == "b":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: expected 'b <budget>'")
            budget = None if toks[1] == "inf" else parse_rational(toks[1])
        elif kind in ("e", "s"):
            if header is None:
                raise ParseError(f"line {lineno}: '{kind}' line before header")
            n = header[0]
            if kind == "e":
                if len(toks) not in (3, 4):
                    raise ParseError(f"line {lineno}: expected 'e <u> <v> [<w>]'")
                u, v = _int(toks[1], lineno) - 1, _int(toks[2], lineno) - 1
                w = parse_rational(toks[3]) if len(toks) == 4 else Fraction(1)
                if w <= 0:
                    raise ParseError(f"line {lineno}: weight must be positive")
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise ParseError(f"line {lineno}: bad edge endpoints")
                edges.append((u, v, w))
            else:
                if len(toks) < 2:
                    raise ParseError(f"line {lineno}: expected 's <k> <v1> ...'")
                k = _int(toks[1], lineno)
                members = [_int(t, lineno) - 1 for t in toks[2:]]
                if k != len(members) or k == 0:
                    raise ParseError(f"line {lineno}: community size mismatch")
                if any(not 0 <= v < n for v in members):
                    raise ParseError(f"line {lineno}: community vertex out of range")
                comms.append(frozenset(members))
        else:
            raise ParseError(f"line {lineno}: unknown line type {kind!r}")
    if header is None:
        raise ParseError("missing 'p nws' header")
    n, m, c = header
    if len(edges) != m:
        raise ParseError(f"header says {m} edges, found {len(edges)}")
    if len(comms) != c:
        raise ParseError(f"header says {c} communities, found {len(comms)}")
    try:
        graph = WeightedGraph(n, tuple(edges))
        return Instance(graph, tuple(comms), prop, m if ell is None else ell, budget)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_instance(instance: Instance, comment: str | None = None) -> str:
    g = instance.graph
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p nws {g.n} {g.m} {instance.c}")
    out.append(f"w {instance.property.value}")
    for u, v, w in g.edges:
        out.append(f"e {u + 1} {v + 1}" if w == 1 else f"e {u + 1} {v + 1} {format_rational(w)}")
    for c in instance.communities:
        out.append(f"s {len(c)} " + " ".join(str(v + 1) for v in sorted(c)))
    out.append(f"l {instance.ell}")
    out.append(f"b {format_budget(instance.budget)}")
    return "\n".join(out) + "\n"


def format_solution(instance: Instance, result: OracleResult) -> str:
    if not result.answer:
        return "NO\n"
    sol = result.solution
    out = [f"SOLUTION {len(sol.edge_set)} {format_rational(sol.weight(instance))}"]
    out.extend(f"e {u + 1} {v + 1}" for u, v in sol.sorted_pairs(instance))
    for i, cert in enumerate(sol.certificates):
        if instance.property is Property.STARS:
            out.append(f"cert {i + 1} center {cert + 1}")
        else:
            out.append(f"cert {i + 1} connected")
    return "\n".join(out) + "\n"


@dataclass
class SolutionFile:
    feasible: bool
    edges: list[tuple[int, int]]
    centers: dict[int, int]
    declared_count: int = 0
    declared_weight: Fraction = Fraction(0)


def parse_solution(text: str) -> SolutionFile:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("c ")]
    if not lines:
        raise ParseError("empty solution file")
    if lines[0] == ["NO"]:
        return SolutionFile(False, [], {})
    head = lines[0]
    if len(head) != 3 or head[0] != "SOLUTION":
        raise ParseError("first line must be 'SOLUTION <count> <weight>' or 'NO'")
    sf = SolutionFile(True, [], {}, _int(head[1], 1), parse_rational(head[2]))
    for lineno, toks in enumerate(lines[1:], 2):
        if toks[0] == "e" and len(toks) == 3:
            sf.edges.append((_int(toks[1], lineno) - 1, _int(toks[2], lineno) - 1))
        elif toks[0] == "cert" and len(toks) == 4 and toks[2] == "center":
            sf.centers[_int(toks[1], lineno) - 1] = _int(toks[3], lineno) - 1
        elif toks[0] == "cert" and len(toks) == 3 and toks[2] == "connected":
            continue
        else:
            raise ParseError(f"line {lineno}: unexpected {' '.join(toks)!r}")
    return sf
