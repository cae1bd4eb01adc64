"""Bitmask view of an instance: edge sets as ints, weights as scaled ints."""
from __future__ import annotations

import math
from fractions import Fraction

from .core import Instance, Property, graph_pairs, universal_vertices


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class MaskModel:
    def __init__(self, instance: Instance):
        self.instance = instance
        g = instance.graph
        dens = [w.denominator for _, _, w in g.edges]
        if instance.budget is not None:
            dens.append(instance.budget.denominator)
        self.scale = math.lcm(*dens) if dens else 1
        self.iw = [int(w * self.scale) for _, _, w in g.edges]
        self.ibudget = None if instance.budget is None else math.floor(instance.budget * self.scale)
        self.stars = self.conn = None
        pairs = graph_pairs(g)
        if instance.property is Property.STARS:
            self.stars = []
            for c in instance.communities:
                options = {}
                for v in sorted(universal_vertices(pairs, c)):
                    options[v] = sum(1 << g.edge_id(v, w) for w in c if w != v)
                self.stars.append(options)
        else:
            self.conn = []
            for c in instance.communities:
                verts = sorted(c)
                local = {v: k for k, v in enumerate(verts)}
                inner = [(1 << g.edge_id(u, v), local[u], local[v])
                         for u in verts for v in verts if u < v and g.edge_id(u, v) is not None]
                self.conn.append((verts, inner))

    def weight(self, mask: int) -> int:
        return sum(self.iw[i] for i in iter_bits(mask))

    def to_fraction(self, scaled: int) -> Fraction:
        return Fraction(scaled, self.scale)

    def fits(self, count: int, scaled_weight: int) -> bool:
        return count <= self.instance.ell and (self.ibudget is None or scaled_weight <= self.ibudget)

    def labels(self, i: int, mask: int) -> list[int]:
        """Component label per local vertex of connectivity community i."""
        verts, inner = self.conn[i]
        parent = list(range(len(verts)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for bit, a, b in inner:
            if mask & bit:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        return [find(a) for a in range(len(verts))]

    def satisfied(self, i: int, mask: int) -> bool:
        if self.stars is not None:
            return any(mask & s == s for s in self.stars[i].values())
        return len(set(self.labels(i, mask))) == 1

    def all_satisfied(self, mask: int) -> bool:
        return all(self.satisfied(i, mask) for i in range(self.instance.c))
