"""Unweighted Stars NWS parameterized by the number of communities c."""
from __future__ import annotations

from dataclasses import dataclass

from ._bits import MaskModel, iter_bits
from .core import NO, Deadline, Instance, OracleResult, Property, check_deadline, graph_pairs, universal_vertices, yes
from .oracle import NotUnweighted
from .tree_support import WrongParameterRegime


@dataclass(frozen=True)
class TwinClass:
    members: frozenset[int]
    membership_signature: frozenset[int]
    center_signature: frozenset[int]

    @property
    def canonical(self) -> int:
        return min(self.members)


def center_twins_partition(instance: Instance) -> list[TwinClass]:
    """Group vertices by (communities containing v, communities v can center)."""
    pairs = graph_pairs(instance.graph)
    univ = [universal_vertices(pairs, c) for c in instance.communities]
    classes: dict[tuple[frozenset, frozenset], set[int]] = {}
    for v in range(instance.n):
        member = frozenset(i for i, c in enumerate(instance.communities) if v in c)
        center = frozenset(i for i in member if v in univ[i])
        classes.setdefault((member, center), set()).add(v)
    out = [TwinClass(frozenset(vs), m, c) for (m, c), vs in classes.items()]
    return sorted(out, key=lambda t: t.canonical)


def solve_snws(instance: Instance, deadline: Deadline | None = None) -> OracleResult:
    """Branch over one canonical twin per community, pruning on the edge count."""
    if instance.property is not Property.STARS:
        raise WrongParameterRegime("stars-fpt-c needs a Stars instance")
    if not instance.graph.unit_weights:
        raise NotUnweighted("stars-fpt-c needs unit weights")
    model = MaskModel(instance)
    classes = center_twins_partition(instance)
    admissible = []
    for i in range(instance.c):
        reps = [t.canonical for t in classes if i in t.center_signature]
        if not reps:
            return NO
        admissible.append([model.stars[i][v] for v in reps])
    order = sorted(range(instance.c), key=lambda i: (len(admissible[i]), i))
    limit = instance.ell
    if instance.budget is not None:
        limit = min(limit, int(instance.budget))

    def search(depth: int, mask: int) -> int | None:
        check_deadline(deadline)
        if depth == len(order):
            return mask
        for star in admissible[order[depth]]:
            new = mask | star
            if new.bit_count() <= limit:
                found = search(depth + 1, new)
                if found is not None:
                    return found
        return None

    found = search(0, 0)
    return NO if found is None else yes(instance, iter_bits(found))
