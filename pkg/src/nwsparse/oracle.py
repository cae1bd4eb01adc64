"""Exponential exact baselines: subset scan, deletion side, branching on ell.

These double as ground truth for the faster algorithms.
"""
from __future__ import annotations

import itertools
from typing import Literal

import numpy as np

from ._bits import MaskModel, iter_bits
from .core import (NO, Deadline, Inapplicable, Instance, OracleResult, Property,
                   check_deadline, log, trivially_infeasible, yes)

Mode = Literal["decide", "optimize"]


class RelevantEdgeLimit(Inapplicable):
    pass


class NotUnweighted(Inapplicable):
    pass


def _mask_to_ids(mask: int, rel: tuple[int, ...]) -> list[int]:
    return [rel[p] for p in iter_bits(mask)]


def solve_subset_enumeration(instance: Instance, mode: Mode = "decide", cap: int = 24,
                             chunk_bits: int = 16, deadline: Deadline | None = None) -> OracleResult:
    """Scan every subset of the relevant edges, 2^r masks in numpy chunks."""
    rel = instance.relevant_edges
    r = len(rel)
    if r > cap:
        raise RelevantEdgeLimit(f"{r} relevant edges exceed cap {cap}")
    if trivially_infeasible(instance) is not None:
        return NO
    model = MaskModel(instance)
    pos = {e: p for p, e in enumerate(rel)}

    def local(mask: int) -> int:
        return sum(1 << pos[i] for i in iter_bits(mask))

    iw = [model.iw[e] for e in rel]
    wdtype = np.int64 if sum(iw) < 2**62 else object
    if model.stars is not None:
        star_checks = [[local(s) for s in opts.values()] for opts in model.stars]
        conn_checks = []
    else:
        star_checks = []
        conn_checks = []
        for verts, inner in model.conn:
            if len(verts) > 1:
                conn_checks.append((len(verts), [(pos[b.bit_length() - 1], a, c) for b, a, c in inner]))

    total = 1 << r
    step = 1 << min(r, chunk_bits)
    best = None  # (weight, count, sorted ids)
    for start in range(0, total, step):
        check_deadline(deadline)
        masks = np.arange(start, min(start + step, total), dtype=np.int64)
        ok = np.ones(len(masks), dtype=bool)
        for stars in star_checks:
            hit = np.zeros(len(masks), dtype=bool)
            for s in stars:
                hit |= (masks & s) == s
            ok &= hit
        for k, inner in conn_checks:
            adj = [np.zeros(len(masks), dtype=np.int64) for _ in range(k)]
            for p, a, b in inner:
                bit = (masks >> p) & 1
                adj[a] |= bit << b
                adj[b] |= bit << a
            reach = np.ones(len(masks), dtype=np.int64)
            for _ in range(k - 1):
                new = reach.copy()
                for a in range(k):
                    new |= adj[a] * ((reach >> a) & 1)
                reach = new
            ok &= reach == (1 << k) - 1
        counts = np.bitwise_count(masks).astype(np.int64)
        weights = np.zeros(len(masks), dtype=wdtype)
        for p in range(r):
            weights += ((masks >> p) & 1) * iw[p]
        ok &= counts <= instance.ell
        if model.ibudget is not None:
            ok &= weights <= model.ibudget
        if not ok.any():
            continue
        idx = np.flatnonzero(ok)
        w_ok = weights[idx]
        wmin = w_ok.min()
        idx = idx[w_ok == wmin]
        cmin = counts[idx].min()
        idx = idx[counts[idx] == cmin]
        cand = min(sorted(_mask_to_ids(int(masks[i]), rel)) for i in idx)
        key = (int(wmin), int(cmin), cand)
        if best is None or key < best:
            best = key
        if mode == "decide":
            break
    if best is None:
        return NO
    return yes(instance, best[2], optimize=mode == "optimize")


def solve_deletion_side(instance: Instance, k: int | None = None,
                        deadline: Deadline | None = None) -> OracleResult:
    """Delete exactly k relevant edges in every possible way (unit weights)."""
    if not instance.graph.unit_weights:
        raise NotUnweighted("deletion oracle needs unit weights")
    rel = instance.relevant_edges
    limit = instance.ell
    if instance.budget is not None:
        limit = min(limit, int(instance.budget))
    if k is None:
        k = max(0, len(rel) - limit)
    if k < 0 or k > len(rel):
        return NO
    model = MaskModel(instance)
    full = sum(1 << e for e in rel)
    for deleted in itertools.combinations(rel, k):
        check_deadline(deadline)
        mask = full
        for e in deleted:
            mask ^= 1 << e
        kept = len(rel) - k
        if model.fits(kept, kept * model.scale) and model.all_satisfied(mask):
            return yes(instance, iter_bits(mask))
    return NO


def solve_branching_ell(instance: Instance, deadline: Deadline | None = None) -> OracleResult:
    """Depth-bounded search that adds edges only to repair an unsatisfied community."""
    if any(len(c) >= instance.ell + 2 for c in instance.communities):
        return NO
    if trivially_infeasible(instance) is not None:
        return NO
    model = MaskModel(instance)
    g = instance.graph
    failed: set[int] = set()

    def options(i: int, mask: int) -> list[int]:
        if model.stars is not None:
            return sorted({mask | s for s in model.stars[i].values()})
        verts, inner = model.conn[i]
        lab = model.labels(i, mask)
        return sorted({mask | bit for bit, a, b in inner if lab[a] != lab[b]})

    def search(mask: int, count: int, weight: int) -> int | None:
        check_deadline(deadline)
        best_i, best_opts = None, None
        for i in range(instance.c):
            if model.satisfied(i, mask):
                continue
            opts = options(i, mask)
            if best_opts is None or len(opts) < len(best_opts):
                best_i, best_opts = i, opts
                if len(opts) <= 1:
                    break
        if best_i is None:
            return mask
        scored = []
        for new in best_opts:
            added = new & ~mask
            cnt = count + added.bit_count()
            w = weight + model.weight(added)
            if model.fits(cnt, w):
                scored.append((w, cnt, new))
        for w, cnt, new in sorted(scored):
            if new in failed:
                continue
            found = search(new, cnt, w)
            if found is not None:
                return found
            failed.add(new)
        return None

    found = search(0, 0, 0)
    log.debug("branch-ell explored %d failed states", len(failed))
    return NO if found is None else yes(instance, iter_bits(found))


def solve_center_enumeration(instance: Instance, mode: Mode = "decide",
                             deadline: Deadline | None = None) -> OracleResult:
    """Stars only: try every choice of one G-universal center per community."""
    if instance.property is not Property.STARS:
        raise Inapplicable("center enumeration applies to Stars instances")
    model = MaskModel(instance)
    choices = [list(opts.values()) for opts in model.stars]
    if any(not ch for ch in choices):
        return NO
    best = None
    seen = set()
    for combo in itertools.product(*choices):
        check_deadline(deadline)
        mask = 0
        for s in combo:
            mask |= s
        if mask in seen:
            continue
        seen.add(mask)
        cnt, w = mask.bit_count(), model.weight(mask)
        if not model.fits(cnt, w):
            continue
        key = (w, cnt, sorted(iter_bits(mask)))
        if best is None or key < best:
            best = key
        if mode == "decide":
            break
    if best is None:
        return NO
    return yes(instance, best[2], optimize=mode == "optimize")
