"""Seeded random instances with budgets placed near the optimum."""
import random
from fractions import Fraction

from nwsparse import Property, solve_subset_enumeration
from nwsparse.reductions import GenerationFailed, RandomParams, random_instance


def random_case(seed, prop=None, n=(3, 7), comms=(1, 5), weights=(1, 3), max_relevant=18,
                size=(2, 5), tight=True, min_relevant=0):
    """Return an instance or None when the draw is unusable."""
    rng = random.Random(seed)
    prop = prop or rng.choice(list(Property))
    params = RandomParams(n=rng.randint(*n), edge_prob=rng.choice([0.5, 0.7, 0.9, 1.0]),
                          community_count=rng.randint(*comms), size_range=(size[0], rng.randint(*size)),
                          weight_range=(1, rng.choice(weights)), property=prop)
    try:
        inst = random_instance(params, seed)
    except GenerationFailed:
        return None
    if not min_relevant <= len(inst.relevant_edges) <= max_relevant:
        return None
    if not tight:
        return inst
    opt = solve_subset_enumeration(inst, "optimize")
    base = opt.optimum[0] if opt else len(inst.relevant_edges)
    ell = max(0, base + rng.choice([-1, 0, 0, 1, 2]))
    budget = None
    if opt and rng.random() < 0.5:
        budget = opt.optimum[1] + rng.choice([Fraction(-1), Fraction(0), Fraction(1, 2)])
        budget = max(budget, Fraction(1, 2))
    return inst.with_budgets(ell=ell, budget=budget)


def cases(count, start=0, **kw):
    out, seed = [], start
    while len(out) < count:
        inst = random_case(seed, **kw)
        seed += 1
        if inst is not None:
            out.append(inst)
    return out
