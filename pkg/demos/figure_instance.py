"""Five vertices, three communities: compare the Stars and Connectivity optima.

Runs every applicable solver on the same small instance and prints what each one finds.
"""
from nwsparse import (Instance, Property, WeightedGraph, feedback_edge_parameter, solve_branching_ell,
                      solve_center_enumeration, solve_stars_xp, solve_subset_enumeration)
from nwsparse.formats import format_solution
from nwsparse.stars_fpt_c import solve_snws

# vertices: 0 top, 1 left, 2 right, 3 bottom, 4 middle
graph = WeightedGraph.from_edges(5, [(2, 1), (0, 1), (0, 2), (2, 3), (4, 3), (2, 4), (1, 3), (1, 4)])
communities = tuple(map(frozenset, [{4, 2, 3}, {4, 1, 3}, {0, 1, 2, 3, 4}]))


def show(title, inst, result):
    print(f"-- {title}")
    print(format_solution(inst, result), end="")


stars = Instance(graph, communities, Property.STARS, ell=8)
opt = solve_subset_enumeration(stars, "optimize")
show("Stars, oracle optimum", stars, opt)

tight = stars.with_budgets(ell=opt.optimum[0])
print(f"with ell = {tight.ell} the feedback edge parameter is t = {feedback_edge_parameter(tight)}")
show("Stars, XP algorithm over local-cycle sets", tight, solve_stars_xp(tight, "optimize"))
show("Stars, twin-class branching", tight, solve_snws(tight))
show("Stars, center enumeration", tight, solve_center_enumeration(tight, "optimize"))

conn = Instance(graph, communities, Property.CONNECTIVITY, ell=8)
show("Connectivity, oracle optimum", conn, solve_subset_enumeration(conn, "optimize"))
show("Connectivity with ell = 3", conn, solve_branching_ell(conn.with_budgets(ell=3)))
