"""Turn a 3-CNF formula into a Stars instance, solve it, and read the assignment back."""
import itertools

from nwsparse import solve_branching_ell
from nwsparse.reductions import decode_assignment, from_3sat_connectivity, from_3sat_stars, parse_dimacs_cnf

FORMULAS = {
    "satisfiable": "p cnf 2 2\n1 2 2 0\n-1 -2 -2 0\n",
    "contradiction": "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n",
}

for name, text in FORMULAS.items():
    formula = parse_dimacs_cnf(text)
    truth = any(formula.satisfied_by(a) for a in itertools.product((False, True), repeat=formula.num_vars))
    for build in (from_3sat_stars, from_3sat_connectivity):
        inst = build(formula)
        res = solve_branching_ell(inst)
        line = f"{name:14s} {inst.meta['kind']:11s} n={inst.n:2d} c={inst.c:3d} ell={inst.ell:3d} -> {res.answer}"
        if res:
            assignment = decode_assignment(inst, res.solution.sorted_pairs(inst))
            line += f"  assignment {assignment}, satisfies formula: {formula.satisfied_by(assignment)}"
        print(line)
        assert res.answer == truth
