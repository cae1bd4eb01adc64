from fractions import Fraction

import pytest

from nwsparse import Instance, Property, WeightedGraph, solve_subset_enumeration
from nwsparse.core import NO, ParseError
from nwsparse.formats import format_instance, format_solution, parse_instance, parse_solution

SAMPLE = """c a small weighted instance
p nws 4 4 2
w stars
e 1 2 2.5
e 2 3
e 1 3 1/3
e 3 4
s 3 1 2 3
s 2 3 4
l 3
b 4
"""


def test_parse_sample():
    inst = parse_instance(SAMPLE)
    assert inst.property is Property.STARS
    assert inst.graph.edges[0] == (0, 1, Fraction(5, 2))
    assert inst.graph.edges[2] == (0, 2, Fraction(1, 3))
    assert inst.communities == (frozenset({0, 1, 2}), frozenset({2, 3}))
    assert inst.ell == 3 and inst.budget == 4


def test_round_trip():
    inst = parse_instance(SAMPLE)
    assert parse_instance(format_instance(inst)) == inst


def test_defaults():
    inst = parse_instance("p nws 2 1 1\ne 1 2\ns 2 1 2\n")
    assert inst.property is Property.CONNECTIVITY
    assert inst.budget is None and inst.ell == 1


@pytest.mark.parametrize("text", [
    "e 1 2\np nws 2 1 0\n",
    "p nws 2 1 0\ne 1 2 0\n",
    "p nws 2 1 0\ne 1 2 -1\n",
    "p nws 2 2 0\ne 1 2\n",
    "p nws 2 0 1\ns 3 1 2\n",
    "p nws 2 0 1\ns 1 3\n",
    "p nws 2 0 0\nw trees\n",
    "p nws 2 0 0\nx 1\n",
    "",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_instance(text)


def test_solution_output_is_exact():
    inst = parse_instance(SAMPLE)
    res = solve_subset_enumeration(inst, "optimize")
    text = format_solution(inst, res)
    assert text == "SOLUTION 3 7/3\ne 1 3\ne 2 3\ne 3 4\ncert 1 center 3\ncert 2 center 3\n"
    sf = parse_solution(text)
    assert sf.edges == [(0, 2), (1, 2), (2, 3)] and sf.declared_weight == Fraction(7, 3)
    assert sf.centers == {0: 2, 1: 2}


def test_connectivity_certificates_and_no():
    inst = Instance(WeightedGraph.complete(3), (frozenset({0, 1, 2}),), Property.CONNECTIVITY, 2)
    text = format_solution(inst, solve_subset_enumeration(inst))
    assert text.splitlines()[-1] == "cert 1 connected"
    assert format_solution(inst, NO) == "NO\n"
    assert not parse_solution("NO\n").feasible
