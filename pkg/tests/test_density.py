from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from defekt import gadgets
from defekt.density import (
    build_report,
    degeneracy,
    mad_bruteforce,
    mad_exact,
    top_grad_half,
    validate_subdivision_witness,
)
from defekt.errors import CapExceededError, ValidationError
from defekt.graphs import Graph

from helpers import nonempty_graphs


@given(nonempty_graphs(max_n=8))
def test_mad_exact_agrees_with_bruteforce(g):
    exact, wit_e = mad_exact(g)
    brute, _ = mad_bruteforce(g)
    assert exact == brute
    # the witness must achieve the reported value
    sub = set(wit_e)
    inside = sum(1 for u, v in g.edges() if u in sub and v in sub)
    assert Fraction(2 * inside, len(sub)) == exact


@given(nonempty_graphs(max_n=8))
def test_degeneracy_at_most_floor_mad(g):
    k, order = degeneracy(g)
    mad, _ = mad_exact(g)
    assert k <= mad
    assert sorted(order) == list(g.vertices())


def test_mad_known_values():
    assert mad_exact(gadgets.complete(5))[0] == 4
    assert mad_exact(gadgets.cycle(6))[0] == 2
    assert mad_exact(gadgets.petersen())[0] == 3
    tree = gadgets.path(9)
    assert mad_exact(tree)[0] == Fraction(16, 9)


def test_mad_edge_cases():
    with pytest.raises(ValidationError):
        mad_exact(Graph(0))
    assert mad_exact(Graph(3))[0] == 0


def test_mad_bruteforce_cap():
    with pytest.raises(CapExceededError):
        mad_bruteforce(gadgets.cycle(17))


def naive_grad_half(g: Graph) -> Fraction:
    """Exhaustive reference for the densest (<=1)-subdivision preimage.

    For every branch set S, pairs already adjacent in the host are edges
    outright; the remaining pairs compete for distinct outside middle
    vertices, assigned by plain backtracking.
    """
    best = Fraction(0)

    def assign(pairs, used):
        if not pairs:
            return 0
        head, *rest = pairs
        u, v = head
        top = assign(rest, used)
        cands = set(g.neighbours(u)) & set(g.neighbours(v)) - used
        for w in cands:
            got = 1 + assign(rest, used | {w})
            top = max(top, got)
        return top

    for size in range(1, g.n + 1):
        for s in combinations(g.vertices(), size):
            inked = set(s)
            direct = sum(
                1 for u, v in combinations(s, 2) if g.has_edge(u, v)
            )
            missing = [
                (u, v) for u, v in combinations(s, 2) if not g.has_edge(u, v)
            ]
            extra = assign(missing, inked)
            best = max(best, Fraction(direct + extra, size))
    return best


@settings(max_examples=40, deadline=None)
@given(nonempty_graphs(max_n=6))
def test_top_grad_half_agrees_with_naive(g):
    value, witness, method = top_grad_half(g)
    assert method == "brute-force"
    assert value == naive_grad_half(g)
    assert validate_subdivision_witness(g, witness) == []


def test_top_grad_known_values():
    assert top_grad_half(gadgets.complete(6))[0] == Fraction(5, 2)
    assert top_grad_half(gadgets.petersen())[0] == Fraction(3, 2)
    assert top_grad_half(gadgets.cycle(6))[0] == 1
    assert top_grad_half(gadgets.star(3))[0] == Fraction(3, 4)


def test_top_grad_above_cap_degrades_to_lower_bound():
    g = gadgets.complete(6)
    value, witness, method = top_grad_half(g, cap=3)
    assert method == "heuristic-lower-bound"
    assert value == Fraction(5, 2)
    assert validate_subdivision_witness(g, witness) == []


def test_report_payload_shape():
    payload = build_report(gadgets.petersen()).to_payload()
    assert payload == {
        "mad": "3",
        "mad_witness": list(range(10)),
        "degeneracy": 3,
        "top_grad_half": "3/2",
        "top_grad_method": "brute-force",
    }
