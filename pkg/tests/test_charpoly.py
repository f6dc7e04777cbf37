import itertools
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from unicyclic_energy.charpoly import (
    CyclomaticError,
    QuasiOrderResult,
    Verdict,
    b_vector,
    charpoly,
    charpoly_cycle,
    charpoly_deletion,
    charpoly_general,
    charpoly_p6,
    charpoly_path,
    matching_charpoly,
    matching_numbers,
    quasi_order_compare,
)
from unicyclic_energy.exact import Poly, bipartite_b_coeffs
from unicyclic_energy.exhaustive import prufer_decode
from unicyclic_energy.graphs import Graph, GraphError, cycle, p6, path, star

X = Poly.x()


def sympy_charpoly(g: Graph) -> Poly:
    m = sp.Matrix(g.adjacency_matrix().astype(int))
    coeffs = m.charpoly().all_coeffs()  # high degree first
    return Poly([int(c) for c in reversed(coeffs)])


def test_recurrence_examples():
    assert charpoly_path(1) == X
    assert charpoly_path(2) == X * X - 1
    assert charpoly_path(4) == Poly((1, 0, -3, 0, 1))
    assert charpoly_path(6) == Poly((-1, 0, 6, 0, -5, 0, 1))
    assert charpoly_p6(7) == Poly((0, -7, 0, 13, 0, -7, 0, 1))
    assert charpoly_p6(8) == Poly((4, 0, -16, 0, 19, 0, -8, 0, 1))
    assert charpoly_cycle(4) == Poly((0, 0, -4, 0, 1))
    assert charpoly_cycle(6) == (X * X - 4) * (X * X - 1) ** 2
    assert charpoly_cycle(8) == Poly((0, 0, -16, 0, 20, 0, -8, 0, 1))
    assert charpoly_general(Graph(1, ())) == X
    assert charpoly_general(cycle(3)) == (X - 2) * (X + 1) ** 2


def test_deletion_examples():
    assert charpoly_deletion(p6(7), (0, 6)) == X * charpoly_cycle(6) - charpoly_path(5)
    for e in cycle(4).edges:
        assert charpoly_deletion(cycle(4), e) == charpoly_path(4) - charpoly_path(2) - 2
    assert charpoly_deletion(path(3), (0, 1)) == X ** 3 - 2 * X
    with pytest.raises(GraphError):
        charpoly_deletion(cycle(5), (0, 2))
    theta = Graph(5, cycle(5).edges + ((0, 2),))
    with pytest.raises(CyclomaticError):
        charpoly_deletion(theta, (0, 1))


@pytest.mark.parametrize("n", range(3, 25))
def test_triple_agreement(n):
    fams = [(charpoly_path, path), (charpoly_cycle, cycle)]
    if n >= 7:
        fams.append((charpoly_p6, p6))
    for rec, ctor in fams:
        g = ctor(n)
        want = rec(n)
        assert charpoly_general(g) == want
        if g.m:
            edges = {g.edges[0], g.edges[-1], g.edges[len(g.edges) // 2]}
            for e in edges:
                assert charpoly_deletion(g, e) == want


@pytest.mark.parametrize("g", [cycle(5), p6(9), star(6), Graph(5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)))])
def test_general_against_sympy(g):
    assert charpoly_general(g) == sympy_charpoly(g)


@given(st.lists(st.integers(0, 9), min_size=8, max_size=8), st.integers(0, 9), st.integers(0, 9))
def test_general_against_numpy_on_random_unicyclic(seq, a, b):
    es = {tuple(sorted(e)) for e in prufer_decode(seq, 10)}
    if a != b:
        es.add((min(a, b), max(a, b)))
    g = Graph(10, tuple(es))
    p = charpoly_general(g)
    ref = np.poly(g.adjacency_matrix())[::-1]
    assert np.allclose(p.float_coeffs(), ref, atol=1e-6)
    if g.m <= g.n:
        e = g.edges[a % g.m]
        assert charpoly_deletion(g, e) == p


@pytest.mark.parametrize("n", [3, 5, 11, 20, 33])
def test_cycle_closed_form_real_axis(n):
    # |x| > 2: Y1, Y2 = (x +- sqrt(x^2-4))/2, phi(C_n) = Y1^n + Y2^n - 2
    p = charpoly_cycle(n)
    for x in (2.3, 3.0, -2.7, 5.5):
        r = math.sqrt(x * x - 4)
        want = ((x + r) / 2) ** n + ((x - r) / 2) ** n - 2
        assert math.isclose(float(p(x)), want, rel_tol=1e-10)


def brute_matchings(g: Graph) -> list[int]:
    out = [0] * (g.n // 2 + 1)
    for k in range(len(out)):
        for sub in itertools.combinations(g.edges, k):
            verts = [v for e in sub for v in e]
            if len(set(verts)) == len(verts):
                out[k] += 1
    return out


def test_matching_examples():
    assert matching_numbers(path(2)) == [1, 1]
    assert matching_numbers(path(4)) == [1, 3, 1]
    assert matching_numbers(star(4)) == [1, 3, 0]
    with pytest.raises(GraphError):
        matching_numbers(cycle(4))


@given(st.integers(3, 12).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2)))
def test_matchings_random_trees(seq):
    n = len(seq) + 2
    t = Graph(n, tuple(prufer_decode(seq, n)))
    m = matching_numbers(t)
    assert m == brute_matchings(t)
    assert matching_charpoly(n, m) == charpoly_general(t)


def test_matchings_forest():
    f = Graph(5, ((0, 1), (2, 3), (3, 4)))
    assert matching_numbers(f) == brute_matchings(f)


def test_bipartite_graphs_have_no_odd_coefficients():
    for g in [cycle(12), p6(15), path(9), star(7)]:
        p = charpoly_general(g)
        assert all(p[k] == 0 for k in range(1 - g.n % 2, g.n + 1, 2) if k != g.n)


def test_quasi_order_examples():
    b = [1, 8, 19, 16, 4]
    assert quasi_order_compare(b, b) == QuasiOrderResult(Verdict.EQUAL)
    r = quasi_order_compare([1, 8, 20, 16, 0], b)
    assert r.verdict == Verdict.INCOMPARABLE and r.witness_greater == 2 and r.witness_less == 4
    assert quasi_order_compare([1, 1, 0], [1, 2, 1]).verdict == Verdict.LESS
    assert quasi_order_compare([1, 2], [1, 1, 0]).verdict == Verdict.GREATER
    assert quasi_order_compare([1, 1], [1, 1, 0]).verdict == Verdict.EQUAL


vec = st.lists(st.integers(0, 3), min_size=4, max_size=4)


@given(vec, vec, vec)
def test_quasi_order_is_partial_order(a, b, c):
    assert quasi_order_compare(a, a).verdict == Verdict.EQUAL
    ab, ba = quasi_order_compare(a, b), quasi_order_compare(b, a)
    assert (ab.verdict == Verdict.EQUAL) == (a == b)
    flip = {Verdict.LESS: Verdict.GREATER, Verdict.GREATER: Verdict.LESS}
    assert ba.verdict == flip.get(ab.verdict, ab.verdict)
    le = lambda r: r.verdict in (Verdict.LESS, Verdict.EQUAL)  # noqa: E731
    if le(ab) and le(quasi_order_compare(b, c)):
        assert le(quasi_order_compare(a, c))
    # witnesses check out by direct lookup
    if ab.witness_less is not None:
        assert a[ab.witness_less] < b[ab.witness_less]
    if ab.witness_greater is not None:
        assert a[ab.witness_greater] > b[ab.witness_greater]
    assert (ab.verdict == Verdict.INCOMPARABLE) == (ab.witness_less is not None and ab.witness_greater is not None)


def test_b_vector_and_dispatch():
    assert b_vector(cycle(8)) == [1, 8, 20, 16, 0]
    assert charpoly(p6(30)) == charpoly_p6(30)
    assert bipartite_b_coeffs(charpoly(star(5))) == [1, 4, 0]
