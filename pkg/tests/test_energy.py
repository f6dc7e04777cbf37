import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unicyclic_energy.charpoly import charpoly, charpoly_cycle, charpoly_p6
from unicyclic_energy.energy import (
    NumericalFailure,
    coulson_diff,
    coulson_energy,
    compare_energies,
    energy_cycle_reference,
    energy_spectral,
    integrand_evenness,
    sign_word,
    spectrum,
)
from unicyclic_energy.exact import Poly
from unicyclic_energy.graphs import GraphError, cycle, is_bipartite, p6, path


def test_spectrum_examples():
    assert np.allclose(spectrum(path(2)).values, [1, -1])
    assert np.allclose(spectrum(cycle(4)).values, [2, 0, 0, -2], atol=1e-12)
    assert np.allclose(spectrum(cycle(6)).values, [2, 1, 1, -1, -1, -2])
    assert energy_spectral(path(2)) == pytest.approx(2)
    assert energy_spectral(cycle(4)) == pytest.approx(4)
    assert energy_spectral(cycle(6)) == pytest.approx(8)


def test_spectrum_invariants_on_corpus(graph_corpus):
    for g in graph_corpus:
        sp = spectrum(g)
        assert len(sp) == g.n
        assert list(sp.values) == sorted(sp.values, reverse=True)
        res = sp.check(g, bipartite=bool(is_bipartite(g)))
        assert res["trace"] <= g.n * sp.abs_tol
        assert res["frobenius"] <= g.n * sp.abs_tol
        assert res.get("symmetry", 0.0) <= sp.abs_tol


def test_spectrum_tolerance_contract():
    with pytest.raises(ValueError):
        spectrum(cycle(5), abs_tol=1e-15)
    with pytest.raises(NumericalFailure):
        spectrum(cycle(400), abs_tol=1e-13)


@pytest.mark.parametrize("n", [3, 4, 6, 18, 57, 128, 400])
def test_cycle_reference(n):
    assert abs(energy_spectral(cycle(n)) - energy_cycle_reference(n)) <= 1e-9


def test_cycle_reference_small_values():
    assert energy_cycle_reference(4) == pytest.approx(4)
    assert energy_cycle_reference(6) == pytest.approx(8)


def test_coulson_examples():
    r = coulson_diff(charpoly_cycle(10), charpoly_cycle(10))
    assert r.converged and abs(r.value) < 1e-12
    r = coulson_diff(charpoly_cycle(18), charpoly_p6(18))
    assert abs(r.value - -0.03752) < 5e-4
    r = coulson_diff(charpoly_cycle(17), charpoly_p6(17))
    assert abs(r.value - -0.00961) < 5e-4


def test_coulson_preconditions():
    with pytest.raises(ValueError):
        coulson_diff(charpoly_cycle(10), charpoly_cycle(12))
    with pytest.raises(ValueError):
        coulson_diff(Poly((0, 2)), Poly((0, 1)))


@given(st.integers(7, 40))
def test_coulson_antisymmetry(n):
    a, b = charpoly_cycle(n), charpoly_p6(n)
    tol = 1e-8
    assert abs(coulson_diff(a, b, tol).value + coulson_diff(b, a, tol).value) <= 2 * tol


@pytest.mark.parametrize("n", [5, 9, 12, 20])
def test_integrand_evenness(n):
    xs = np.logspace(-4, 3, 200)
    assert integrand_evenness(charpoly_cycle(n), charpoly_p6(max(n, 7)) if n >= 7 else charpoly_cycle(n), xs) == 0.0


def test_coulson_energy_singular_and_odd():
    for g in (cycle(4), cycle(12), cycle(7), p6(9), path(5)):
        r = coulson_energy(charpoly(g))
        assert r.converged and abs(r.value - energy_spectral(g)) < 1e-7


def test_compare_examples():
    c = compare_energies("cycle:19", "p6:19")
    assert c.verdict == "negative" and abs(c.coulson_diff - -0.02290) < 5e-4
    assert c.method_gap < 1e-9
    assert compare_energies("cycle:10", "p6:10").verdict == "positive"
    z = compare_energies("cycle:6", "cycle:6")
    assert z.difference == 0 and z.verdict == "zero"
    with pytest.raises(GraphError):
        compare_energies("cycle:10", "p6:11")
    with pytest.raises(ValueError):
        compare_energies("cycle:10", "p6:10", method="guess")


def test_compare_large_uses_closed_form():
    c = compare_energies("cycle:101", "p6:101")
    assert c.method == "coulson-closed-form" and c.energy_a is None and c.verdict == "negative"
    back = compare_energies("p6:101", "cycle:101")
    assert back.difference == -c.difference
    both = compare_energies("cycle:70", "p6:70", method="both")
    assert both.method == "spectral+coulson-closed-form" and both.method_gap < 1e-9


def test_sign_word():
    assert sign_word(1e-12) == "zero" and sign_word(-0.1) == "negative" and sign_word(0.2) == "positive"


def test_to_dict_round_trip():
    c = compare_energies("cycle:8", "p6:8")
    d = c.to_dict()
    assert d["n"] == 8 and math.isclose(d["difference"], c.difference)
