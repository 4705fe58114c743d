import math
from fractions import Fraction

import numpy as np
import pytest

from prokit.bits import BitSource
from prokit.errors import NonConvergence, SizeExceedsCap
from prokit.expander import MGG_LAMBDA, TableGraph, complete_graph, contract, cycle_graph, mgg, power
from prokit.spectral import (cheeger_check, dense_stochastic, edge_expansion, eigenvalues_sym,
                             format_report, lambda_2, lambda_a, quadratic_form_check, spectrum)


def test_dense_stochastic_examples():
    assert dense_stochastic(mgg(1)).matrix.tolist() == [[1.0]]
    C = dense_stochastic(cycle_graph(4)).matrix
    assert C[0].tolist() == [0, 0.5, 0, 0.5]
    D = dense_stochastic(mgg(3, variant="margulis"))
    row = D.matrix[1 * 3 + 2]
    assert {i: row[i] for i in np.flatnonzero(row)} == {8: 0.25, 2: 0.25, 3: 0.25, 4: 0.25}
    assert D.rows_are_stochastic()


def test_dense_cap():
    with pytest.raises(SizeExceedsCap):
        dense_stochastic(mgg(23))


def test_eigenvalues_examples():
    assert eigenvalues_sym(np.eye(3)) == [1, 1, 1]
    assert eigenvalues_sym(dense_stochastic(cycle_graph(4))) == pytest.approx([1, 0, 0, -1], abs=1e-12)
    assert spectrum(complete_graph(4)) == pytest.approx([1, -1 / 3, -1 / 3, -1 / 3], abs=1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_eigenvalues_match_numpy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 40))
    A = rng.normal(size=(n, n))
    A = A + A.T
    ours = eigenvalues_sym(A)
    assert ours == pytest.approx(sorted(np.linalg.eigvalsh(A), reverse=True), abs=1e-9)


def test_eigenvalues_reject_asymmetric():
    with pytest.raises(ValueError):
        eigenvalues_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_nonconvergence_is_reported():
    A = np.array([[1.0, 0.5], [0.5, 2.0]])
    with pytest.raises(NonConvergence):
        eigenvalues_sym(A, max_sweeps=0)


@pytest.mark.parametrize("G, la, l2", [(cycle_graph(4), 1, 0), (complete_graph(4), 1 / 3, -1 / 3)])
def test_lambdas(G, la, l2):
    assert lambda_a(G) == pytest.approx(la, abs=1e-12)
    assert lambda_2(G) == pytest.approx(l2, abs=1e-12)


def test_single_vertex_lambda():
    assert lambda_a(mgg(1)) == pytest.approx(0, abs=1e-15)
    with pytest.raises(ValueError):
        lambda_2(mgg(1))


def test_lambda_a_with_repeated_unit_eigenvalue():
    # two disjoint triangles: eigenvalue 1 twice, so lambda_a = 1
    G = TableGraph([(1, 2), (2, 0), (0, 1), (4, 5), (5, 3), (3, 4)])
    assert lambda_a(G) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("G", [mgg(3), mgg(5), contract(mgg(3), 6), cycle_graph(7), complete_graph(5)])
def test_deflation_agrees_with_spectrum(G):
    eig = spectrum(G)
    assert eig[0] == pytest.approx(1, abs=1e-9)
    assert all(-1 - 1e-9 <= e <= 1 + 1e-9 for e in eig)
    assert lambda_a(G) == pytest.approx(max(abs(eig[1]), abs(eig[-1])), abs=1e-9)


@pytest.mark.parametrize("s", range(2, 13))
def test_mgg_certificate(s):
    assert lambda_a(mgg(s)) <= MGG_LAMBDA + 1e-9


def test_margulis_variant_exceeds_bound():
    # the shift/shear slot set carries no 5*sqrt(2)/8 guarantee; s = 12 is the first miss
    assert lambda_a(mgg(11, variant="margulis")) <= MGG_LAMBDA
    assert lambda_a(mgg(12, variant="margulis")) > MGG_LAMBDA + 1e-3


def test_power_identity():
    G = contract(mgg(3), 7)
    assert lambda_a(power(G, 3)) == pytest.approx(lambda_a(G) ** 3, abs=1e-9)


@pytest.mark.parametrize("G, h", [(TableGraph([(1,), (0,)]), 1), (cycle_graph(4), 1),
                                  (cycle_graph(6), Fraction(2, 3)), (complete_graph(4), 2)])
def test_edge_expansion(G, h):
    assert edge_expansion(G) == h


def test_edge_expansion_ignores_loops():
    G = TableGraph([(1, 0), (0, 1)])
    assert edge_expansion(G) == 1


def test_edge_expansion_cap():
    with pytest.raises(SizeExceedsCap):
        edge_expansion(cycle_graph(21))


def test_cheeger_examples():
    r = cheeger_check(cycle_graph(4))
    assert (r.lhs, r.h, r.passed) == (pytest.approx(1), 1, True)
    assert r.rhs == pytest.approx(2 * math.sqrt(2))
    r = cheeger_check(complete_graph(4))
    assert (r.lhs, r.h, r.passed) == (pytest.approx(2), 2, True)
    assert r.rhs == pytest.approx(3 * math.sqrt(8 / 3))
    assert cheeger_check(contract(cycle_graph(4), 2)).passed


def test_quadratic_form():
    r = quadratic_form_check(mgg(3), 1000, BitSource(0))
    assert r.passed and r.worst_general <= 1e-9 and r.worst_orthogonal <= 1e-9


def test_quadratic_form_equality_at_stationary_vector():
    G = mgg(4)
    A, la = dense_stochastic(G).matrix, lambda_a(G)
    u = np.full(16, 0.25)
    assert abs(u @ A @ u) == pytest.approx(la + (1 - la) * (u @ u) ** 2)


def test_format_report():
    assert format_report([("h", Fraction(2, 3)), ("x", 1 / 3), ("ok", True)]) == [
        "h\t2/3", "x\t0.333333333333", "ok\tPASS"]
