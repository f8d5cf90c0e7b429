import cmath
import math

import numpy as np
import pytest

from conftest import EQUIMODULAR_ENDPOINTS
from oracles import dense_transfer_matrix
from hexlat import eigen, exact
from hexlat.states import enumerate_states, lucas, translate


def test_action_matches_explicit_matrix():
    for lh in (3, 5, 6):
        idx = enumerate_states(lh)
        z = 0.7 - 0.4j
        T = dense_transfer_matrix(lh, z)
        d = np.array([z ** (int(s).bit_count() / 2) for s in idx.states])
        ref = d[:, None] * T / d[None, :]
        act = eigen.MatrixAction(lh, z)
        got = act(np.eye(idx.count, dtype=complex))
        assert np.abs(got - ref).max() < 1e-12


def test_action_dimension_check():
    act = eigen.MatrixAction(6, 1.0)
    with pytest.raises(ValueError):
        act(np.ones(5, dtype=complex))
    with pytest.raises(ValueError):
        eigen.MatrixAction(6, 1.0, sector="weird")


def test_zero_fugacity_fixpoint():
    act = eigen.MatrixAction(5, 0.0)
    v = np.zeros(act.dim, dtype=complex)
    v[0] = 1.0
    assert np.abs(act(v) - v).max() == 0.0


def test_leading_eigenvalues_match_dense_76_dim():
    es = eigen.leading_eigenvalues(1.0, 9, "full", k=4, want_vectors=True)
    T = dense_transfer_matrix(9, 1.0)
    ref = np.sort(np.abs(np.linalg.eigvals(T)))[::-1][:4]
    assert np.allclose(np.abs(es.eigenvalues), ref, rtol=1e-10)
    # eigenvector residual
    act = eigen.MatrixAction(9, 1.0)
    for i in range(4):
        v = es.eigenvectors[:, i]
        lam = es.eigenvalues[i]
        assert np.linalg.norm(act(v) - lam * v) < 1e-8 * abs(lam)


def test_perron_frobenius_positive_fugacity():
    es = eigen.leading_eigenvalues(2.5, 9, "full", k=3)
    top = es.eigenvalues[0]
    assert abs(top.imag) < 1e-10 * abs(top)
    assert top.real > 0


def test_arnoldi_agrees_with_dense_at_random_points():
    rng = np.random.default_rng(8)
    for _ in range(6):
        z = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
        dense = eigen.leading_eigenvalues(z, 9, "full", k=4).eigenvalues
        arn = eigen.leading_eigenvalues(z, 9, "full", k=4, krylov=40,
                                        max_restarts=12)
        # force the Arnoldi path by bypassing the dense shortcut
        action = eigen.MatrixAction(9, z)
        saved = eigen.DENSE_LIMIT
        try:
            eigen.DENSE_LIMIT = 10
            arn = eigen.leading_eigenvalues(z, 9, "full", k=4)
        finally:
            eigen.DENSE_LIMIT = saved
        assert np.allclose(np.abs(arn.eigenvalues), np.abs(dense), rtol=1e-8)


def test_reduced_sector_contained_in_full_spectrum():
    rng = np.random.default_rng(4)
    for lh in (9, 12):
        T = dense_transfer_matrix(lh, 0)
        for _ in range(3):
            z = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
            red = eigen.leading_eigenvalues(z, lh, "p0", k=5).eigenvalues
            full = np.linalg.eigvals(dense_transfer_matrix(lh, z))
            for r in red:
                assert min(abs(r - f) for f in full) < 1e-9 * max(1, abs(r))


def test_conjugation_symmetry_of_spectrum():
    z = 1.5 + 0.7j
    up = eigen.leading_eigenvalues(z, 9, "full", k=5).eigenvalues
    dn = eigen.leading_eigenvalues(z.conjugate(), 9, "full", k=5).eigenvalues
    assert np.allclose(sorted(np.abs(up)), sorted(np.abs(dn)), rtol=1e-10)


def test_momentum_labels():
    idx = enumerate_states(6)
    v = np.ones(idx.count, dtype=complex)
    assert eigen.momentum_label(v, 6) == 0.0
    # momentum eigenvector built on a translation orbit
    s0 = int(idx.states[1])
    orbit = [translate(s0, 6, m) for m in range(6)]
    v = np.zeros(idx.count, dtype=complex)
    P = 2 * math.pi / 3
    for m, s in enumerate(orbit):
        v[idx.index(s)] = cmath.exp(-1j * P * m)
    assert eigen.momentum_label(v, 6) == pytest.approx(P)


def test_momentum_rejects_zero_vector():
    with pytest.raises(ValueError):
        eigen.momentum_label(np.zeros(18, dtype=complex), 6)


def test_high_density_top_momenta():
    # deep in the ordered phase the three leading eigenvalues carry
    # momenta 0 and +-2pi/3
    es = eigen.leading_eigenvalues(40.0, 6, "full", k=3, want_vectors=True)
    labels = sorted(round(eigen.momentum_label(es.eigenvectors[:, i], 6), 4)
                    for i in range(3))
    third = round(2 * math.pi / 3, 4)
    assert labels == sorted([0.0, third, -third])


def test_growth_rate_approaches_low_density_branch():
    kappa = exact.kappa_minus(1.0).value.real
    es = eigen.leading_eigenvalues(1.0, 18, "p0", k=1)
    rate = abs(es.eigenvalues[0]) ** (1 / 18)
    assert rate == pytest.approx(kappa, abs=1e-3)


def test_axis_endpoint_and_ratio_table_row_12():
    x, ratio = eigen.axis_endpoint(12, "p0")
    ref = EQUIMODULAR_ENDPOINTS[12]
    assert x == pytest.approx(ref["zd"], abs=1e-7)
    assert ratio == pytest.approx(ref["ratio_zd"], abs=2e-5)


def test_trace_walks_the_axis_pair_segment():
    # from z0 = -1 the conjugate-pair crossing runs along the negative axis;
    # the walk must stay equimodular and step by at most 2 eps
    curve = eigen.trace_equimodular(6, "p0", z0=-1.0, eps=0.02,
                                    max_points=40)
    assert len(curve.points) > 10
    prev = complex(-1.0)
    for p in curve.points:
        assert abs(p.mods[0] - p.mods[1]) <= 1e-6 * p.mods[0]
        assert abs(p.z - prev) <= 2 * 0.02 + 1e-12
        prev = p.z


def test_collision_refine_finds_arc_endpoint_12():
    z, ratio, defect = eigen.arc_endpoint(12, "p0")
    ref = EQUIMODULAR_ENDPOINTS[12]["zc"]
    # reference values are truncated to four decimals, not rounded
    assert z.real == pytest.approx(ref.real, abs=1.2e-4)
    assert abs(z.imag) == pytest.approx(ref.imag, abs=1.2e-4)
    assert defect < 1e-6
