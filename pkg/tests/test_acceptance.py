"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Scales and tolerances come from configs/acceptance.ini so the runs are
self-describing; run with ``pytest -s tests/test_acceptance.py`` to see the
per-criterion lines.
"""

import math
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

import synclab as sl
from synclab import measures as ms
from synclab.config import load_config

_CFG = load_config(Path(__file__).resolve().parent.parent / "configs" / "acceptance.ini")
ACC = _CFG.section("acceptance")
SEED = _CFG.get("common", "seed")
C1 = _CFG.get("common", "c1")
C2 = _CFG.get("common", "c2")

GRID = [(c2, k) for c2 in ACC["c2_grid"] for k in ACC["k_grid"]]


@contextmanager
def criterion(num, name):
    t0 = time.time()
    try:
        yield
    except Exception:
        print(f"criterion {num:2d} [{name}]: FAIL ({time.time() - t0:.1f}s)")
        raise
    print(f"criterion {num:2d} [{name}]: PASS ({time.time() - t0:.1f}s)")


def rng_for(*key):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((SEED,) + key)))


@pytest.fixture(scope="module")
def ops1024(h1024):
    return {(c2, k): sl.build_ulam(sl.QuadraticMap(c2), h1024, k, ACC["uniq_bins"], 8)
            for c2, k in GRID}


@pytest.fixture(scope="module")
def fixed_densities(ops1024):
    return {key: sl.stationary_density(op, sl.DensityOnI.uniform(op.n_bins),
                                       tol=1e-12)[0]
            for key, op in ops1024.items()}


def test_criterion_01_full_coupling_collapse(h1024):
    with criterion(1, "k=1 collapse"):
        n = ACC["k1_bins"]
        tol = ACC["k1_l1_tol"]
        op = sl.build_ulam(sl.QuadraticMap(C2), h1024, 1.0, n, 8)
        row_gap = np.abs(op.matrix - h1024.weights[None, :]).sum(axis=1).max()
        assert row_gap <= tol
        one_step = op.apply(sl.DensityOnI.uniform(n))
        assert np.abs(one_step.weights - h1024.weights).sum() <= tol
        g, iters = sl.stationary_density(op, sl.DensityOnI.uniform(n))
        assert np.abs(g.weights - h1024.weights).sum() <= tol
        assert iters <= 2


def test_criterion_02_uniqueness(ops1024, fixed_densities):
    with criterion(2, "uniqueness of the fixed density"):
        for idx, key in enumerate(GRID):
            op = ops1024[key]
            rng = rng_for(2, idx)
            outs = []
            for _ in range(5):
                w = rng.random(op.n_bins)
                g, _ = sl.stationary_density(op, sl.DensityOnI(w / w.sum()),
                                             tol=1e-10)
                outs.append(g.weights)
            for i in range(5):
                for j in range(i + 1, 5):
                    assert np.abs(outs[i] - outs[j]).sum() <= ACC["uniq_l1_tol"], key
            fit = sl.empirical_rate(op, sl.DensityOnI.uniform(op.n_bins),
                                    fixed_densities[key])
            assert fit.r2 >= ACC["uniq_r2_min"], key


def test_criterion_03_drift_certificate(h1024):
    with criterion(3, "drift certificate"):
        grid = np.linspace(-0.999, 0.999, ACC["drift_grid_points"])
        for c2, k in GRID:
            cert = sl.drift_certificate(sl.QuadraticMap(c2), h1024, k, grid,
                                        ACC["drift_quad_tol"])
            assert cert.valid, (c2, k, cert.max_rel_residual)
        assert sl.drift_gamma(0.5, ACC["gamma_hi_k"]) < ACC["gamma_hi_max"]
        assert sl.drift_gamma(0.5, ACC["gamma_lo_k"]) > ACC["gamma_lo_min"]


def test_criterion_04_iterated_drift_bound(h1024):
    with criterion(4, "iterated drift bound (Monte Carlo)"):
        rep = sl.drift_mc_check(sl.QuadraticMap(0.5), h1024, 0.5,
                                ACC["mc_y0"], ACC["mc_n"], ACC["mc_reps"],
                                seed=SEED)
        assert rep.passed, rep.max_excess


def test_criterion_05_rate_dominance(ops1024, fixed_densities, h1024):
    with criterion(5, "certificate rate dominance"):
        for key in GRID:
            c2, k = key
            fit = sl.empirical_rate(ops1024[key], sl.DensityOnI.uniform(1024),
                                    fixed_densities[key])
            cert = sl.minorization_certificate(sl.QuadraticMap(c2), h1024, k)
            assert k < cert.k_star
            assert 0.0 < fit.rate < 1.0, key
            assert 0.0 < cert.rate_bound < 1.0, key
            assert fit.rate <= cert.rate_bound, key
            if cert.rate_bound - fit.rate < 1e-12:
                print(f"  note: rate and bound within 1e-12 at {key}")
        # weighted-distance sandwich on random interior pairs
        rng = rng_for(5)
        for trial in range(ACC["sandwich_pairs"]):
            w = np.zeros((2, 128))
            w[:, 8:-8] = rng.random((2, 112))
            a = sl.DensityOnI(w[0] / w[0].sum())
            b = sl.DensityOnI(w[1] / w[1].sum())
            beta = float(10.0 ** rng.uniform(-4, 4))
            d1 = sl.weighted_tv(a, b, 0.5, 0.5, 1.0)
            db = sl.weighted_tv(a, b, 0.5, 0.5, beta)
            tol = ACC["sandwich_tol"]
            assert min(beta, 1.0) * d1 <= db + tol
            assert db <= max(beta, 1.0) * d1 + tol


def test_criterion_06_k_star_case_table():
    with criterion(6, "coupling threshold case table"):
        cases = [
            # (a0, b0, c2, branch, hand-evaluated raw value)
            (0.5, 0.8, 0.3, "a0>c2", (1 - 0.3) / (0.5 - 0.3)),
            (0.6, 0.9, 0.2, "a0>c2", (1 - 0.2) / (0.6 - 0.2)),
            (-0.8, -0.5, 0.3, "b0<-c2", (1 - 0.3) / abs(-0.5 + 0.3)),
            (-0.9, -0.4, 0.2, "b0<-c2", (1 - 0.2) / abs(-0.4 + 0.2)),
            (-0.5, 0.5, 0.3, "interior", 1.0),
            (-0.2, 0.9, 0.7, "interior", 1.0),
        ]
        for a0, b0, c2, branch, raw in cases:
            r = sl.doeblin_k_threshold(a0, b0, c2)
            assert r.branch == branch
            assert r.raw == pytest.approx(raw, abs=1e-14)
            assert r.k_star == min(max(raw, 1.0), 1.0) == 1.0


def test_criterion_07_weak_limits():
    with criterion(7, "weak limits of the joint measure"):
        n, bins = ACC["wl_n"], ACC["wl_bins"]
        # strong coupling: concentration on the diagonal
        t1 = sl.QuadraticMap(C1)
        o = sl.simulate_coupled(t1, sl.QuadraticMap(C2), 0.99, 0.1, -0.2, n)
        mu_n, _, rho = sl.empirical_measures(o, bins)
        assert ms.mean_abs_diff(rho) <= ACC["wl_mad_max"]
        assert ms.char_function_gap(rho, mu_n) <= ACC["wl_char_max"]
        # weak coupling with an ergodic slave map: product structure
        o0 = sl.simulate_coupled(t1, sl.QuadraticMap(1.0), 0.01, 0.1, -0.2, n)
        mu0, nu0, rho0 = sl.empirical_measures(o0, bins)
        gap = ms.hist2d_l1(rho0, ms.product_measure(mu0, nu0))
        assert gap <= ACC["wl_prod_l1_max"]


def test_criterion_08_question3_negative(h128):
    with criterion(8, "TV stays away from zero at strong coupling"):
        t1, t2 = sl.QuadraticMap(C1), sl.QuadraticMap(C2)
        tvs = []
        for k in (0.90, 0.925, 0.95, 0.975, 0.99):
            o = sl.simulate_coupled(t1, t2, k, 0.1, -0.2, ACC["q3_n"])
            nu_hist = sl.DensityOnI.from_samples(o.ys, ACC["loop_bins"])
            op = sl.build_ulam(t2, h128, k, ACC["loop_bins"], 8)
            g, _ = sl.stationary_density(op, sl.DensityOnI.uniform(ACC["loop_bins"]),
                                         tol=1e-12)
            tvs.append(ms.tv_distance(nu_hist, g))
        assert min(tvs) >= ACC["q3_tv_floor"], tvs
        assert tvs[-1] >= ACC["q3_decay_floor"], tvs


def test_criterion_09_dimension_estimator():
    with criterion(9, "dimension spectrum estimator"):
        n = ACC["dq_n"]
        pts = rng_for(9, 0).uniform(-1.0, 1.0, n)
        s = sl.dq_estimate(pts)
        assert np.abs(s.d_values - 1.0).max() <= ACC["dq_uniform_tol"]
        atom = np.full(n, 0.25)
        sa = sl.dq_estimate(atom)
        assert np.abs(sa.d_values).max() <= ACC["dq_atom_tol"]
        o = sl.simulate_coupled(sl.QuadraticMap(C1), sl.QuadraticMap(C2),
                                1.0, 0.1, -0.2, n)
        deltas = sl.delta_dq(sl.dq_estimate(o.xs), sl.dq_estimate(o.ys))
        assert max(d for _, d in deltas) <= ACC["dq_sync_tol"]


def test_criterion_10_lyapunov_oracle():
    with criterion(10, "transverse Lyapunov oracle"):
        o = sl.simulate_coupled(sl.QuadraticMap(C1), sl.QuadraticMap(1.0),
                                0.0, 0.1, 0.3, ACC["lyap_n"])
        lam = sl.transverse_lyapunov(o)
        assert abs(lam.value - math.log(2.0)) <= ACC["lyap_tol"]
        # doubling conjugacy: the full-map orbit of -cos(theta) is
        # -cos(2^n theta)
        nmax = ACC["conj_nmax"]
        for theta in (1.0, 0.7, 2.3):
            s = sl.orbit(sl.QuadraticMap(1.0), -math.cos(theta), nmax + 1)
            exact = np.array([-math.cos(2.0**j * theta) for j in range(nmax + 1)])
            assert np.abs(s - exact).max() <= ACC["conj_tol"]


def test_criterion_11_simulation_operator_loop(h128):
    with criterion(11, "chain/operator consistency loop"):
        bins, n = ACC["loop_bins"], ACC["loop_n"]
        for idx, (c2, k) in enumerate(GRID):
            t2 = sl.QuadraticMap(c2)
            op = sl.build_ulam(t2, h128, k, bins, 8)
            g, _ = sl.stationary_density(op, sl.DensityOnI.uniform(bins),
                                         tol=1e-12)
            path = sl.simulate_chain(t2, h128, k, 0.1, n,
                                     seed=SEED + idx)
            hist = sl.DensityOnI.from_samples(path.ys, bins)
            assert ms.l1_distance(hist, g) <= ACC["loop_l1_tol"], (c2, k)
