"""Command-line experiment runner.

One subcommand per experiment family: simulate | stationary | certify |
weaklimit | question3 | dimension | ulam-dump. Each run writes manifest.json
(resolved config + content hash) before computing, then CSV files whose
comment headers carry the tool version, the manifest hash, and the column
names. Runs with equal manifests produce byte-identical outputs.

Exit codes: 0 success, 2 config error, 3 convergence error, 4 out of regime.

Operator dump layout (``ulam-dump``): the first line is
``# ulam v1 n_bins=<n> k=<k> c2=<c2> h=<hash>`` with ``h`` the 16-hex-digit
provenance hash of the noise density; the following '#' lines are the
standard file header; every subsequent line is one operator row as
comma-separated entries (row-major, ``n_bins`` lines of ``n_bins`` values).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import dimension as dim
from . import dynamics, measures, operator
from .config import (TOOL_VERSION, ExperimentConfig, load_config,
                     write_manifest)
from .errors import (ConfigError, ConvergenceError, OutOfRegimeError,
                     RateFitError, SynclabError)
from .maps import (DensityOnI, QuadraticMap, bin_centers, invariant_density,
                   ulam_matrix)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _write_csv(path: Path, columns, rows, manifest_hash: str, preamble=()):
    with open(path, "w", encoding="utf-8") as fh:
        for line in preamble:
            fh.write(line + "\n")
        fh.write(f"# {_tool_line()}\n")
        fh.write(f"# manifest {manifest_hash}\n")
        fh.write("# columns: " + ",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _tool_line() -> str:
    return f"synclab v{TOOL_VERSION}"


def _write_report(path: Path, manifest_hash: str, items):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {_tool_line()}\n")
        fh.write(f"# manifest {manifest_hash}\n")
        for key, v in items:
            fh.write(f"{key} = {_fmt(v)}\n")


def _subseeds(master: int, n: int):
    return [int(s) for s in
            np.random.SeedSequence(master).generate_state(n, np.uint64)]


def _master_density(cfg: ExperimentConfig, n_bins: int, seed: int) -> DensityOnI:
    common = cfg.section("common")
    t1 = QuadraticMap(common["c1"])
    return invariant_density(t1, common["h_provider"], n_bins,
                             common["h_budget"], seed=seed)


# ---------------------------------------------------------------------------
# subcommands

def cmd_simulate(cfg: ExperimentConfig, out: Path, mh: str):
    common, sec = cfg.section("common"), cfg.section("simulate")
    t1, t2 = QuadraticMap(common["c1"]), QuadraticMap(common["c2"])
    o = dynamics.simulate_coupled(t1, t2, sec["k"], sec["x0"], sec["y0"], sec["n"])

    stride = sec["orbit_stride"]
    _write_csv(out / "orbit.csv", ("i", "x", "y"),
               ((i, o.xs[i], o.ys[i]) for i in range(0, o.n, stride)), mh)

    trace = dynamics.transverse_lyapunov_trace(o, clip=sec["lyap_clip"])
    clipped = np.cumsum(np.abs(4.0 * o.c2 * o.ys) < sec["lyap_clip"])
    tstride = sec["trace_stride"]
    idx = list(range(0, o.n, tstride))
    if idx[-1] != o.n - 1:
        idx.append(o.n - 1)
    _write_csv(out / "lambda_trace.csv", ("n", "lambda_tilde", "clipped_count"),
               ((i + 1, trace[i], int(clipped[i])) for i in idx), mh)

    lam = dynamics.transverse_lyapunov(o, clip=sec["lyap_clip"])
    tail = min(sec["sync_tail"], o.n)
    _write_report(out / "summary.txt", mh, [
        ("k", o.k), ("c1", o.c1), ("c2", o.c2), ("n", o.n),
        ("sync_error_tail", tail),
        ("sync_error", dynamics.sync_error(o, tail)),
        ("lambda_tilde", lam.value), ("lambda_clipped", lam.clipped),
    ])


def _initial_density(kind: str, n_bins: int, seed: int) -> DensityOnI:
    if kind == "uniform":
        return DensityOnI.uniform(n_bins)
    if kind == "point":
        return DensityOnI.point_mass(n_bins, n_bins // 2)
    rng = np.random.Generator(np.random.PCG64(seed))
    w = rng.random(n_bins)
    return DensityOnI(w / w.sum())


def cmd_stationary(cfg: ExperimentConfig, out: Path, mh: str):
    common, sec = cfg.section("common"), cfg.section("stationary")
    n_bins = common["n_bins"]
    seeds = _subseeds(common["seed"], 2)
    h = _master_density(cfg, n_bins, seeds[0])
    t2 = QuadraticMap(common["c2"])
    op = operator.build_ulam(t2, h, sec["k"], n_bins, sec["samples_per_bin"])
    f0 = _initial_density(sec["f0"], n_bins, seeds[1])
    g, iters = operator.stationary_density(op, f0, sec["max_iter"], sec["tol"])

    centers = bin_centers(n_bins)
    _write_csv(out / "g_density.csv", ("bin_center", "density"),
               zip(centers, g.density_values()), mh)
    _write_csv(out / "h_density.csv", ("bin_center", "density"),
               zip(centers, h.density_values()), mh)

    report = [("k", sec["k"]), ("n_bins", n_bins), ("iterations", iters),
              ("f0", sec["f0"])]
    member, value = operator.explicit_rate_membership(f0, t2.c, sec["k"]) \
        if 0.0 < sec["k"] < 1.0 and 0.0 < t2.c < 1.0 else (True, float("nan"))
    report += [("f0_explicit_rate_class", member), ("f0_drift_integral", value)]
    try:
        fit = operator.empirical_rate(op, f0, g, sec["rate_steps"])
        distances = fit.distances
        report += [("fitted_rate", fit.rate), ("fit_r2", fit.r2),
                   ("fit_window_start", fit.window_start),
                   ("fit_window_stop", fit.window_stop)]
    except RateFitError as exc:
        distances = exc.distances
        report += [("fitted_rate", f"unavailable ({exc.reason})")]
    _write_csv(out / "convergence.csv", ("n", "l1_distance"),
               enumerate(distances), mh)
    _write_report(out / "report.txt", mh, report)


def cmd_certify(cfg: ExperimentConfig, out: Path, mh: str):
    common, sec = cfg.section("common"), cfg.section("certify")
    seeds = _subseeds(common["seed"], 3)
    h = _master_density(cfg, common["h_bins"], seeds[0])
    t2 = QuadraticMap(common["c2"])
    k = sec["k"]

    grid = np.linspace(-0.999, 0.999, sec["grid_points"])
    drift = operator.drift_certificate(t2, h, k, grid, sec["quad_tol"])
    _write_csv(out / "residuals.csv", ("y", "lhs", "rhs", "residual"),
               zip(drift.y_grid, drift.lhs, drift.rhs, drift.residuals), mh)

    mc = operator.drift_mc_check(t2, h, k, sec["mc_y0"], sec["mc_n"],
                                 sec["mc_reps"], seeds[1])
    _write_csv(out / "drift_mc.csv", ("n", "mc_mean", "se", "bound"),
               zip(mc.ns, mc.means, mc.ses, mc.bounds), mh)

    # stability diagnostics for the chosen master density: how close it is
    # to invariant under its own transfer matrix, and how far from a fresh
    # long-orbit histogram
    t1 = QuadraticMap(common["c1"])
    P1 = ulam_matrix(t1, h.n_bins)
    h_resid = float(np.abs(h.weights @ P1 - h.weights).sum())
    alt = invariant_density(t1, "orbit-histogram", h.n_bins,
                            max(common["h_budget"], 100_000), seed=seeds[2])
    h_cross = float(np.abs(alt.weights - h.weights).sum())

    report = [("k", k), ("c1", common["c1"]), ("c2", common["c2"]),
              ("h_pushforward_residual", h_resid),
              ("h_orbit_histogram_gap", h_cross),
              ("gamma_k", drift.gamma_k), ("K_k", drift.K_k),
              ("max_rel_residual", drift.max_rel_residual),
              ("drift_valid", drift.valid),
              ("mc_passed", mc.passed), ("mc_max_excess", mc.max_excess)]
    try:
        cert = operator.minorization_certificate(
            t2, h, k, sec["margin"], sec["alpha_bar_frac"], sec["r_frac"])
        report += [("a0", cert.a0), ("b0", cert.b0), ("alpha_k", cert.alpha_k),
                   ("k_star", cert.k_star), ("k_star_branch", cert.k_star_branch),
                   ("k_star_raw", cert.k_star_raw), ("R", cert.R),
                   ("alpha_bar", cert.alpha_bar),
                   ("small_set_radius", operator.sublevel_radius(t2.c, k, cert.R)),
                   ("rate_bound", cert.rate_bound),
                   ("rate_bound_min", cert.rate_bound_min),
                   ("alpha_bar_opt", cert.alpha_bar_opt), ("R_opt", cert.R_opt),
                   ("nu_tilde_mass", cert.nu_tilde_masses.sum())]
        _write_csv(out / "nu_tilde.csv", ("bin_center", "inf_mass"),
                   zip(bin_centers(h.n_bins), cert.nu_tilde_masses), mh)
    except OutOfRegimeError as exc:
        report += [("minorization", f"out-of-regime (k_star = {exc.k_star})")]
    _write_report(out / "certificate.txt", mh, report)


def _weaklimit_row(common, wl, k, seed):
    t1, t2 = QuadraticMap(common["c1"]), QuadraticMap(common["c2"])
    o = dynamics.simulate_coupled(t1, t2, k, wl["x0"], wl["y0"], wl["n"])
    mu_n, nu_n, rho = dynamics.empirical_measures(o, wl["n_bins2d"])
    nubar = invariant_density(t2, "orbit-histogram", wl["n_bins2d"],
                              wl["nubar_budget"], seed=seed)
    return (k,
            measures.mean_abs_diff(rho),
            measures.char_function_gap(rho, mu_n),
            measures.hist2d_l1(rho, measures.product_measure(mu_n, nu_n)),
            measures.hist2d_l1(rho, measures.product_measure(mu_n, nubar)))


def cmd_weaklimit(cfg: ExperimentConfig, out: Path, mh: str, threads: int = 1):
    common, wl = cfg.section("common"), cfg.section("weaklimit")
    ks = wl["k_list"]
    seeds = _subseeds(common["seed"], len(ks))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(lambda a: _weaklimit_row(common, wl, *a),
                             zip(ks, seeds)))
    _write_csv(out / "weaklimit.csv",
               ("k", "mean_abs_diff", "char_gap",
                "l1_vs_product_marginals", "l1_vs_product_nubar"),
               rows, mh)


def cmd_question3(cfg: ExperimentConfig, out: Path, mh: str, threads: int = 1):
    common, q3 = cfg.section("common"), cfg.section("question3")
    n_bins = common["n_bins"]
    seeds = _subseeds(common["seed"], 1)
    h = _master_density(cfg, n_bins, seeds[0])
    t1, t2 = QuadraticMap(common["c1"]), QuadraticMap(common["c2"])

    def row(k):
        o = dynamics.simulate_coupled(t1, t2, k, q3["x0"], q3["y0"], q3["n"])
        nu_hist = DensityOnI.from_samples(o.ys, n_bins)
        op = operator.build_ulam(t2, h, k, n_bins, q3["samples_per_bin"])
        g, _ = operator.stationary_density(op, DensityOnI.uniform(n_bins),
                                           q3["max_iter"], q3["tol"])
        return (k, measures.tv_distance(nu_hist, g))

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(row, q3["k_list"]))
    _write_csv(out / "question3.csv", ("k", "tv"), rows, mh)
    tvs = [tv for _, tv in rows]
    _write_report(out / "report.txt", mh, [
        ("min_tv", min(tvs)), ("tv_floor", q3["tv_floor"]),
        ("floor_holds", min(tvs) >= q3["tv_floor"]),
        ("last_tv", tvs[-1]),
    ])


def cmd_dimension(cfg: ExperimentConfig, out: Path, mh: str, threads: int = 1):
    common, dm = cfg.section("common"), cfg.section("dimension")
    t1, t2 = QuadraticMap(common["c1"]), QuadraticMap(common["c2"])
    r_grid = dim.default_r_grid(dm["r_lo"], dm["r_hi"], dm["r_points"])
    q_grid = dm["q_grid"]

    def spectra(k):
        o = dynamics.simulate_coupled(t1, t2, k, dm["x0"], dm["y0"], dm["n"])
        sm = dim.dq_estimate(o.xs, q_grid, r_grid)
        ss = dim.dq_estimate(o.ys, q_grid, r_grid)
        return k, sm, ss

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(spectra, dm["k_list"]))
    rows = []
    for k, sm, ss in results:
        for j, q in enumerate(sm.q_grid):
            low_fit = sm.fit_r2[j] < dm["fit_min_r2"] or ss.fit_r2[j] < dm["fit_min_r2"]
            rows.append((k, q, sm.d_values[j], sm.fit_r2[j],
                         ss.d_values[j], ss.fit_r2[j],
                         abs(sm.d_values[j] - ss.d_values[j]), low_fit))
    _write_csv(out / "dimension.csv",
               ("k", "q", "dq_master", "r2_master", "dq_slave", "r2_slave",
                "delta_dq", "low_fit"),
               rows, mh)

    if dm["selftest"]:
        rng = np.random.Generator(np.random.PCG64(_subseeds(common["seed"], 1)[0]))
        pts = rng.uniform(-1.0, 1.0, dm["selftest_n"])
        s = dim.dq_estimate(pts, q_grid, r_grid)
        _write_csv(out / "selftest.csv", ("q", "dq", "r2"),
                   zip(s.q_grid, s.d_values, s.fit_r2), mh)


def cmd_ulam_dump(cfg: ExperimentConfig, out: Path, mh: str):
    common, ud = cfg.section("common"), cfg.section("ulam-dump")
    seeds = _subseeds(common["seed"], 1)
    h = _master_density(cfg, common["h_bins"], seeds[0])
    t2 = QuadraticMap(common["c2"])
    op = operator.build_ulam(t2, h, ud["k"], ud["n_bins"], ud["samples_per_bin"])
    header = (f"# ulam v1 n_bins={op.n_bins} k={_fmt(op.k)} "
              f"c2={_fmt(op.c2)} h={op.h_hash}")
    _write_csv(out / "ulam.csv", ("row-major operator entries, one row per line",),
               (row for row in op.matrix), mh, preamble=(header,))


# ---------------------------------------------------------------------------
# entry point

_COMMANDS = {
    "simulate": cmd_simulate,
    "stationary": cmd_stationary,
    "certify": cmd_certify,
    "weaklimit": cmd_weaklimit,
    "question3": cmd_question3,
    "dimension": cmd_dimension,
    "ulam-dump": cmd_ulam_dump,
}
_THREADED = {"weaklimit", "question3", "dimension"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synclab",
        description="coupled-map synchronization experiments (CSV outputs)")
    parser.add_argument("--version", action="version",
                        version=f"synclab {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None,
                       help="experiment config file (INI-style sections)")
        p.add_argument("--out", type=str, default=None,
                       help="output directory (overrides common.out_dir)")
        p.add_argument("--seed", type=int, default=None,
                       help="override common.seed")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for coupling sweeps")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {}
    if args.seed is not None:
        if args.seed < 0:
            print("config error: --seed must be nonnegative", file=sys.stderr)
            return 2
        overrides[("common", "seed")] = args.seed
    if args.out is not None:
        overrides[("common", "out_dir")] = args.out
    try:
        cfg = load_config(args.config, overrides)
        out = Path(cfg.get("common", "out_dir"))
        out.mkdir(parents=True, exist_ok=True)
        mh = write_manifest(cfg, out)
        fn = _COMMANDS[args.command]
        if args.command in _THREADED:
            fn(cfg, out, mh, threads=args.threads)
        else:
            fn(cfg, out, mh)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3
    except OutOfRegimeError as exc:
        print(f"out of regime: {exc}", file=sys.stderr)
        return 4
    except SynclabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc.strerror}: {exc.filename}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
