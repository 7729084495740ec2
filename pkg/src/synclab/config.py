"""Experiment configuration: flat key-value files, one section per
subcommand, validated against a typed schema.

Unknown sections or keys are rejected so typos cannot silently fall back to
defaults. Every run writes a manifest echoing the fully resolved
configuration together with its content hash before any computation starts;
outputs embed the hash so a result file can always be traced to the exact
configuration that produced it.
"""

from __future__ import annotations

import configparser
import copy
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

TOOL_NAME = "synclab"
TOOL_VERSION = "0.1.0"

_OPEN = True
_CLOSED = False


class Field:
    """One config entry: how to parse it and which range it must obey."""

    def __init__(self, kind, default, lo=None, hi=None, lo_open=False,
                 hi_open=False, choices=None):
        self.kind = kind
        self.default = default
        self.lo, self.hi = lo, hi
        self.lo_open, self.hi_open = lo_open, hi_open
        self.choices = choices

    def _check_range(self, where, v):
        if self.lo is not None:
            if v < self.lo or (self.lo_open and v == self.lo):
                raise ConfigError(f"{where}: value {v} below allowed range")
        if self.hi is not None:
            if v > self.hi or (self.hi_open and v == self.hi):
                raise ConfigError(f"{where}: value {v} above allowed range")

    def parse(self, where, raw):
        raw = raw.strip()
        try:
            if self.kind == "int":
                v = int(raw)
            elif self.kind == "float":
                v = float(raw)
            elif self.kind == "bool":
                if raw.lower() not in ("true", "false"):
                    raise ValueError(raw)
                v = raw.lower() == "true"
            elif self.kind == "str":
                v = raw
            elif self.kind == "choice":
                if raw not in self.choices:
                    raise ConfigError(f"{where}: {raw!r} not one of {self.choices}")
                return raw
            elif self.kind == "float_list":
                v = tuple(float(p) for p in raw.split(",") if p.strip())
                if not v:
                    raise ValueError(raw)
            else:  # pragma: no cover
                raise AssertionError(self.kind)
        except ConfigError:
            raise
        except ValueError:
            raise ConfigError(f"{where}: cannot parse {raw!r} as {self.kind}") from None
        if self.kind == "float_list":
            for item in v:
                self._check_range(where, item)
        elif self.kind in ("int", "float"):
            self._check_range(where, v)
        return v


def _unit(default, lo_open=False, hi_open=False):
    return Field("float", default, lo=0.0, hi=1.0, lo_open=lo_open, hi_open=hi_open)


def _pos_int(default, lo=1):
    return Field("int", default, lo=lo)


def _point(default):
    return Field("float", default, lo=-1.0, hi=1.0)


SCHEMA = {
    "common": {
        "c1": _unit(0.9, lo_open=True),
        "c2": _unit(0.9, lo_open=True),
        "n_bins": _pos_int(128),
        "h_provider": Field("choice", "ulam",
                            choices=("analytic", "ulam", "orbit-histogram")),
        "h_bins": _pos_int(1024),
        "h_budget": _pos_int(100_000),
        "seed": Field("int", 12345, lo=0),
        "out_dir": Field("str", "runs"),
    },
    "simulate": {
        "k": _unit(0.5),
        "n": _pos_int(1_000_000),
        "x0": _point(0.1),
        "y0": _point(-0.2),
        "lyap_clip": Field("float", 1e-300, lo=0.0, lo_open=True),
        "sync_tail": _pos_int(1000),
        "orbit_stride": _pos_int(1000),
        "trace_stride": _pos_int(1000),
    },
    "stationary": {
        "k": _unit(0.5, lo_open=True),
        "f0": Field("choice", "uniform", choices=("uniform", "point", "random")),
        "samples_per_bin": _pos_int(8),
        "tol": Field("float", 1e-12, lo=0.0, lo_open=True),
        "max_iter": _pos_int(100_000),
        "rate_steps": _pos_int(4000),
    },
    "certify": {
        "k": _unit(0.5, lo_open=True, hi_open=True),
        "margin": _unit(0.05, lo_open=True, hi_open=True),
        "alpha_bar_frac": _unit(0.5, lo_open=True, hi_open=True),
        "r_frac": Field("float", 2.0, lo=1.0, lo_open=True),
        "grid_points": _pos_int(200, lo=2),
        "quad_tol": Field("float", 1e-6, lo=0.0, lo_open=True),
        "samples_per_bin": _pos_int(8),
        "mc_y0": _point(0.9),
        "mc_n": _pos_int(50),
        "mc_reps": _pos_int(100_000, lo=10_000),
    },
    "weaklimit": {
        "k_list": Field("float_list", (0.01, 0.2, 0.5, 0.8, 0.99), lo=0.0, hi=1.0),
        "n": _pos_int(10_000_000),
        "n_bins2d": _pos_int(64),
        "x0": _point(0.1),
        "y0": _point(-0.2),
        "nubar_budget": _pos_int(1_000_000, lo=100_000),
    },
    "question3": {
        "k_list": Field("float_list", (0.90, 0.925, 0.95, 0.975, 0.99),
                        lo=0.0, hi=1.0),
        "n": _pos_int(1_000_000),
        "x0": _point(0.1),
        "y0": _point(-0.2),
        "samples_per_bin": _pos_int(8),
        "tol": Field("float", 1e-12, lo=0.0, lo_open=True),
        "max_iter": _pos_int(100_000),
        "tv_floor": Field("float", 0.05, lo=0.0),
    },
    "dimension": {
        "k_list": Field("float_list", (0.05, 0.1, 0.2, 0.3, 0.5, 1.0),
                        lo=0.0, hi=1.0),
        "n": _pos_int(1_000_000),
        "x0": _point(0.1),
        "y0": _point(-0.2),
        "q_grid": Field("float_list", (-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0)),
        "r_lo": Field("float", 1e-3, lo=0.0, lo_open=True),
        "r_hi": Field("float", 1e-1, lo=0.0, lo_open=True),
        "r_points": _pos_int(24, lo=2),
        "fit_min_r2": _unit(0.99),
        "selftest": Field("bool", False),
        "selftest_n": _pos_int(1_000_000, lo=100_000),
    },
    "ulam-dump": {
        "k": _unit(0.5, lo_open=True),
        "n_bins": _pos_int(128, lo=16),
        "samples_per_bin": _pos_int(8),
    },
    # tolerances exercised by the acceptance suite, kept here so the runs
    # are self-describing
    "acceptance": {
        "k1_bins": _pos_int(1024),
        "k1_l1_tol": Field("float", 1e-10, lo=0.0),
        "c2_grid": Field("float_list", (0.3, 0.5, 0.9), lo=0.0, hi=1.0),
        "k_grid": Field("float_list", (0.2, 0.5, 0.8), lo=0.0, hi=1.0),
        "uniq_bins": _pos_int(1024),
        "uniq_l1_tol": Field("float", 1e-8, lo=0.0),
        "uniq_r2_min": _unit(0.99),
        "drift_grid_points": _pos_int(200, lo=2),
        "drift_quad_tol": Field("float", 1e-6, lo=0.0, lo_open=True),
        "gamma_hi_k": _unit(0.999, lo_open=True, hi_open=True),
        "gamma_hi_max": Field("float", 0.01, lo=0.0),
        "gamma_lo_k": _unit(0.001, lo_open=True, hi_open=True),
        "gamma_lo_min": Field("float", 0.99, lo=0.0),
        "mc_y0": _point(0.9),
        "mc_n": _pos_int(50),
        "mc_reps": _pos_int(100_000, lo=10_000),
        "sandwich_pairs": _pos_int(100),
        "sandwich_tol": Field("float", 1e-12, lo=0.0),
        "wl_n": _pos_int(10_000_000),
        "wl_bins": _pos_int(64),
        "wl_mad_max": Field("float", 0.05, lo=0.0),
        "wl_char_max": Field("float", 0.1, lo=0.0),
        "wl_prod_l1_max": Field("float", 0.15, lo=0.0),
        "q3_n": _pos_int(1_000_000),
        "q3_tv_floor": Field("float", 0.05, lo=0.0),
        "q3_decay_floor": Field("float", 0.01, lo=0.0),
        "dq_n": _pos_int(1_000_000),
        "dq_uniform_tol": Field("float", 0.05, lo=0.0),
        "dq_atom_tol": Field("float", 0.05, lo=0.0),
        "dq_sync_tol": Field("float", 0.05, lo=0.0),
        "lyap_n": _pos_int(10_000_000),
        "lyap_tol": Field("float", 0.01, lo=0.0),
        "conj_nmax": _pos_int(30),
        "conj_tol": Field("float", 1e-6, lo=0.0),
        "loop_n": _pos_int(1_000_000),
        "loop_bins": _pos_int(128),
        "loop_l1_tol": Field("float", 0.05, lo=0.0),
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved configuration (defaults + file + CLI overrides)."""

    values: dict

    def get(self, section: str, key: str):
        return self.values[section][key]

    def section(self, section: str) -> dict:
        return self.values[section]


def _defaults() -> dict:
    return {sec: {k: f.default for k, f in fields.items()}
            for sec, fields in SCHEMA.items()}


def load_config(path: str | Path | None = None,
                overrides: dict | None = None) -> ExperimentConfig:
    """Read and validate a config file; later overrides win.

    ``overrides`` maps (section, key) to already-typed values.
    """
    values = copy.deepcopy(_defaults())
    if path is not None:
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",),
                                           interpolation=None)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except configparser.Error as exc:
            raise ConfigError(f"malformed config file {path}: {exc}") from exc
        for sec in parser.sections():
            if sec not in SCHEMA:
                raise ConfigError(f"unknown config section [{sec}]")
            for key, raw in parser.items(sec):
                if key not in SCHEMA[sec]:
                    raise ConfigError(f"unknown config key {sec}.{key}")
                values[sec][key] = SCHEMA[sec][key].parse(f"{sec}.{key}", raw)
    if overrides:
        for (sec, key), v in overrides.items():
            if sec not in SCHEMA or key not in SCHEMA[sec]:
                raise ConfigError(f"unknown override {sec}.{key}")
            values[sec][key] = v
    return ExperimentConfig(values=values)


def manifest_payload(cfg: ExperimentConfig) -> dict:
    # out_dir is delivery plumbing, not part of the experiment identity, so
    # rerunning the same experiment into another directory keeps the hash
    values = copy.deepcopy(cfg.values)
    values["common"].pop("out_dir", None)
    body = {"tool": TOOL_NAME, "version": TOOL_VERSION, "config": values}
    canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    return {**body, "hash": digest}


def write_manifest(cfg: ExperimentConfig, out_dir: Path) -> str:
    """Write manifest.json and return the content hash."""
    payload = manifest_payload(cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return payload["hash"]
