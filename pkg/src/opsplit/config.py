"""Run configuration: a flat TOML key/value document.

All numerics enter through the config file (no positional CLI numerics);
vectors are arrays, the subspace is an array of spanning vectors.  Any
key may be omitted; defaults describe the two-dimensional worked
instance used throughout the test suite.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .closedforms import ASign, ModelInstance
from .errors import ConfigError, RankDeficient
from .harness import SUITE_ORDER, SuiteConfig
from .linalg import SubspaceBasis, orthonormalize


@dataclass
class RunConfig:
    """Parsed and validated run configuration."""

    dim: int = 2
    seed: int = 20240307
    gamma: float = 0.5
    lam: float = 0.5
    w: list = field(default_factory=lambda: [1.0, 1.0])
    v: list = field(default_factory=lambda: [0.0, 1.0])
    a: list = field(default_factory=lambda: [0.0, 2.0])
    subspace: list = field(default_factory=lambda: [[1.0, 0.0]])
    a_sign: str = "MINUS_V"
    suites: list = field(default_factory=lambda: list(SUITE_ORDER))
    instances: int = 100
    samples: int = 8
    dims: list = field(default_factory=lambda: [1, 16])
    tol_single: float = 1e-10
    tol_forms: float = 1e-9
    tol_power: float = 1e-8
    witness_threshold: float = 1e-6
    witness_budget: int = 100
    max_iters: int = 200
    stop_tol: float = 1e-9
    x0: list | None = None          # origin unless configured
    probe: list | None = None       # origin unless configured
    out: str = "out"

    def model_instance(self):
        """The configured ModelInstance (validates the model invariants)."""
        try:
            if self.subspace:
                basis = orthonormalize(
                    [np.asarray(row, dtype=float) for row in self.subspace])
                if basis.dim != self.dim:
                    raise ConfigError(
                        f"subspace vectors have dimension {basis.dim}, expected {self.dim}")
            else:
                basis = SubspaceBasis(self.dim, np.zeros((0, self.dim)))
            return ModelInstance(
                subspace=basis, a=self.a, v=self.v, w=self.w,
                gamma=self.gamma, lam=self.lam, a_sign=ASign(self.a_sign))
        except ConfigError:
            raise
        except (ValueError, RankDeficient) as exc:
            raise ConfigError(f"invalid model instance: {exc}") from exc

    def suite_config(self):
        return SuiteConfig(
            seed=self.seed, instances=self.instances, samples=self.samples,
            dim_lo=self.dims[0], dim_hi=self.dims[1],
            tol_single=self.tol_single, tol_forms=self.tol_forms,
            tol_power=self.tol_power, witness_threshold=self.witness_threshold,
            witness_budget=self.witness_budget, model=self.model_instance())

    def point(self, name):
        """x0/probe as a vector, defaulting to the origin."""
        value = getattr(self, name)
        if value is None:
            return np.zeros(self.dim)
        arr = np.asarray(value, dtype=float)
        if arr.shape != (self.dim,):
            raise ConfigError(f"{name} must be a vector of dimension {self.dim}")
        return arr


_INT_KEYS = {"dim", "seed", "instances", "samples", "witness_budget", "max_iters"}
_FLOAT_KEYS = {"gamma", "tol_single", "tol_forms", "tol_power",
               "witness_threshold", "stop_tol"}
_VECTOR_KEYS = {"w", "v", "a", "x0", "probe"}


def _coerce(key, value):
    if key in _INT_KEYS:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        return value
    if key in _FLOAT_KEYS or key == "lambda":
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        return float(value)
    if key in _VECTOR_KEYS:
        if not isinstance(value, list) or not all(
                isinstance(t, (int, float)) and not isinstance(t, bool) for t in value):
            raise ConfigError(f"{key} must be an array of numbers")
        return [float(t) for t in value]
    if key == "subspace":
        if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
            raise ConfigError("subspace must be an array of spanning vectors")
        return [[float(t) for t in row] for row in value]
    if key == "dims":
        if (not isinstance(value, list) or len(value) != 2
                or not all(isinstance(t, int) for t in value)):
            raise ConfigError("dims must be a two-element integer array [lo, hi]")
        return list(value)
    if key == "suites":
        if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
            raise ConfigError("suites must be an array of suite tags")
        return list(value)
    if key in {"a_sign", "out"}:
        if not isinstance(value, str):
            raise ConfigError(f"{key} must be a string")
        return value
    raise ConfigError(f"unknown configuration key {key!r}")


def load_config(path=None, overrides=None):
    """Load a RunConfig from a TOML file, then apply overrides.

    ``overrides`` maps config keys to already-typed values (used by the
    CLI flags); validation happens after merging.
    """
    raw = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                raw = _toml.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except _toml.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    cfg = RunConfig()
    for key, value in raw.items():
        attr = "lam" if key == "lambda" else key
        if not any(f.name == attr for f in fields(RunConfig)):
            raise ConfigError(f"unknown configuration key {key!r}")
        setattr(cfg, attr, _coerce(key, value))
    for key, value in (overrides or {}).items():
        setattr(cfg, key, value)
    _validate(cfg)
    return cfg


def _validate(cfg):
    if cfg.dim < 1 or cfg.dim > 64:
        raise ConfigError("dim must lie in [1, 64]")
    if not 0.0 < cfg.gamma < 1.0:
        raise ConfigError("gamma must lie strictly inside (0, 1)")
    if not 0.0 < cfg.lam <= 1.0:
        raise ConfigError("lambda must lie in (0, 1]")
    if cfg.a_sign not in {"MINUS_V", "PLUS_V"}:
        raise ConfigError("a_sign must be MINUS_V or PLUS_V")
    if cfg.max_iters < 1:
        raise ConfigError("max_iters must be >= 1")
    if cfg.stop_tol <= 0.0:
        raise ConfigError("stop_tol must be positive")
    if cfg.instances < 1 or cfg.samples < 1 or cfg.witness_budget < 1:
        raise ConfigError("instances, samples and witness_budget must be >= 1")
    if not 1 <= cfg.dims[0] <= cfg.dims[1] <= 64:
        raise ConfigError("dims must satisfy 1 <= lo <= hi <= 64")
    for key in ("w", "v", "a"):
        if len(getattr(cfg, key)) != cfg.dim:
            raise ConfigError(f"{key} must have dimension {cfg.dim}")
    unknown = [tag for tag in cfg.suites if tag not in SUITE_ORDER]
    if unknown:
        # surfaced as UnknownSuite by the harness; report early with the key
        raise ConfigError("unknown suite tag(s): " + ", ".join(sorted(unknown)))


def check_nonequality_genericity(cfg):
    """Reject degenerate model parameters for the witness suites.

    The claimed non-equalities are asserted only away from the degenerate
    region: the EX19 headline value vanishes at w = 0, and a = v
    degenerates the model pair.
    """
    if "PROP28_NONEQUALITIES" not in cfg.suites:
        return
    if float(np.linalg.norm(np.asarray(cfg.w))) <= 1e-12:
        raise ConfigError(
            "degenerate parameters for PROP28_NONEQUALITIES: w = 0 "
            "(the claimed gap 2*lambda*gamma*|w| vanishes)")
    if float(np.linalg.norm(np.asarray(cfg.a) - np.asarray(cfg.v))) <= 1e-8:
        raise ConfigError(
            "degenerate parameters for PROP28_NONEQUALITIES: a = v")
