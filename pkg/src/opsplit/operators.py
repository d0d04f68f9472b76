"""Composable operator expressions and their resolvent calculus.

An operator expression is an immutable tree; every node is a callable
mapping points to points.  The resolvent-computable kinds are Identity,
Constant, monotone AffineMap, ProjectAffine, and Perturbed wrappers of
these; for them ``resolvent``/``reflected`` return exact closed-form
evaluators (no inner iterative solves).

The (gamma, w) perturbation of an operator A is the operator whose
resolvent is the averaged map

    J_perturbed = gamma * J_A + (1 - gamma) * w,

and a ``Perturbed`` node also evaluates the perturbation directly via

    A(gamma^-1 * (x - (1 - gamma) * w)) + gamma^-1 * (1 - gamma) * (x - w)

when its child is single-valued, which lets tests cross-validate the
averaged resolvent against an independent materialize-and-solve route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    MonotonicityViolation,
    NonComputableResolvent,
    SingularMatrix,
    SingularResolvent,
)
from .linalg import SubspaceBasis, as_point, frozen, is_monotone_linear, solve_linear


@dataclass(frozen=True, eq=False)
class PerturbationParams:
    """The pair (gamma, w) defining a resolvent-averaged perturbation."""

    gamma: float
    w: np.ndarray

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie strictly inside (0, 1), got {self.gamma}")
        object.__setattr__(self, "w", frozen(as_point(self.w)))

    @property
    def dim(self):
        return self.w.shape[0]


@dataclass(frozen=True, eq=False)
class AACParams:
    """Relaxation weight lambda of the averaged splitting operator."""

    lam: float

    def __post_init__(self):
        if not 0.0 < self.lam <= 1.0:
            raise ValueError(f"lambda must lie in (0, 1], got {self.lam}")


def _merge_dims(*dims):
    known = {d for d in dims if d is not None}
    if len(known) > 1:
        raise DimensionMismatch(f"inconsistent dimensions {sorted(known)}")
    return known.pop() if known else None


class OperatorExpr:
    """Base class for operator expression nodes.

    ``dim`` is the ambient dimension, or None when the node is
    dimension-polymorphic (Identity and trees built only from it).
    """

    dim = None

    def __call__(self, x):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Identity(OperatorExpr):
    """x -> x."""

    def __call__(self, x):
        return as_point(x)


@dataclass(frozen=True, eq=False)
class Constant(OperatorExpr):
    """x -> value."""

    value: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", frozen(as_point(self.value)))

    @property
    def dim(self):
        return self.value.shape[0]

    def __call__(self, x):
        as_point(x, dim=self.dim)
        return self.value.copy()


@dataclass(frozen=True, eq=False)
class AffineMap(OperatorExpr):
    """x -> linear @ x + offset."""

    linear: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        lin = linalg.as_square_matrix(self.linear)
        off = as_point(self.offset, dim=lin.shape[0])
        object.__setattr__(self, "linear", frozen(lin))
        object.__setattr__(self, "offset", frozen(off))

    @property
    def dim(self):
        return self.offset.shape[0]

    def __call__(self, x):
        return self.linear @ as_point(x, dim=self.dim) + self.offset


def translation(shift):
    """The operator x -> x + shift as an AffineMap."""
    s = as_point(shift)
    return AffineMap(np.eye(s.shape[0]), s)


@dataclass(frozen=True, eq=False)
class ProjectAffine(OperatorExpr):
    """Projection onto the affine subspace anchor + U.

    Evaluates anchor + P_U(x - anchor), i.e. P_U x + (Id - P_U) anchor.
    """

    anchor: np.ndarray
    subspace: SubspaceBasis

    def __post_init__(self):
        a = as_point(self.anchor, dim=self.subspace.dim)
        object.__setattr__(self, "anchor", frozen(a))

    @property
    def dim(self):
        return self.subspace.dim

    def __call__(self, x):
        v = as_point(x, dim=self.dim)
        return self.anchor + self.subspace.project(v - self.anchor)


@dataclass(frozen=True, eq=False)
class Perturbed(OperatorExpr):
    """The (gamma, w) resolvent-averaged perturbation of ``child``."""

    child: OperatorExpr
    params: PerturbationParams

    def __post_init__(self):
        _merge_dims(self.child.dim, self.params.dim)

    @property
    def dim(self):
        return self.params.dim

    def __call__(self, x):
        # Direct pointwise formula; meaningful when the child is single-valued
        # (every node kind here evaluates pointwise).
        g = self.params.gamma
        w = self.params.w
        v = as_point(x, dim=self.dim)
        return self.child((v - (1.0 - g) * w) / g) + (1.0 - g) / g * (v - w)


@dataclass(frozen=True, eq=False)
class Resolvent(OperatorExpr):
    """(Id + child)^-1, evaluated in closed form per child kind.

    The child must be of a resolvent-computable kind; build via
    :func:`resolvent` to additionally get the monotonicity check.
    """

    child: OperatorExpr

    def __post_init__(self):
        if not is_resolvent_computable(self.child):
            raise NonComputableResolvent(
                f"no closed-form resolvent for {type(self.child).__name__}")

    @property
    def dim(self):
        return self.child.dim

    def __call__(self, x):
        return _resolve(self.child, as_point(x, dim=self.dim))


@dataclass(frozen=True, eq=False)
class Reflected(OperatorExpr):
    """2 * (Id + child)^-1 - Id, exact by construction."""

    child: OperatorExpr

    def __post_init__(self):
        if not is_resolvent_computable(self.child):
            raise NonComputableResolvent(
                f"no closed-form resolvent for {type(self.child).__name__}")

    @property
    def dim(self):
        return self.child.dim

    def __call__(self, x):
        v = as_point(x, dim=self.dim)
        return 2.0 * _resolve(self.child, v) - v


@dataclass(frozen=True, eq=False)
class Compose(OperatorExpr):
    """x -> outer(inner(x))."""

    outer: OperatorExpr
    inner: OperatorExpr

    def __post_init__(self):
        _merge_dims(self.outer.dim, self.inner.dim)

    @property
    def dim(self):
        return _merge_dims(self.outer.dim, self.inner.dim)

    def __call__(self, x):
        return self.outer(self.inner(x))


@dataclass(frozen=True, eq=False)
class Combine(OperatorExpr):
    """x -> alpha * f(x) + beta * g(x) + shift."""

    alpha: float
    f: OperatorExpr
    beta: float
    g: OperatorExpr
    shift: np.ndarray

    def __post_init__(self):
        s = as_point(self.shift)
        _merge_dims(self.f.dim, self.g.dim, s.shape[0])
        object.__setattr__(self, "shift", frozen(s))

    @property
    def dim(self):
        return self.shift.shape[0]

    def __call__(self, x):
        v = as_point(x, dim=self.dim)
        return self.alpha * self.f(v) + self.beta * self.g(v) + self.shift


def evaluate(op, x):
    """Evaluate an operator expression at a point."""
    return op(x)


def is_resolvent_computable(op):
    """True for the operator kinds whose resolvent has a closed form."""
    if isinstance(op, (Identity, Constant, AffineMap, ProjectAffine)):
        return True
    if isinstance(op, Perturbed):
        return is_resolvent_computable(op.child)
    return False


def _check_resolvent_operand(op):
    if not is_resolvent_computable(op):
        raise NonComputableResolvent(f"no closed-form resolvent for {type(op).__name__}")
    base = op
    while isinstance(base, Perturbed):
        base = base.child
    if isinstance(base, AffineMap) and not is_monotone_linear(base.linear):
        raise MonotonicityViolation("affine map has non-PSD symmetric part")


def _resolve(op, x):
    """Closed-form value of (Id + op)^-1 at x, dispatched on the node kind."""
    if isinstance(op, Identity):
        return x / 2.0
    if isinstance(op, Constant):
        return x - op.value
    if isinstance(op, AffineMap):
        try:
            return solve_linear(np.eye(op.dim) + op.linear, x - op.offset)
        except SingularMatrix as exc:
            raise SingularResolvent(str(exc)) from exc
    if isinstance(op, ProjectAffine):
        sub = op.subspace
        return x - 0.5 * sub.project(x) - sub.project_complement(op.anchor)
    if isinstance(op, Perturbed):
        g = op.params.gamma
        return g * _resolve(op.child, x) + (1.0 - g) * op.params.w
    raise NonComputableResolvent(f"no closed-form resolvent for {type(op).__name__}")


def resolvent(op):
    """The resolvent (Id + op)^-1 as an operator expression.

    The operand must be resolvent-computable; an affine map must pass the
    symmetric-part PSD check (validated here once, not per evaluation).
    """
    _check_resolvent_operand(op)
    return Resolvent(op)


def reflected(op):
    """The reflected resolvent 2 * (Id + op)^-1 - Id as an expression."""
    _check_resolvent_operand(op)
    return Reflected(op)


def perturbed_resolvent(op, params):
    """Resolvent of the (gamma, w) perturbation: gamma * J_op + (1 - gamma) * w."""
    return resolvent(Perturbed(op, params))


def perturbed_reflected(op, params):
    """Reflected resolvent of the perturbation: 2 * gamma * J_op + 2 * (1 - gamma) * w - Id."""
    return reflected(Perturbed(op, params))


def affinity_defect(op, trials, seed, dim=None):
    """Worst normalized affineness defect of ``op`` over sampled pairs.

    For pairs (x, y) and weights t in {-1, 0.3, 2} the defect is

        |op(t x + (1 - t) y) - t op(x) - (1 - t) op(y)| / (1 + |op(x)| + |op(y)|).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = dim if dim is not None else getattr(op, "dim", None)
    if n is None:
        raise DimensionMismatch("dimension-polymorphic operator needs an explicit dim")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        x = rng.normal(size=n) * 10.0
        y = rng.normal(size=n) * 10.0
        fx, fy = op(x), op(y)
        scale = 1.0 + np.linalg.norm(fx) + np.linalg.norm(fy)
        for t in (-1.0, 0.3, 2.0):
            gap = np.linalg.norm(op(t * x + (1.0 - t) * y) - t * fx - (1.0 - t) * fy)
            worst = max(worst, gap / scale)
    return worst


def affinity_probe(op, trials, seed, dim=None, tol=1e-9):
    """Numeric affineness certificate: True iff the worst defect is <= tol."""
    return affinity_defect(op, trials, seed, dim=dim) <= tol
