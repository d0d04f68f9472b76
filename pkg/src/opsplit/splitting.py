"""Splitting operators over a perturbed operator pair.

For operators A, B and a shared perturbation (gamma, w), this module
evaluates

    drs:  T(A, B)        = (Id + R_B R_A) / 2 = Id - J_A + J_B R_A
    rbr:  R_Bg R_Ag      (the reflect-reflect composition of the pair)
    aac:  (1 - lam) Id + lam * R_Bg R_Ag

together with every algebraically equivalent evaluation route the
identity suites compare (Form tags below), operator powers, and the
commutator / conjugation quantities used by the verification harness.
Each Form is kept as a genuinely distinct composition path on purpose:
the test suites are the proof check, so nothing is collapsed
algebraically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import UnknownForm
from .operators import (
    AACParams,
    Combine,
    Compose,
    Identity,
    OperatorExpr,
    Perturbed,
    PerturbationParams,
    is_resolvent_computable,
    reflected,
    resolvent,
)
from .linalg import as_point


class Form(Enum):
    """Evaluation-path tags.

    ``drs`` accepts DEF (half-sum route) and ALT (resolvent-difference
    route); ``rbr`` accepts M1/M2/M3; ``aac`` accepts DEF and
    M4/M5/M566/M5676/M567S6.  The swapped-order paths are selected with
    the ``swapped`` flag of the evaluators.
    """

    DEF = "DEF"
    ALT = "ALT"
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    M4 = "M4"
    M5 = "M5"
    M566 = "M566"
    M5676 = "M5676"
    M567S6 = "M567S6"


AAC_FORMS = (Form.DEF, Form.M4, Form.M5, Form.M566, Form.M5676, Form.M567S6)
RBR_FORMS = (Form.M1, Form.M2, Form.M3)


@dataclass(frozen=True, eq=False)
class SplitPair:
    """An ordered operator pair with its shared perturbation and relaxation."""

    a: OperatorExpr
    b: OperatorExpr
    params: PerturbationParams
    relax: AACParams

    def __post_init__(self):
        for name, op in (("a", self.a), ("b", self.b)):
            if not is_resolvent_computable(op):
                raise ValueError(f"operator {name} is not resolvent-computable")
        dims = {d for d in (self.a.dim, self.b.dim, self.params.dim) if d is not None}
        if len(dims) > 1:
            raise ValueError(f"inconsistent pair dimensions {sorted(dims)}")

    @property
    def dim(self):
        return self.params.dim

    @property
    def gamma(self):
        return self.params.gamma

    @property
    def lam(self):
        return self.relax.lam

    # Resolvent machinery is pure; caching the tiny expression nodes is safe.
    @cached_property
    def ja(self):
        return resolvent(self.a)

    @cached_property
    def jb(self):
        return resolvent(self.b)

    @cached_property
    def ra(self):
        return reflected(self.a)

    @cached_property
    def rb(self):
        return reflected(self.b)

    @cached_property
    def jag(self):
        return resolvent(Perturbed(self.a, self.params))

    @cached_property
    def jbg(self):
        return resolvent(Perturbed(self.b, self.params))

    @cached_property
    def rag(self):
        return reflected(Perturbed(self.a, self.params))

    @cached_property
    def rbg(self):
        return reflected(Perturbed(self.b, self.params))

    def swap(self):
        """The pair with the operator roles exchanged (same params)."""
        return SplitPair(self.b, self.a, self.params, self.relax)


def drs(a, b, form, x):
    """Douglas-Rachford splitting operator of (a, b) at x.

    DEF evaluates (x + R_b(R_a x)) / 2; ALT evaluates x - J_a x + J_b(R_a x).
    The two routes agree up to roundoff.
    """
    x = as_point(x)
    ja, jb = resolvent(a), resolvent(b)
    ra = reflected(a)
    if form is Form.DEF:
        rb = reflected(b)
        return 0.5 * (x + rb(ra(x)))
    if form is Form.ALT:
        return x - ja(x) + jb(ra(x))
    raise UnknownForm(f"{form} is not a drs evaluation path")


def drs_swapped(a, b, x):
    """The swapped splitting operator via x + J_a(R_b x) - J_b x.

    Agrees with ``drs(b, a, Form.DEF, x)`` up to roundoff.
    """
    x = as_point(x)
    ja, jb = resolvent(a), resolvent(b)
    rb = reflected(b)
    return x + ja(rb(x)) - jb(x)


def _oriented(pair, swapped):
    """Resolvent/reflector bundle in evaluation order (first, second)."""
    if swapped:
        return (pair.jb, pair.ja, pair.rb, pair.ra, pair.jbg, pair.jag, pair.rbg, pair.rag, pair.b, pair.a)
    return (pair.ja, pair.jb, pair.ra, pair.rb, pair.jag, pair.jbg, pair.rag, pair.rbg, pair.a, pair.b)


def rbr(pair, form, x, swapped=False):
    """Reflect-reflect composition of the perturbed pair at x.

    The three routes:
      M1: x + 2 J2g(R1g x) - 2 J1g x
      M2: x + 2 g J2(R1g x) - 2 g J1 x
      M3: T(1, 2) x + (1 - 2 g) J1 x - J2(R1 x) + 2 g J2(R1g x)
    where indices name the pair in evaluation order (1 applied first) and
    g is the perturbation weight.
    """
    x = as_point(x, dim=pair.dim)
    j1, j2, r1, r2, j1g, j2g, r1g, r2g, op1, op2 = _oriented(pair, swapped)
    g = pair.gamma
    if form is Form.DEF:
        return r2g(r1g(x))
    if form is Form.M1:
        return x + 2.0 * j2g(r1g(x)) - 2.0 * j1g(x)
    if form is Form.M2:
        return x + 2.0 * g * j2(r1g(x)) - 2.0 * g * j1(x)
    if form is Form.M3:
        return drs(op1, op2, Form.DEF, x) + (1.0 - 2.0 * g) * j1(x) - j2(r1(x)) + 2.0 * g * j2(r1g(x))
    raise UnknownForm(f"{form} is not an rbr evaluation path")


def aac(pair, form, x, swapped=False):
    """Relaxed reflect-reflect splitting operator of the perturbed pair at x.

    Six routes (indices as in :func:`rbr`, L the relaxation weight):
      DEF:    (1 - L) x + L R2g(R1g x)
      M4:     x + 2 L J2g(R1g x) - 2 L J1g x
      M5:     x + 2 L g J2(R1g x) - 2 L g J1 x
      M566:   x + 2 L g (J2(R1g x) - J1 x)
      M5676:  T(1, 2) x + (1 - 2 L g) J1 x - J2(R1 x) + 2 L g J2(R1g x)
      M567S6: T(2, 1) x + J2 x - J1(R2 x) + 2 L g J2(R1g x) - 2 L g J1 x
    All agree up to roundoff accumulation.
    """
    x = as_point(x, dim=pair.dim)
    j1, j2, r1, r2, j1g, j2g, r1g, r2g, op1, op2 = _oriented(pair, swapped)
    g, lam = pair.gamma, pair.lam
    if form is Form.DEF:
        return (1.0 - lam) * x + lam * r2g(r1g(x))
    if form is Form.M4:
        return x + 2.0 * lam * j2g(r1g(x)) - 2.0 * lam * j1g(x)
    if form is Form.M5:
        return x + 2.0 * lam * g * j2(r1g(x)) - 2.0 * lam * g * j1(x)
    if form is Form.M566:
        return x + 2.0 * lam * g * (j2(r1g(x)) - j1(x))
    if form is Form.M5676:
        t12 = drs(op1, op2, Form.DEF, x)
        return t12 + (1.0 - 2.0 * lam * g) * j1(x) - j2(r1(x)) + 2.0 * lam * g * j2(r1g(x))
    if form is Form.M567S6:
        t21 = drs_swapped(op1, op2, x)
        return t21 + j2(x) - j1(r2(x)) + 2.0 * lam * g * j2(r1g(x)) - 2.0 * lam * g * j1(x)
    raise UnknownForm(f"{form} is not an aac evaluation path")


def aac_expr(pair, swapped=False):
    """The aac operator as an expression tree (for affineness probes)."""
    first = pair.rbg if swapped else pair.rag
    second = pair.rag if swapped else pair.rbg
    return Combine(1.0 - pair.lam, Identity(), pair.lam, Compose(second, first), np.zeros(pair.dim))


def power(pair, swapped, n, x):
    """n-fold application of the aac operator (DEF route); n = 0 returns x."""
    if n < 0:
        raise ValueError("power requires n >= 0")
    y = as_point(x, dim=pair.dim)
    for _ in range(n):
        y = aac(pair, Form.DEF, y, swapped=swapped)
    return y


def conjugation_residual(pair, n, x):
    """Norm of R1g(T^n x) - T_swapped^n(R1g x).

    Vanishes (up to roundoff growth in n) whenever the first operator of
    the pair is affine.
    """
    if n < 1:
        raise ValueError("conjugation residual requires n >= 1")
    x = as_point(x, dim=pair.dim)
    lhs = pair.rag(power(pair, False, n, x))
    rhs = power(pair, True, n, pair.rag(x))
    return float(np.linalg.norm(lhs - rhs))


def commutator_lemma25(pair, x):
    """The three equivalent expressions for R1g T - T_swapped R1g at x.

    Returns (left, via the averaged resolvent, via the base resolvent):

      left  = R1g(T x) - T_swapped(R1g x)
      mid   = 2 (J1g(T x) - (1 - L) J1g x - L J1g(R2g(R1g x)))
      right = 2 g (J1(T x) - (1 - L) J1 x - L J1(R2g(R1g x)))

    All three agree, and all vanish, when the first operator is affine.
    """
    x = as_point(x, dim=pair.dim)
    g, lam = pair.gamma, pair.lam
    tx = aac(pair, Form.DEF, x)
    rr = pair.rbg(pair.rag(x))
    left = pair.rag(tx) - aac(pair, Form.DEF, pair.rag(x), swapped=True)
    mid = 2.0 * (pair.jag(tx) - (1.0 - lam) * pair.jag(x) - lam * pair.jag(rr))
    right = 2.0 * g * (pair.ja(tx) - (1.0 - lam) * pair.ja(x) - lam * pair.ja(rr))
    return left, mid, right


def dr_commutator(pair, x):
    """Both sides of the scaled commutator identity for affine pairs at x.

    Returns
    -------
    (ndarray, ndarray)
        lam^-2 (T T' - T' T) x  and  (R2g R1g^2 R2g - R1g R2g^2 R1g) x,
        where T' is the swapped operator.  The two agree for affine pairs.
    """
    x = as_point(x, dim=pair.dim)
    lam = pair.lam
    t = lambda z: aac(pair, Form.DEF, z)
    ts = lambda z: aac(pair, Form.DEF, z, swapped=True)
    lhs = (t(ts(x)) - ts(t(x))) / lam**2
    rag, rbg = pair.rag, pair.rbg
    rhs = rbg(rag(rag(rbg(x)))) - rag(rbg(rbg(rag(x))))
    return lhs, rhs
