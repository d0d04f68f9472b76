"""Randomized verification harness.

Generates seeded operator instances, samples operator equalities and
non-equalities, and orchestrates the named verification suites.  Every
member check owns an independent generator stream derived from
(seed, suite index, member index), so results are order-independent and
bitwise reproducible for a fixed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .closedforms import (
    ClosedForm,
    GapCase,
    MODEL_FORMS,
    ModelInstance,
    RECONSTRUCTED_FORMS,
    closed_form_eval,
    compositional_eval,
    noncommutation_gap,
)
from .errors import OpSplitError, UnknownSuite
from .linalg import SubspaceBasis, orthonormalize, solve_linear
from .operators import (
    AACParams,
    AffineMap,
    Perturbed,
    PerturbationParams,
    ProjectAffine,
    affinity_defect,
    perturbed_reflected,
    perturbed_resolvent,
    resolvent,
)
from .splitting import (
    AAC_FORMS,
    Form,
    RBR_FORMS,
    SplitPair,
    aac,
    aac_expr,
    commutator_lemma25,
    conjugation_residual,
    dr_commutator,
    drs,
    drs_swapped,
    rbr,
)


class Kind(Enum):
    """Operator kinds the generator can produce."""

    AFFINE_RANDOM = "AFFINE_RANDOM"
    TRANSLATED_IDENTITY = "TRANSLATED_IDENTITY"
    PROJECTOR = "PROJECTOR"


ALL_KINDS = (Kind.AFFINE_RANDOM, Kind.TRANSLATED_IDENTITY, Kind.PROJECTOR)
AFFINE_MAP_KINDS = (Kind.AFFINE_RANDOM, Kind.TRANSLATED_IDENTITY)


@dataclass(frozen=True, eq=False)
class InstanceSpec:
    """Recipe for one deterministic operator pair."""

    dim: int
    seed: int
    kind_a: Kind
    kind_b: Kind
    gamma: float
    lam: float
    w: np.ndarray | None = None   # None draws w from the seed stream

    def __post_init__(self):
        if not 1 <= self.dim <= 64:
            raise ValueError(f"dim must lie in [1, 64], got {self.dim}")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie strictly inside (0, 1)")
        if not 0.0 < self.lam <= 1.0:
            raise ValueError("lambda must lie in (0, 1]")


def _random_basis(rng, dim, k):
    if k == 0:
        return SubspaceBasis(dim, np.zeros((0, dim)))
    return orthonormalize(rng.normal(size=(k, dim)))


def gen_instance(spec):
    """Build the SplitPair described by ``spec``; deterministic per seed.

    AFFINE_RANDOM yields an affine map with linear part G G^T / n +
    (H - H^T) / 2 (PSD symmetric part by construction); PROJECTOR yields
    a projection onto a random affine subspace; TRANSLATED_IDENTITY
    yields x -> x - v with v orthogonal to the partner's subspace when
    the partner is a projector.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.dim

    # projectors first so a translated identity can see the partner basis
    ops = {}
    bases = {}
    for slot, kind in (("a", spec.kind_a), ("b", spec.kind_b)):
        if kind is Kind.PROJECTOR:
            k = int(rng.integers(0, n + 1))
            basis = _random_basis(rng, n, k)
            anchor = rng.normal(size=n)
            ops[slot] = ProjectAffine(anchor, basis)
            bases[slot] = basis
    for slot, kind in (("a", spec.kind_a), ("b", spec.kind_b)):
        if kind is Kind.AFFINE_RANDOM:
            g = rng.normal(size=(n, n))
            h = rng.normal(size=(n, n))
            lin = g @ g.T / n + (h - h.T) / 2.0
            ops[slot] = AffineMap(lin, rng.normal(size=n))
        elif kind is Kind.TRANSLATED_IDENTITY:
            v = rng.normal(size=n)
            partner = "b" if slot == "a" else "a"
            if partner in bases:
                v = v - bases[partner].project(v)
            ops[slot] = AffineMap(np.eye(n), -v)

    w = rng.normal(size=n) if spec.w is None else np.asarray(spec.w, dtype=float)
    return SplitPair(ops["a"], ops["b"], PerturbationParams(spec.gamma, w), AACParams(spec.lam))


@dataclass(frozen=True, eq=False)
class EqualityReport:
    """Outcome of one sampled member check."""

    suite: str
    member: str
    mode: str             # "identity" or "witness"
    samples: int
    max_gap: float
    tolerance: float
    verdict: str          # "PASS" or "FAIL"
    witness: tuple[np.ndarray, float] | None = None
    note: str = ""

    @property
    def passed(self):
        return self.verdict == "PASS"


def _sample_points(rng, dim, count):
    return rng.normal(size=(count, dim)) * 10.0


def _identity_report(suite, member, checks, dim, samples, seed, tol,
                     note="", absolute=False):
    """Sampled max-gap report over callable pairs ``checks``.

    The gap at a point is |f(x) - g(x)| / (1 + |f(x)|), or the plain norm
    when ``absolute``.  PASS iff the max over samples and pairs is <= tol.
    """
    rng = np.random.default_rng(seed)
    max_gap, wit = 0.0, None
    for x in _sample_points(rng, dim, samples):
        for f, g in checks:
            try:
                fx, gx = f(x), g(x)
            except OpSplitError as exc:
                raise type(exc)(f"{exc} (at sample {x.tolist()})") from exc
            gap = np.linalg.norm(fx - gx)
            if not absolute:
                gap /= 1.0 + np.linalg.norm(fx)
            if gap > max_gap:
                max_gap, wit = float(gap), x.copy()
    verdict = "PASS" if max_gap <= tol else "FAIL"
    witness = (wit, max_gap) if (wit is not None and max_gap > tol) else None
    return EqualityReport(suite, member, "identity", samples, max_gap, tol,
                          verdict, witness, note)


def operators_equal(f, g, dim, samples, seed, tol, suite="adhoc", member="m000"):
    """Sampled equality check of two point-to-point maps.

    Draws ``samples`` standard-normal points scaled by 10 and reports the
    max relative gap |f(x) - g(x)| / (1 + |f(x)|); PASS iff <= tol.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    return _identity_report(suite, member, [(f, g)], dim, samples, seed, tol)


def find_witness(f, g, dim, budget, seed, threshold):
    """First sampled point where |f(x) - g(x)| exceeds ``threshold``.

    Returns (point, gap) or None if no witness appears within ``budget``
    samples.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(seed)
    for x in _sample_points(rng, dim, budget):
        gap = float(np.linalg.norm(f(x) - g(x)))
        if gap > threshold:
            return x, gap
    return None


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by every suite runner."""

    seed: int = 20240307
    instances: int = 100
    samples: int = 8
    dim_lo: int = 1
    dim_hi: int = 16
    tol_single: float = 1e-10      # single compositions
    tol_forms: float = 1e-9        # multi-form identities
    tol_power: float = 1e-8        # n-fold powers
    witness_threshold: float = 1e-6
    witness_budget: int = 100
    power_counts: tuple = (1, 2, 4, 8, 16, 32)
    model: ModelInstance | None = None   # configured instance for worked checks


def _member_rng(cfg, suite, index):
    ss = np.random.SeedSequence(cfg.seed, spawn_key=(SUITE_ORDER.index(suite), index))
    return np.random.default_rng(ss)


def _seed(rng):
    return int(rng.integers(0, 2**63 - 1))


def _draw_pair(cfg, rng, kinds_a=ALL_KINDS, kinds_b=ALL_KINDS):
    dim = int(rng.integers(cfg.dim_lo, cfg.dim_hi + 1))
    kind_a = kinds_a[int(rng.integers(len(kinds_a)))]
    kind_b = kinds_b[int(rng.integers(len(kinds_b)))]
    spec = InstanceSpec(
        dim=dim, seed=_seed(rng), kind_a=kind_a, kind_b=kind_b,
        gamma=float(rng.uniform(0.1, 0.9)), lam=float(rng.uniform(0.1, 1.0)),
    )
    return gen_instance(spec)


def _complement_draw(rng, basis):
    """Random vector in the orthogonal complement of ``basis``.

    Double projection keeps the residual at roundoff; a vector that is
    numerically zero (complement trivial) snaps to exact zero.
    """
    raw = rng.normal(size=basis.dim)
    out = basis.project_complement(basis.project_complement(raw))
    if np.linalg.norm(out) < 1e-12 * max(1.0, np.linalg.norm(raw)):
        return np.zeros(basis.dim)
    return out


def _draw_model(cfg, rng, perp_anchor=True, distinct_anchor=False, nonzero_w=False):
    """Random ModelInstance; anchors drawn in the complement of U."""
    n = int(rng.integers(cfg.dim_lo, cfg.dim_hi + 1))
    k_hi = n if not distinct_anchor else n - 1   # keep U^perp nontrivial
    k = int(rng.integers(0, max(k_hi, 0) + 1))
    basis = _random_basis(rng, n, k)
    while True:
        v = _complement_draw(rng, basis)
        a = _complement_draw(rng, basis) if perp_anchor else rng.normal(size=n)
        if not distinct_anchor or np.linalg.norm(a - v) > 1e-6:
            break
    while True:
        w = rng.normal(size=n)
        if not nonzero_w or np.linalg.norm(w) > 1e-3:
            break
    return ModelInstance(
        subspace=basis, a=a, v=v, w=w,
        gamma=float(rng.uniform(0.1, 0.9)), lam=float(rng.uniform(0.1, 1.0)),
    )


def materialize_affine(f, dim):
    """Probe an affine map for its (matrix, offset) representation."""
    c = f(np.zeros(dim))
    m = np.empty((dim, dim))
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = 1.0
        m[:, i] = f(e) - c
    return m, c


def averaged_resolvent_oracle(op, params):
    """Independent resolvent of the perturbation, via materialize-and-solve.

    Evaluates the perturbed operator pointwise (its direct definition),
    recovers the affine representation (M, q), and returns
    x -> solve(I + M, x - q).  Never uses the averaged-resolvent formula
    it is meant to check.
    """
    dim = params.dim
    m, q = materialize_affine(Perturbed(op, params), dim)
    eye = np.eye(dim)
    return lambda x: solve_linear(eye + m, x - q)


# ---------------------------------------------------------------------------
# suite runners


def _suite_eq9(cfg):
    """Both evaluation routes of the splitting operator agree."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "EQ9_DRS_FORMS", i)
        pair = _draw_pair(cfg, rng)
        f = lambda x: drs(pair.a, pair.b, Form.DEF, x)
        g = lambda x: drs(pair.a, pair.b, Form.ALT, x)
        out.append(_identity_report("EQ9_DRS_FORMS", f"m{i:03d}", [(f, g)],
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_single))
    return out


def _suite_eq10(cfg):
    """The swapped-order route agrees with the swapped definition."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "EQ10_SWAP", i)
        pair = _draw_pair(cfg, rng)
        f = lambda x: drs_swapped(pair.a, pair.b, x)
        g = lambda x: drs(pair.b, pair.a, Form.DEF, x)
        out.append(_identity_report("EQ10_SWAP", f"m{i:03d}", [(f, g)],
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_single))
    return out


def _suite_eq6(cfg):
    """Averaged resolvent formula vs the materialize-and-solve oracle."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "EQ6_RESOLVENT_AVG", i)
        pair = _draw_pair(cfg, rng)
        oracle = averaged_resolvent_oracle(pair.a, pair.params)
        out.append(_identity_report("EQ6_RESOLVENT_AVG", f"m{i:03d}",
                                    [(pair.jag, oracle)],
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_forms))
    return out


def _suite_eq7(cfg):
    """Averaged reflected resolvent vs 2 * oracle - Id."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "EQ7_REFLECTED_AVG", i)
        pair = _draw_pair(cfg, rng)
        oracle = averaged_resolvent_oracle(pair.a, pair.params)
        g = lambda x: 2.0 * oracle(x) - x
        out.append(_identity_report("EQ7_REFLECTED_AVG", f"m{i:03d}",
                                    [(pair.rag, g)],
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_forms))
    return out


def _suite_lem22_t(cfg):
    """All six relaxed-splitting evaluation routes agree (both orders)."""
    out = []
    alt_forms = [f for f in AAC_FORMS if f is not Form.DEF]
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "LEM22_T_FORMS", i)
        pair = _draw_pair(cfg, rng)
        checks = []
        for swapped in (False, True):
            ref = lambda x, s=swapped: aac(pair, Form.DEF, x, swapped=s)
            for form in alt_forms:
                checks.append((ref, lambda x, f=form, s=swapped: aac(pair, f, x, swapped=s)))
        out.append(_identity_report("LEM22_T_FORMS", f"m{i:03d}", checks,
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_forms,
                                    note="forms=M4,M5,M566,M5676,M567S6;orders=both"))
    return out


def _suite_lem22_rbr(cfg):
    """The three reflect-reflect routes agree with direct composition."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "LEM22_RBR_FORMS", i)
        pair = _draw_pair(cfg, rng)
        checks = []
        for swapped in (False, True):
            ref = lambda x, s=swapped: rbr(pair, Form.DEF, x, swapped=s)
            for form in RBR_FORMS:
                checks.append((ref, lambda x, f=form, s=swapped: rbr(pair, f, x, swapped=s)))
        out.append(_identity_report("LEM22_RBR_FORMS", f"m{i:03d}", checks,
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_forms,
                                    note="forms=M1,M2,M3;orders=both"))
    return out


def _suite_prop21(cfg):
    """Resolvent and averaged variants of an affine operator are affine."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "PROP21_AFFINE", i)
        pair = _draw_pair(cfg, rng)
        ops = (resolvent(pair.a),
               perturbed_resolvent(pair.a, pair.params),
               perturbed_reflected(pair.a, pair.params))
        defect = max(affinity_defect(op, cfg.samples, _seed(rng) + j, dim=pair.dim)
                     for j, op in enumerate(ops))
        verdict = "PASS" if defect <= cfg.tol_forms else "FAIL"
        out.append(EqualityReport("PROP21_AFFINE", f"m{i:03d}", "identity",
                                  cfg.samples, float(defect), cfg.tol_forms, verdict,
                                  note="ops=resolvent,averaged_resolvent,averaged_reflected"))
    return out


def _suite_ex23(cfg):
    """Model closed forms vs compositional evaluation (all sixteen tags)."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "EX23_ORACLES", i)
        inst = _draw_model(cfg, rng)
        checks = [(lambda x, t=t: closed_form_eval(inst, t, x),
                   lambda x, t=t: compositional_eval(inst, t, x)) for t in MODEL_FORMS]
        out.append(_identity_report("EX23_ORACLES", f"m{i:03d}", checks,
                                    inst.dim, cfg.samples, _seed(rng), cfg.tol_forms,
                                    note="a_sign=MINUS_V"))
    return out


def _suite_lem24(cfg):
    """Averaged resolvent and reflector of an affine operator commute."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "LEM24_JR_COMMUTE", i)
        pair = _draw_pair(cfg, rng)
        f = lambda x: pair.jag(pair.rag(x))
        g = lambda x: pair.rag(pair.jag(x))
        out.append(_identity_report("LEM24_JR_COMMUTE", f"m{i:03d}", [(f, g)],
                                    pair.dim, cfg.samples, _seed(rng), cfg.tol_single))
    return out


def _suite_lem25(cfg):
    """Commutator triple: mutual agreement and vanishing for affine first slot."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "LEM25_COMMUTATOR", i)
        pair = _draw_pair(cfg, rng)
        srng = np.random.default_rng(_seed(rng))
        max_gap = 0.0
        for x in _sample_points(srng, pair.dim, cfg.samples):
            left, mid, right = commutator_lemma25(pair, x)
            gaps = (np.linalg.norm(left - mid), np.linalg.norm(mid - right),
                    np.linalg.norm(left - right), np.linalg.norm(left),
                    np.linalg.norm(mid), np.linalg.norm(right))
            max_gap = max(max_gap, float(max(gaps)))
        verdict = "PASS" if max_gap <= cfg.tol_forms else "FAIL"
        out.append(EqualityReport("LEM25_COMMUTATOR", f"m{i:03d}", "identity",
                                  cfg.samples, max_gap, cfg.tol_forms, verdict,
                                  note="checks=triple_agreement,vanishing"))
    return out


def _suite_thm26(cfg):
    """Conjugation of operator powers with the first reflector."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "THM26_CONJUGATION", i)
        pair = _draw_pair(cfg, rng, kinds_a=AFFINE_MAP_KINDS)
        srng = np.random.default_rng(_seed(rng))
        max_gap = 0.0
        for x in _sample_points(srng, pair.dim, max(2, cfg.samples // 2)):
            scale = 1.0 + np.linalg.norm(x)
            for n in cfg.power_counts:
                max_gap = max(max_gap, conjugation_residual(pair, n, x) / scale)
        verdict = "PASS" if max_gap <= cfg.tol_power else "FAIL"
        out.append(EqualityReport("THM26_CONJUGATION", f"m{i:03d}", "identity",
                                  cfg.samples, float(max_gap), cfg.tol_power, verdict,
                                  note="powers=" + ",".join(str(n) for n in cfg.power_counts)))
    return out


def _suite_lem27(cfg):
    """Affine-pair commutation facts rr0, rr1, rr2 and rr4."""
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "LEM27_RR1_RR4", i)
        pair = _draw_pair(cfg, rng)
        base_seed = _seed(rng)
        srng = np.random.default_rng(base_seed)

        defect = max(affinity_defect(aac_expr(pair, swapped=s), cfg.samples,
                                     base_seed + s, dim=pair.dim) for s in (0, 1))
        verdict = "PASS" if defect <= cfg.tol_forms else "FAIL"
        out.append(EqualityReport("LEM27_RR1_RR4", f"m{i:03d}.rr0", "identity",
                                  cfg.samples, float(defect), cfg.tol_forms, verdict))

        rr1_gap = rr2_gap = rr4_gap = 0.0
        same = SplitPair(pair.a, pair.a, pair.params, pair.relax)
        for x in _sample_points(srng, pair.dim, cfg.samples):
            t_then_rr = aac(pair, Form.DEF, rbr(pair, Form.DEF, x))
            rr_then_t = rbr(pair, Form.DEF, aac(pair, Form.DEF, x))
            rr1_gap = max(rr1_gap, float(np.linalg.norm(t_then_rr - rr_then_t)))
            lhs, rhs = dr_commutator(pair, x)
            rr2_gap = max(rr2_gap, float(np.linalg.norm(lhs - rhs)))
            lhs_same, _ = dr_commutator(same, x)
            rr4_gap = max(rr4_gap, float(np.linalg.norm(lhs_same)))
        for name, gap, tol in (("rr1", rr1_gap, cfg.tol_forms),
                               ("rr2", rr2_gap, cfg.tol_power),
                               ("rr4", rr4_gap, cfg.tol_forms)):
            verdict = "PASS" if gap <= tol else "FAIL"
            out.append(EqualityReport("LEM27_RR1_RR4", f"m{i:03d}.{name}", "identity",
                                      cfg.samples, gap, tol, verdict))
    return out


def _prop28_note():
    recon = ",".join(sorted(t.value for t in RECONSTRUCTED_FORMS))
    return f"a_sign=MINUS_V;reconstructed={recon}"


def _suite_prop28_eq(cfg):
    """Pair-composition equalities and closed forms of the model."""
    out = []
    pair_checks = (ClosedForm.RAG_T, ClosedForm.RBG_T_AGBG, ClosedForm.T_BGAG_RBG,
                   ClosedForm.RBG_T_BGAG, ClosedForm.T_AGBG_RBG)
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "PROP28_EQUALITIES", i)
        inst = _draw_model(cfg, rng, perp_anchor=True, distinct_anchor=True)
        inst.require_perp_anchor()
        pair = inst.split_pair()
        t = lambda x: aac(pair, Form.DEF, x)
        ts = lambda x: aac(pair, Form.DEF, x, swapped=True)
        checks = [
            # the first-reflector conjugation equality itself
            (lambda x: pair.rag(t(x)), lambda x: ts(pair.rag(x))),
        ]
        checks += [(lambda x, tg=tg: closed_form_eval(inst, tg, x),
                    lambda x, tg=tg: compositional_eval(inst, tg, x))
                   for tg in pair_checks]
        out.append(_identity_report("PROP28_EQUALITIES", f"m{i:03d}", checks,
                                    inst.dim, cfg.samples, _seed(rng), cfg.tol_forms,
                                    note=_prop28_note()))
    return out


def _witness_report(suite, member, found, budget, threshold, note=""):
    if found is not None:
        x, gap = found
        return EqualityReport(suite, member, "witness", budget, float(gap),
                              threshold, "PASS", (x, float(gap)), note)
    return EqualityReport(suite, member, "witness", budget, 0.0, threshold,
                          "FAIL", None, note)


def _suite_prop28_neq(cfg):
    """Witness search for the two claimed pair non-commutations.

    EX16 witnesses exist for generic data.  EX19 is included as specified
    even though the composition is an identity (the conjugation fact with
    roles exchanged), so its members report FAIL: no witness can exist,
    and the worked-instance value check records the measured gap next to
    the claimed 2*lam*gamma*|w|.
    """
    out = []
    for i in range(cfg.instances):
        rng = _member_rng(cfg, "PROP28_NONEQUALITIES", i)
        inst = _draw_model(cfg, rng, perp_anchor=True, distinct_anchor=True,
                           nonzero_w=True)
        for case in (GapCase.EX16, GapCase.EX19):
            pair = inst.split_pair()
            if case is GapCase.EX16:
                f = lambda x: pair.rbg(aac(pair, Form.DEF, x))
                g = lambda x: aac(pair, Form.DEF, pair.rbg(x), swapped=True)
            else:
                f = lambda x: pair.rbg(aac(pair, Form.DEF, x, swapped=True))
                g = lambda x: aac(pair, Form.DEF, pair.rbg(x))
            found = find_witness(f, g, inst.dim, cfg.witness_budget, _seed(rng),
                                 cfg.witness_threshold)
            out.append(_witness_report("PROP28_NONEQUALITIES",
                                       f"m{i:03d}.{case.value}", found,
                                       cfg.witness_budget, cfg.witness_threshold,
                                       note=_prop28_note()))
    if cfg.model is not None:
        out.append(_worked_ex19_member(cfg))
    return out


def _worked_ex19_member(cfg):
    """Worked-instance EX19 value check: gap vs 2*lam*gamma*|w| within 1e-9."""
    inst = cfg.model
    expected = 2.0 * inst.lam * inst.gamma * float(np.linalg.norm(inst.w))
    rng = _member_rng(cfg, "PROP28_NONEQUALITIES", cfg.instances)
    probes = [np.array([2.0, 0.0])] if inst.dim == 2 else []
    probes += list(_sample_points(rng, inst.dim, 3))
    gaps = [noncommutation_gap(inst, GapCase.EX19, x) for x in probes]
    max_dev = float(max(abs(g - expected) for g in gaps))
    verdict = "PASS" if max_dev <= 1e-9 else "FAIL"
    note = (f"expected=2*lam*gamma*|w|={expected:.17g};"
            f"measured_min={min(gaps):.17g};measured_max={max(gaps):.17g};"
            "gap_computed=compositionally")
    return EqualityReport("PROP28_NONEQUALITIES", "worked.EX19_value", "identity",
                          len(probes), max_dev, 1e-9, verdict, None, note)


SUITE_ORDER = (
    "EQ9_DRS_FORMS",
    "EQ10_SWAP",
    "EQ6_RESOLVENT_AVG",
    "EQ7_REFLECTED_AVG",
    "LEM22_T_FORMS",
    "LEM22_RBR_FORMS",
    "PROP21_AFFINE",
    "EX23_ORACLES",
    "LEM24_JR_COMMUTE",
    "LEM25_COMMUTATOR",
    "THM26_CONJUGATION",
    "LEM27_RR1_RR4",
    "PROP28_EQUALITIES",
    "PROP28_NONEQUALITIES",
)

_RUNNERS = {
    "EQ9_DRS_FORMS": _suite_eq9,
    "EQ10_SWAP": _suite_eq10,
    "EQ6_RESOLVENT_AVG": _suite_eq6,
    "EQ7_REFLECTED_AVG": _suite_eq7,
    "LEM22_T_FORMS": _suite_lem22_t,
    "LEM22_RBR_FORMS": _suite_lem22_rbr,
    "PROP21_AFFINE": _suite_prop21,
    "EX23_ORACLES": _suite_ex23,
    "LEM24_JR_COMMUTE": _suite_lem24,
    "LEM25_COMMUTATOR": _suite_lem25,
    "THM26_CONJUGATION": _suite_thm26,
    "LEM27_RR1_RR4": _suite_lem27,
    "PROP28_EQUALITIES": _suite_prop28_eq,
    "PROP28_NONEQUALITIES": _suite_prop28_neq,
}


def run_suite(ids, config):
    """Execute the named suites; returns the flat list of member reports.

    Member streams are keyed to (config.seed, suite, member), so the
    result for a given configuration is independent of the order and
    subset of ``ids``.
    """
    for tag in ids:
        if tag not in _RUNNERS:
            raise UnknownSuite(f"unknown suite tag {tag!r}")
    reports = []
    for tag in SUITE_ORDER:
        if tag in ids:
            reports.extend(_RUNNERS[tag](config))
    return reports


def suite_verdicts(reports):
    """Aggregate verdict per suite: PASS only if every member passed."""
    verdicts = {}
    for rep in reports:
        prev = verdicts.get(rep.suite, True)
        verdicts[rep.suite] = prev and rep.passed
    return {suite: ("PASS" if ok else "FAIL") for suite, ok in verdicts.items()}
