"""Acceptance gate: one test per criterion, one printed line per criterion.

The suites run once at full scale (100 instances, dims 1..16, mixed
operator kinds) in a module fixture; criterion tests consult the
resulting reports.  The criterion that witnesses exist for the EX19
composition pair is kept exactly as stated even though the composition
is provably an identity (see the failing test's message), so that test
is expected to stay red; everything else is green.
"""

import numpy as np
import numpy.testing as npt
import pytest

from opsplit import (
    Form,
    GapCase,
    SUITE_ORDER,
    SuiteConfig,
    aac,
    noncommutation_gap,
    run_iteration,
    run_suite,
    suite_verdicts,
    transcribed_gap,
)
from opsplit.cli import main

IDENTITY_SUITES = (
    "EQ9_DRS_FORMS", "EQ10_SWAP", "EQ6_RESOLVENT_AVG", "EQ7_REFLECTED_AVG",
    "LEM22_T_FORMS", "LEM22_RBR_FORMS", "LEM24_JR_COMMUTE", "LEM25_COMMUTATOR",
    "LEM27_RR1_RR4",
)


@pytest.fixture(scope="module")
def full_run(worked_instance_module):
    cfg = SuiteConfig(seed=20240307, instances=100, samples=8, dim_lo=1,
                      dim_hi=16, model=worked_instance_module)
    reports = run_suite(list(SUITE_ORDER), cfg)
    return reports, suite_verdicts(reports), cfg


@pytest.fixture(scope="module")
def worked_instance_module():
    from opsplit import ModelInstance, orthonormalize
    basis = orthonormalize([np.array([1.0, 0.0])])
    return ModelInstance(subspace=basis, a=[0.0, 2.0], v=[0.0, 1.0],
                         w=[1.0, 1.0], gamma=0.5, lam=0.5)


def announce(name, ok):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")


def members(reports, suite):
    return [r for r in reports if r.suite == suite]


def test_acceptance_identity_suites(full_run):
    """Every identity suite passes at its stated tolerance, 100 instances."""
    reports, verdicts, _ = full_run
    ok = True
    for suite in IDENTITY_SUITES:
        suite_members = members(reports, suite)
        instance_ids = {r.member.split(".")[0] for r in suite_members}
        ok = ok and verdicts[suite] == "PASS" and len(instance_ids) >= 100
    announce("identity_suites(EQ9,EQ10,EQ6,EQ7,LEM22xT,LEM22xRbR,LEM24,LEM25,LEM27)", ok)
    assert ok, {s: verdicts[s] for s in IDENTITY_SUITES}
    # tolerances pinned as stated
    tols = {r.tolerance for r in members(reports, "EQ9_DRS_FORMS")}
    assert tols == {1e-10}
    tols = {r.tolerance for r in members(reports, "LEM22_T_FORMS")}
    assert tols == {1e-9}


def test_acceptance_conjugation_powers(full_run):
    """Power conjugation residual <= 1e-8 * (1 + |x|) for n up to 32."""
    reports, verdicts, _ = full_run
    suite_members = members(reports, "THM26_CONJUGATION")
    ok = (verdicts["THM26_CONJUGATION"] == "PASS"
          and len(suite_members) >= 100
          and all(r.tolerance == 1e-8 for r in suite_members)
          and all("powers=1,2,4,8,16,32" in r.note for r in suite_members))
    announce("conjugation_powers(THM26, n in {1,2,4,8,16,32})", ok)
    assert ok


def test_acceptance_model_oracle_agreement(full_run):
    """All model closed forms match composition within 1e-9, 100 instances."""
    reports, verdicts, _ = full_run
    suite_members = members(reports, "EX23_ORACLES")
    ok = (verdicts["EX23_ORACLES"] == "PASS" and len(suite_members) >= 100
          and all(r.tolerance == 1e-9 for r in suite_members))
    announce("model_oracle_agreement(EX23, twelve closed forms)", ok)
    assert ok


def test_acceptance_pair_equalities(full_run):
    """Pair-composition equality and closed forms match within 1e-9.

    The reports must record the sign convention they ran under.
    """
    reports, verdicts, _ = full_run
    suite_members = members(reports, "PROP28_EQUALITIES")
    ok = (verdicts["PROP28_EQUALITIES"] == "PASS" and len(suite_members) >= 100
          and all("a_sign=MINUS_V" in r.note for r in suite_members))
    announce("pair_equalities(PROP28 iii,iv,v,vii,viii under MINUS_V)", ok)
    assert ok


def test_acceptance_pair_nonequality_ex16(full_run):
    """Witnesses with gap > 1e-6 found within 100 samples for EX16."""
    reports, _, cfg = full_run
    ex16 = [r for r in members(reports, "PROP28_NONEQUALITIES")
            if r.member.endswith("EX16")]
    ok = (len(ex16) >= 100 and all(r.passed for r in ex16)
          and all(r.witness is not None and r.witness[1] > 1e-6 for r in ex16)
          and all(r.samples <= cfg.witness_budget == 100 for r in ex16))
    announce("pair_nonequality_EX16(witness within 100 samples)", ok)
    assert ok


def test_acceptance_pair_nonequality_ex19(full_run, worked_instance_module):
    """EX19 as stated: witnesses with gap > 1e-6, worked gap = 2*lam*gamma*|w|.

    This criterion is unattainable and the test is expected to fail: the
    EX19 composition pair (second reflector against the two operator
    orders) is forced to be EQUAL by the power-conjugation identity with
    the operator roles exchanged, because the projector operand is
    affine.  The compositional gap is therefore zero at every point and
    no witness exists.  The headline value 2*lam*gamma*|w| = 0.7071... is
    exactly the difference of the two *transcribed* closed-form constants
    (c - b = -2*lam*gamma*w), i.e. an artifact of a coefficient slip in
    the transcription of b, demonstrated by transcribed_gap and asserted
    green in the unit suite.
    """
    reports, _, _ = full_run
    ex19 = [r for r in members(reports, "PROP28_NONEQUALITIES")
            if r.member.endswith("EX19")]
    inst = worked_instance_module
    probe = np.array([2.0, 0.0])
    measured = noncommutation_gap(inst, GapCase.EX19, probe)
    expected = 2.0 * inst.lam * inst.gamma * float(np.linalg.norm(inst.w))
    witnesses_found = bool(ex19) and all(r.passed for r in ex19)
    worked_value_matches = abs(measured - expected) <= 1e-9
    ok = witnesses_found and worked_value_matches
    announce("pair_nonequality_EX19(witness + worked gap 0.7071...)", ok)
    assert ok, (
        "unattainable as stated: the EX19 composition pair is an identity "
        f"(measured compositional gap {measured:.3e} at the worked instance, "
        f"witness searches over {len(ex19)} generic instances x 100 samples "
        f"found nothing), while the stated gap {expected:.17g} is the "
        "transcribed-constants difference "
        f"{transcribed_gap(inst, GapCase.EX19, probe):.17g}; "
        "see the reconstruction notes in opsplit.closedforms."
    )


def test_acceptance_iteration_worked_instance(worked_instance_module):
    """Iteration reaches (2/3, -1) within 1e-8 in <= 60 steps, rate ~ 0.625."""
    pair = worked_instance_module.split_pair()
    trace = run_iteration(pair, [2.0, 0.0], max_iters=60, stop_tol=1e-9)
    rate_target = max(abs(1 - 0.25 * (2 - 0.5)), abs(1 - 0.25 * (3 - 1)))
    ok = (trace.converged and trace.iterations <= 60
          and np.linalg.norm(trace.final - np.array([2.0 / 3.0, -1.0])) <= 1e-8
          and abs(trace.rate - rate_target) <= 0.01)
    announce("iteration_worked_instance(limit (2/3,-1), rate 0.625)", ok)
    assert ok
    npt.assert_allclose(rate_target, 0.625)


def test_acceptance_verify_determinism(tmp_path):
    """Two verify runs with one config produce byte-identical report files."""
    cfg_path = tmp_path / "run.toml"
    cfg_path.write_text("seed = 20240307\ninstances = 10\nsamples = 4\n",
                        encoding="utf-8")
    assert main(["verify", "--config", str(cfg_path), "--out",
                 str(tmp_path / "r1")]) in (0, 1)
    assert main(["verify", "--config", str(cfg_path), "--out",
                 str(tmp_path / "r2")]) in (0, 1)
    files1 = sorted(p.name for p in (tmp_path / "r1").iterdir())
    files2 = sorted(p.name for p in (tmp_path / "r2").iterdir())
    ok = files1 == files2 and len(files1) == 14 and all(
        (tmp_path / "r1" / name).read_bytes() == (tmp_path / "r2" / name).read_bytes()
        for name in files1)
    announce("verify_determinism(byte-identical reports, 14 suites)", ok)
    assert ok
