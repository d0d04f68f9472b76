"""Resolvent calculus for monotone operator splitting, with a verification harness.

The package evaluates resolvents, reflected resolvents, their (gamma, w)
averaged perturbations, Douglas-Rachford-type splitting operators and
the relaxed reflect-reflect operator of a perturbed pair, provides
analytic closed forms for a translation/projector model as independent
oracles, and ships a seeded harness that certifies every identity (and
probes every claimed non-equality) numerically.
"""

from .closedforms import (
    ASign,
    ClosedForm,
    ClosedFormConstants,
    GapCase,
    MODEL_FORMS,
    ModelInstance,
    PAIR_FORMS,
    RECONSTRUCTED_FORMS,
    closed_form_eval,
    compositional_eval,
    constants,
    noncommutation_gap,
    transcribed_eval,
    transcribed_gap,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    MonotonicityViolation,
    NonComputableResolvent,
    OpSplitError,
    RankDeficient,
    SingularMatrix,
    SingularResolvent,
    UnknownForm,
    UnknownSuite,
)
from .harness import (
    EqualityReport,
    InstanceSpec,
    Kind,
    SUITE_ORDER,
    SuiteConfig,
    find_witness,
    gen_instance,
    materialize_affine,
    operators_equal,
    run_suite,
    suite_verdicts,
)
from .iterate import IterationTrace, estimate_rate, run_iteration
from .linalg import (
    SubspaceBasis,
    is_monotone_linear,
    orthonormalize,
    project,
    solve_linear,
)
from .operators import (
    AACParams,
    AffineMap,
    Combine,
    Compose,
    Constant,
    Identity,
    OperatorExpr,
    Perturbed,
    PerturbationParams,
    ProjectAffine,
    Reflected,
    Resolvent,
    affinity_defect,
    affinity_probe,
    evaluate,
    is_resolvent_computable,
    perturbed_reflected,
    perturbed_resolvent,
    reflected,
    resolvent,
    translation,
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
    power,
    rbr,
)

__version__ = "0.1.0"
