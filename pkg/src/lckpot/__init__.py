"""Numerical verification toolkit for locally conformally Kähler potentials.

Scalar fields on C^n carry exact second-order Wirtinger jets; on top of
them sit twisted complex Hessians, a C^2 regularized maximum, sampled
positivity verdicts, gluing of potentials and the positivization pipeline
on Hopf manifolds.
"""

from .config import ConfigError, RunConfig, load_config, parse_config
from .forms import HermitianForm, NumericError
from .gluing import (
    GlueContractError,
    GlueHypothesisReport,
    GlueReport,
    GlueSpec,
    check_glue_hypotheses,
    glue,
    lie_derivative,
    locate_surface,
    outward_normal,
    verify_glue,
)
from .grammar import ExpressionError, parse_field, parse_holo
from .holo import HoloPoly, coordinate, monomial
from .hopf import (
    HopfModel,
    MonomialSection,
    PipelineError,
    PositivizeParams,
    PositivizeResult,
    PreconditionError,
    SignWitnesses,
    WeightMismatchError,
    degree2_sections,
    find_sign_change,
    neglog_transform,
    partition_positive,
    positivize,
    section_cover_field,
    section_potential,
    standard_potential,
    vuletescu_potential,
)
from .jets import DomainError, Jet2, ScalarField, eval_jet2, finite_diff_jet2
from .positivity import (
    CriticalPointError,
    LeviReport,
    PshReport,
    RegularValueReport,
    check_psh,
    levi_check,
    min_eigenvalue,
    verify_regular_value,
)
from .regmax import CubicSplineProfile, RegMaxKernel, SmoothBumpProfile, compose_regmax, regmax_jet, regmax_value
from .sampling import Sampler, annulus, ball, box, shell
from .twisted import (
    AutomorphicField,
    LeeData,
    check_automorphy,
    check_lee,
    lck_form_field,
    lift_to_cover,
    twisted_hessian,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
