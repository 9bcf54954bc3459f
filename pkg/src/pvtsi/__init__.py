"""Hadamard finite-part integrals by periodizing transforms and corrected trapezoidal rules.

Typical use::

    from pvtsi import SingularIntegrand, PeriodizingTransform, build_transformed, hfp_estimate, RuleConfig

    src = SingularIntegrand(lambda x: 1 + x - x * x, t=0.3, m=2)
    ti = build_transformed(src, PeriodizingTransform("rational", p=10))
    hfp_estimate(ti, RuleConfig(m=2, s=1, n=128)).value
"""

from .errors import (
    EndpointEvaluationError,
    JetDivisionError,
    JetDomainError,
    JetMismatchError,
    NonintegrableEndpointError,
    OracleError,
    PoleEvaluationError,
    PVTSIError,
    SolverError,
    ValidationError,
)
from .integrand import SingularIntegrand, TransformedIntegrand, build_transformed
from .jets import Jet
from .oracle import EXAMPLE_NAMES, ExampleCase, chebyshev_eval, example_library, hfp_closed_form
from .quadrature import (
    QuadratureResult,
    RuleConfig,
    extrapolation_coeffs,
    hfp_estimate,
    richardson_ladder,
    t_hat_0,
    t_hat_mid,
    zeta_even,
)
from .study import ConvergenceReport, StudyConfig, emit_report, run_study
from .transforms import IntervalMap, PeriodizingTransform, make_transform, predict_q, transform_tau

__version__ = "0.1.0"
