"""Length sets, delta sets, and perspicacity certificates of <a1, a2>."""

from .curve import (
    CurveProfile,
    Kind,
    MuPoint,
    NormParameter,
    argmin_mu,
    curve_profile,
    exact_special_p,
    inverse_r0,
    min_mu,
    mu,
    mu_point,
    mu_prime,
    mu_second,
    p_of_t,
    probe_T,
    r0_solve,
    special_t_value,
    taylor_k,
)
from .certificates import (
    Certificate,
    RationalR0Witness,
    build_certificate,
    classify_t,
    lambda_points,
    special_t,
)
from .errors import (
    ChecksumMismatch,
    ConditionFailed,
    DomainError,
    EmptyInterval,
    NdsError,
    NotInSemigroup,
    SolverError,
    WitnessInvalid,
)
from .scan import (
    DensityReport,
    ScanConfig,
    ScanReport,
    VerificationOutcome,
    density_report,
    scan,
    verify_certificate,
)
from .semigroup import (
    Factorization,
    GapRecord,
    LengthSet,
    NumericalSemigroup,
    delta_set_of_element,
    factorizations,
    length_set,
    norm_value,
    sorted_lengths_unimodal,
)

__version__ = "0.1.0"
