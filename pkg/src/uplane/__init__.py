"""uplane: periods, regularized determinants, Kodaira fibers and
determinant-line holonomies for Weierstrass elliptic families over the u-plane.
"""

from .curves import (
    ComplexPoly,
    CurveFamily,
    VChartData,
    WeierstrassCurve,
    discriminant,
    discriminant_poly,
    family_from_dict,
    family_to_dict,
    j_invariant,
    load_family,
    to_v_chart,
)
from .errors import (
    AgmBranchFailure,
    BadNf,
    ConvergenceFailure,
    DegreeMismatch,
    DivisionByZero,
    EulerMismatch,
    IdenticallySingular,
    LoopTooCloseToSingularity,
    NonIntegerWinding,
    NonMinimal,
    NotSingular,
    OddStructure,
    SchemaError,
    SingularCurve,
    SingularFiber,
    StencilCrossesSingularity,
    UPlaneError,
)
from .families import (
    ALL_SAMPLE_FAMILIES,
    coalesced_family,
    isotrivial_family,
    sample_family,
)
from .geometry import (
    ANOMALY_RATIO,
    AnomalyRecord,
    KaehlerData,
    UPlanePoint,
    anomaly_check,
    f1,
    is_isotrivial,
    kaehler_coefficient,
    scalar_curvature,
    uplane_point,
)
from .holonomy import (
    Chart,
    CurvatureLedger,
    HolonomyResult,
    LoopSpec,
    Operator,
    Orientation,
    canonical_trivialization_check,
    connection_form,
    curvature_ledger,
    holonomy,
    signature_from_monodromy,
)
from .kodaira import (
    AT_INFINITY,
    FiberConfiguration,
    FiberReport,
    KodairaType,
    SurfaceReport,
    classify_fiber,
    find_singular_fibers,
    surface_report,
    table1_expected,
)
from .modular import (
    EVEN_STRUCTURES,
    ODD_STRUCTURE,
    SpinStructure,
    TauPoint,
    dedekind_eta,
    eigenvalue_2dbar,
    eisenstein_e4,
    eisenstein_e6,
    epstein_zeta_logdet,
    epstein_zeta_prime0,
    epstein_zeta_value,
    j_from_tau,
    lattice_g2_g3,
    reduce_tau,
    theta_ab,
)
from .periods import Periods, agm, compute_periods, cubic_roots, periods_along_family
from .spectral import (
    CONTINUATION_OVER_CLOSED_FORM,
    AnnulusModel,
    FiberSpectralData,
    det_dirichlet_annulus,
    det_dirichlet_flat,
    det_prime_laplacian,
    det_twisted,
    det_twisted_all_even,
    fiber_volume,
    modular_discriminant,
    quillen_norm_from_periods,
    quillen_norm_sigma,
    quillen_norm_sigma_hat,
)

__version__ = "0.1.0"
