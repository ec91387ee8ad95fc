"""Local degrees and Euler characteristics of real polynomial germs.

Exact rational arithmetic throughout: local standard bases give the local
algebra of a map germ, the Eisenbud-Levine-Khimshiashvili signature gives its
local degree, and the degree feeds Euler characteristic formulas for links,
fibres and Milnor fibres.
"""

__version__ = "0.1.0"

from .errors import (
    ConsistencyFail,
    DegeneratePairing,
    DegenerateTarget,
    EngineError,
    EvenDegree,
    GermError,
    HypothesisNotAsserted,
    KExhausted,
    NegativeCount,
    NonIsolatedZero,
    NotFinite,
    NotWeightedHomogeneous,
    PolynomialParseError,
    RegularPoint,
    Unstable,
    ZeroOnMesh,
)
from .polynomial import (
    MapGerm,
    Polynomial,
    WeightedType,
    check_weighted_type,
    differentiate,
    euler_defect,
    evaluate,
    gradient,
    parse_polynomial,
)
from .standard_basis import (
    LocalAlgebra,
    StandardBasis,
    TermOrder,
    compute_standard_basis,
    normal_form,
    quotient_basis,
)
from .degree import (
    exact_signature,
    gram_form,
    jacobian_determinant,
    local_algebra,
    local_degree,
)
from .links import (
    link_chi,
    link_euler,
    link_euler_odd,
    smooth_link_chi,
    sphere_chi,
    szafraniec_setup,
    variety_link_euler,
)
from .relations import (
    ConsistencyReport,
    LinkTable,
    MilnorInvariants,
    aoki_semibranches,
    boundary_chi,
    charl1_check,
    dutertre_mod2,
    fukui_D,
    isolated_milnor_chi,
    khimshiashvili_chi,
    link_table,
    milnor_chi_from_link,
    semianalytic_chi,
    verify_all,
)
from .oracle import OracleConfig, pl_sphere_degree, winding_degree
