"""Orbit geometry of semisimple pseudo-Riemannian symmetric spaces.

Root systems of symmetric pairs, shape operators and complex focal radii of
isotropy and Hermann-type orbits, cohomogeneity tables, and independent
brute-force verifiers.
"""
from .errors import (
    AlgebraMismatch,
    ClusteringAmbiguous,
    DegenerateSubspace,
    DimensionGuard,
    InvalidParams,
    MaximalityNotReached,
    NewtonDivergence,
    NonAbelianSpan,
    NonCommutingInvolutions,
    NonSemisimpleW,
    NormalizationSingular,
    SingularDirection,
    StepTooLarge,
    SymOrbitsError,
    UnsupportedFamily,
    UnsupportedSigma,
    WNotInCartan,
)
from .hermann import (
    CohomogeneityRow,
    HermannConfiguration,
    cohomogeneity,
    generate_table,
    hermann_configuration,
    hermann_orbit_spectrum,
)
from .liealg import AlgebraElement, MatrixLieAlgebra, ad_operator, bracket, construct_algebra, is_semisimple_element
from .oracle import (
    ScanReport,
    brute_force_roots,
    determinant_focal_scan,
    jacobi_integrate,
    variation_shape_estimate,
)
from .orbits import (
    FocalSet,
    OrbitPoint,
    OrbitSpectrum,
    complex_focal_radii,
    dco_dsi,
    isotropy_shape_spectrum,
    isotropy_tangent_split,
    jacobi_spectrum,
    partial_tube_shape,
    strong_jacobi_field,
)
from .pairs import Involution, SymmetricPairData, build_pair, hermann_setup
from .roots import CartanSubspace, RestrictedRootSystem, Root, maximal_abelian, rank, restricted_roots, root_vectors

__version__ = "0.1.0"
