"""Spectra of the CMC stability operator along deforming domain families.

The package computes Dirichlet and volume-constrained ("twisted")
eigenvalue curves of L f = -Laplacian f - |B|^2 f on monotone families of
domains over model CMC surfaces, locates extremal domains and
Jacobi-field events, and verifies the global Morse index identity, the
index sandwich, eigenvalue interlacing and the Jacobi-field distribution
bounds at desk scale.
"""

from .analytic import (
    PsiZeros,
    bessel_j,
    bessel_zero,
    circle_dirichlet_lambda,
    circle_twisted_lambda,
    gap_lambda1,
    psi,
    psi_zero,
    psi_zeros,
    twisted_det,
)
from .discretize import (
    AssembledOperator,
    Grid1D,
    assemble_interval,
    assemble_radial,
    mean_functional,
    tridiagonal_dirichlet_eigenvalue,
)
from .eig import (
    EigenResult,
    IndexNullity,
    default_null_tol,
    index_nullity,
    rayleigh,
    solve_dirichlet,
    solve_spectra,
    solve_twisted,
    solve_twisted_dense,
)
from .errors import (
    ConsistencyError,
    GeometryError,
    InputError,
    NumericError,
    ParameterRangeError,
)
from .morse import (
    EigenCurve,
    EventKind,
    JacobiEvent,
    MorseReport,
    Resolution,
    detect_events,
    spectra_at,
    trace_curves,
    verify,
)
from .surfaces import (
    CIRCLE_IMMERSED_LINE,
    FLAT_LINE,
    UNIT_CYLINDER,
    UNIT_SPHERE2,
    DomainFamily,
    DomainSlice,
    FamilyKind,
    SurfaceKind,
    SurfaceModel,
    b_norm_sq,
    circle_interval_family,
    cylinder_disk_family,
    domain_at,
    family_metadata,
    flat_gap_family,
    sphere_cap_family,
)

__version__ = "0.1.0"
