"""Spherical designs on S^3 built from designs on S^2 through the Hopf map."""
from .errors import NoConvergence, OffSphere, ParseError, QuadratureFailure
from .generators import (
    IntervalDesign,
    antipodal_pair,
    gauss_legendre_interval,
    ingest_design,
    interval_design,
    product_design_s2,
    regular_gon,
)
from .hopf import (
    Section,
    act,
    fiber_point,
    fiber_quadrature,
    hopf_map,
    pullback,
    pullback_monomial,
    pushforward,
    pushforward_monomial,
    section,
)
from .lift import LiftConfig, cardinality_report, lift_design, lift_weighted
from .sphere import (
    MonomialS1,
    MonomialS2,
    MonomialS3,
    PointS1,
    PointS2,
    PointS3,
    PolynomialS2,
    PolynomialS3,
    WeightedDesign,
    basis_monomials,
    dim_polynomials,
    moment,
    moment_s1,
    moment_s2,
    moment_s3,
)
from .verify import StrengthReport, brute_force_certify, certify, residual

__version__ = "0.1.0"
