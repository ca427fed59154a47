"""Exact-arithmetic censuses of singular points on toric and rational surfaces.

The package is organized around five capabilities:

* :mod:`singcensus.lattice` — exact integer/rational linear algebra
  (Smith normal form, rational solves, definiteness tests);
* :mod:`singcensus.toric` — complete plane fans: quotient-singularity
  classification, resolution chains, positivity of -K, divisorial
  contractions, exhaustive and randomized bound scanning;
* :mod:`singcensus.fan_nd` — face censuses of simplicial fans in any
  dimension (Euler identity, binomial bounds, singular cone counts);
* :mod:`singcensus.surface` — Picard-lattice calculus for iterated blow-ups
  and contractions with exact discrepancies;
* :mod:`singcensus.wps` — singular strata of general weighted hypersurfaces.

Everything is exact: integers are Python ints, rationals are
:class:`fractions.Fraction`, and no operation here ever rounds.
"""

from .lattice import (
    SingularMatrixError,
    det2,
    det_int,
    invariant_factors,
    is_negative_definite,
    primitive,
    random_unimodular,
    smith_normal_form,
    solve_rational,
)
from .toric import (
    AMPLE,
    NEF_NOT_AMPLE,
    NOT_NEF,
    Cone2,
    Fan2,
    HJResolution,
    MMPStep,
    NotContractibleError,
    NotKNegativeError,
    QuotientSingularity,
    ToricSurfaceReport,
    anticanonical_positivity,
    census,
    contract_ray,
    fan_from_rays,
    hj_expand,
    ldp_enumerate,
    parabolic_fan_family,
    quotient_type,
    random_complete_fan,
    resolve_singularity,
    toric_intersection,
    toric_mmp,
)
from .fan_nd import (
    FanNd,
    fan2_to_nd,
    faces,
    simplicial_fan,
    singular_orbit_count,
    standard_fans,
)
from .fan_nd import census as census_nd
from .surface import (
    ContractionResult,
    CurveClass,
    DualGraph,
    NotNegativeDefiniteError,
    SurfaceModel,
    blow_up,
    check_equiv,
    contract,
    dual_graph,
    pairing,
    scenario_a1_cluster,
    scenario_fiber_collapse,
    self_intersection,
    start_hirzebruch,
    start_quadric,
    track,
)
from .wps import WeightedFamily, audit, audit_family, stratum_points, vertex_membership

__version__ = "0.1.0"
