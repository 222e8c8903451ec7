"""Desk-scale numerics for geometric Hardy inequalities on the Heisenberg group.

The package splits into:

  group     -- Heisenberg and step-two group algebra (products, dilations,
               horizontal planes, anisotropic convex combinations)
  solvers   -- the monotone scalar equations behind the distances
  norms     -- gauge and Carnot-Caratheodory quasi-norms
  distance  -- boundary distances for half-spaces, torii, convex polytopes,
               nearest-point maps, and the brute-force sampling oracle
  calculus  -- horizontal gradient/Laplacian/p-Laplacian closed forms,
               finite-difference oracles, superharmonicity certificates,
               and the torus radii constants
  lab       -- Rayleigh-quotient probes of the Hardy constant ((p-1)/p)^p,
               the uncertainty product bound, weak H-concavity sampling,
               and the CC-Lipschitz probe
  cli       -- batch command-line interface with JSON/CSV reports
"""

from .group import (
    CylCoords,
    GroupElement,
    HeisenbergPoint,
    StepTwoGroup,
    convex_combination,
    dilate,
    heisenberg_group,
    horizontal_point,
    identity,
    in_horizontal_plane,
    inverse,
    multiply,
    step_two_dilate,
    step_two_inverse,
    step_two_multiply,
    to_group_element,
    to_heisenberg_point,
)
from .solvers import CCAngle, mu, q_func, solve_cubic_s, solve_mu, solve_q_phi
from .norms import cc_distance, cc_norm, cc_norm_rt, gauge_distance, gauge_norm, gauge_norm_rt
from .distance import (
    ConvexPolytope,
    HalfSpace,
    NearestPointResult,
    Torus,
    UnsupportedConfiguration,
    boundary_distance,
    brute_force_boundary_distance,
    domain_from_config,
    d_cc_halfspace,
    d_eucl_torus,
    d_gauge_halfspace,
    d_halfspace,
    d_polytope,
    inverse_nearest_cc,
    inverse_nearest_gauge,
    nearest_point_cc,
    nearest_point_gauge,
)
from .calculus import (
    CCLapReport,
    GaugeDerivs,
    HorizontalDerivs,
    PLapReport,
    TorusCertificate,
    beta_constant,
    beta_details,
    cc_halfspace_laplacian,
    closed_form_plap_gauge,
    fd_cyl_derivs,
    fd_horizontal_gradient,
    gauge_derivs,
    horizontal_gradient_sq_cyl,
    horizontal_laplacian_cyl,
    p0_threshold,
    p_laplacian_cyl,
    torus_W,
    torus_certificate,
    torus_derivs,
)
from .lab import (
    CounterexampleResult,
    HConcavityScan,
    LipschitzReport,
    QuotientReport,
    TestFunctionSpec,
    UncertaintyReport,
    epsilon_sweep,
    h_concavity_counterexample_search,
    h_concavity_cube_scan,
    h_concavity_sample,
    hardy_quotient,
    lipschitz_probe,
    truncated_boundary_mass,
    uncertainty_check,
)

__version__ = "0.1.0"
