"""Orbit-space calculus of skewed R-covered Anosov flows.

The geodesic flow of a hyperbolic surface is the concrete instance: its orbit
space is the strip ``s - 1 < u < s`` and the fundamental group acts through
the boundary action of a Fuchsian group.
"""

from .hyperbolic import (
    CirclePoint,
    GroupSpec,
    Kind,
    LiftedCircleMap,
    MobiusElement,
    axis_endpoints,
    classify,
    compose,
    enumerate_elements,
    evaluate,
    lift,
)
from .orbit_space import (
    OrbitPoint,
    PointPair,
    act,
    double_class,
    eta,
    eta_inverse,
    orbit_of_element,
    project_to_universal_circle,
)
from .lozenges import Chain, Lozenge, Membership, check_stabilized, contains, lozenge_of, simplicity_check
from .cocylinder import (
    cardinality_shift_check,
    cocyl_report,
    find_linking_witness,
    linked,
    self_intersection_oracle,
)
from .annulus import build_trivialization, crossing_elements, verify_claim
from .groups import modular_torus, octagon_genus2

__version__ = "0.1.0"
