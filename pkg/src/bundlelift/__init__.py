"""Principal SO(k) bundles over the simply connected cohomogeneity one
4-manifolds: classification data, group-diagram invariants, and decisions
about commuting lifts and torus reductions."""

__version__ = "0.1.0"

from .errors import (
    ActionError,
    BundleLiftError,
    DiagramError,
    InvalidBundleError,
    InvalidClassError,
)
from .manifolds import (
    CP2,
    CP2_MINUS_CP2,
    CP2_PLUS_CP2,
    MANIFOLDS,
    S2xS2,
    S4,
    BaseManifold,
    ManifoldId,
    get_manifold,
    mod2,
    residue_mod4,
    square,
)
from .invariants import (
    INFINITE,
    BundleInvariants,
    ChernData,
    discriminant,
    h4_order,
    pair_from_so4,
    so4_from_chern,
    so4_from_pair,
    stabilize,
    table_a,
    validate,
)
from .diagrams import (
    Cp2So3LiftDiagram,
    FixedPointDiagram,
    RepDecomposition,
    SpinLiftDiagram,
    Su2Irrep,
    SuspensionDiagram,
    check_consistency,
    cp2_so3_invariants,
    enumerate_decompositions,
    fixed_point_invariants,
    m_value,
    spin_cover,
    suspension_invariants,
)
from .lift import (
    Action,
    ActionKind,
    Answer,
    Verdict,
    achievable_suspension_p1,
    check_witness,
    decide_lift,
    torus_reduction,
)
from .oracles import (
    SnfResult,
    cokernel_order,
    mv_h4_cp2_so3,
    mv_h4_fixpoint,
    residue_scan,
    scan_sign_anomalies,
    smith_normal_form,
)
