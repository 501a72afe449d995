"""slicedeg: certified bounds for the slicing degree of knots.

The slicing degree sd+(K) is the least k >= 0 such that K bounds a smooth
disk of self-intersection -k in a punctured connected sum of negatively
oriented complex projective planes.  This package ingests knot invariants
(signature, Rasmussen s over any characteristic, tau, V_s data, instanton
Gamma values, surgery friendships, construction witnesses), enumerates the
candidate disk homology classes at each level, and certifies intervals
[lower, upper] with per-class obstruction witnesses.  All verdict
arithmetic is exact.
"""

from .engine import (
    ALL_OBSTRUCTIONS,
    BetaTableRow,
    BoundReport,
    ClassCertificate,
    CyclicRelationWarning,
    EngineConfig,
    LevelCertificate,
    LowerBoundSearch,
    TableRow,
    beta_table,
    bound_report,
    display_interval,
    lower_bound,
    report_table,
    report_to_jsonable,
    upper_bound,
)
from .knots import (
    DatabaseError,
    Diagnostic,
    FriendshipRecord,
    KnotDatabase,
    KnotRecord,
    UpperWitness,
    VsSpec,
    bundled_database_path,
    load_knot_db,
    parse_knot_db,
    serialize_knot_db,
    validate_record,
)
from .lattice import (
    HomologyClass,
    LaurentPoly,
    OddVector,
    enumerate_classes,
    enumerate_odd_vectors,
    eta,
    kappa_min,
)
from .obstructions import (
    Verdict,
    beta_adjunction,
    double_twist_gamma,
    friend_rule,
    gamma_21,
    gamma_general,
    null_class_check,
    stau_bound,
    vs_obstruction,
)
from .staircase import (
    NotLSpaceForm,
    OracleDisagreement,
    Staircase,
    VsSequence,
    VsUnavailable,
    WindowTooSmall,
    nu_plus,
    staircase_from_alexander,
    torsion_coefficients,
    torsion_sequence,
    vs_lspace_formula,
    vs_of,
    vs_staircase_oracle,
    vs_thin,
)

__version__ = "0.1.0"
