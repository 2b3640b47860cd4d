"""Strongly regular graphs from quadrics in PG(n,2), their Godsil-McKay
switches, and the binary codes that certify the switched graphs as new."""

from .gf2geom import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    GeometryError,
    QuadraticForm,
    Subspace,
    bilinear,
    canonical_form,
    classify_line,
    count_external_lines_through,
    enumerate_points,
    nucleus,
    perp,
    quadric_points,
    quadric_size,
    span,
)
from .srg import Graph, NotStronglyRegular, SrgParams, build_gamma, expected_params, verify_srg
from .switching import (
    NotSwitchingSet,
    SearchExhausted,
    SwitchCertificate,
    SwitchConfig,
    SwitchingError,
    T_formula,
    build_S,
    find_external_line,
    find_second_tangent_space,
    find_singular_subspace,
    find_tangent_space,
    gm_switch,
    make_config,
    validate_switching_set,
)
from .codes import (
    BinaryCode,
    CodeError,
    characteristic_vector,
    code_from_graph,
    contains,
    min_weight_codewords,
    weight_distribution,
)
from .distinguish import (
    FamilyReport,
    GraphSignature,
    are_isomorphic,
    classify_family,
    signature,
)

__version__ = "0.1.0"
