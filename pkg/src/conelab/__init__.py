"""Exact fractional and ordinary colouring of cones and (H, h)-cones over graphs."""

from .graph import (
    Graph,
    GraphFormatError,
    InvalidParameterError,
    circulant,
    complete,
    cycle,
    direct_product,
    empty,
    generate,
    kneser,
    parse_graph,
    path_with_loop,
    serialize_graph,
)
from .cones import (
    Apex,
    Base,
    ConeGraph,
    HomomorphismMap,
    Inner,
    cone,
    generalized_cone,
    join,
    k2_collapse_homomorphism,
    shift_homomorphism,
    verify_homomorphism,
)
from .indep import decompose_cone_independent, is_independent, maximal_independent_sets
from .ratlp import (
    FractionalClique,
    FractionalColouring,
    fractional_chromatic,
    verify_fractional_clique,
    verify_fractional_colouring,
)
from .chromatic import (
    chromatic_number,
    exponential_graph,
    find_homomorphism,
    loop_to_constant_distances,
)
from .certificates import (
    build_clique_certificate_odd,
    build_colouring_certificate_even,
    build_colouring_certificate_odd,
    check_parameter_identities,
    chromatic_upper_colouring,
    colouring_certificate,
    cone_parameters,
    theorem_value,
)
