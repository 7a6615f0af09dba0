"""String C-group representations of finite permutation groups.

The package enumerates every abstract regular polytope whose automorphism
group is a given permutation group, up to isomorphism and duality, using a
dihedral-subgroup search for rank three and an involution-centralizer
search for higher ranks.
"""

from .analysis import (
    DihedralRep,
    InvolutionClass,
    centralizer,
    conjugacy_classes,
    dihedral_class_reps,
    element_class_reps,
    involution_classes,
    inverting_involutions,
    normalizer_of_cyclic,
    reduce_degree,
    table_of,
)
from .catalog import CatalogEntry, entry_from_tuple, read_catalog, verify_entry, write_catalog
from .dedup import (
    Fingerprint,
    are_isomorphic,
    canonical_form,
    dedup_catalog,
    fingerprint,
    outer_automorphisms,
)
from .fixtures import FixtureError, load_fixture, load_group, parse_group
from .perm import PermGroup, Permutation, StabChain, TooLargeError, build_chain
from .rank3 import classify_rank3
from .rank_high import classify_high, enumerate_inner, insert_rho1
from .sggi import (
    GeneratorTuple,
    SchlafliType,
    build_polytope,
    check_c2_bruteforce,
    dual,
    is_string,
    is_string_c_group,
    parabolic,
    schlafli,
)
from .table import GroupTable

__version__ = "0.1.0"
