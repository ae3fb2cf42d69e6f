"""Finite combinatorics of equivalence-relation towers and partition lattices."""

__version__ = "0.1.0"
SCHEMA_VERSION = 1

from .eqrel import (  # noqa: E402
    EqRel, GroundSet, classes, classes_within, enumerate_partitions,
    eq_discrete, eq_trivial, is_refinement,
)
from .errors import NoWitnessFound, PreconditionError, SchemaError, Unresolved  # noqa: E402
from .hstructure import (  # noqa: E402
    Coloring, HStructure, SpecialCert, basic, compress, exact_shape, extend,
    induce, is_special, quotient, shrink, special_index_set, special_width,
    tight_cert,
)
from .extraction import (  # noqa: E402
    BEST_EFFORT, GUARANTEED, canonical_k_extract, dichotomy_extract,
    injective_extract, mono_extract, php1, php2,
)
from .canonical import c_bound, c_closed_bound, c_exact, canonicalize, canonicity_index  # noqa: E402
from .lattice import (  # noqa: E402
    FiniteLattice, Representation, chain, is_isomorphic, is_ncpp,
    is_representation, linear_sum, search_ncpp,
)
from .gadgets import collapse_generator, median_tail_split  # noqa: E402
