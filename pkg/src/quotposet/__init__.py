"""Finite posets, their congruences and quotients."""

from __future__ import annotations

from .congruences import (
    ARROWS,
    CHECKERS,
    KINDS,
    CongruenceReport,
    Verdict,
    Witness,
    classify,
)
from .errors import QuotposetError
from .invariants import (
    IntPolynomial,
    PeckReport,
    char_poly,
    homogeneous_preservation_check,
    max_k_family,
    mobius,
    peck_report,
)
from .iso import automorphisms, find_isomorphism, is_isomorphic
from .lattices import (
    dm_completion,
    enumerate_lattice_congruences,
    m0_sublattice,
    reading_dm_check,
    smallest_lattice_congruence,
)
from .partition import Partition, enumerate_partitions
from .poset import (
    Poset,
    antichain,
    chain,
    enumerate_lattices,
    enumerate_posets,
    from_covers,
    from_matrix,
    from_relation,
)
from .quotients import (
    PermutationGroup,
    QuotientResult,
    orbit_partition,
    quotient_poset,
    universal_quotient,
)

__version__ = "0.1.0"

__all__ = [
    "ARROWS",
    "CHECKERS",
    "KINDS",
    "CongruenceReport",
    "IntPolynomial",
    "Partition",
    "PeckReport",
    "PermutationGroup",
    "Poset",
    "QuotientResult",
    "QuotposetError",
    "Verdict",
    "Witness",
    "antichain",
    "automorphisms",
    "chain",
    "char_poly",
    "classify",
    "dm_completion",
    "enumerate_lattice_congruences",
    "enumerate_lattices",
    "enumerate_partitions",
    "enumerate_posets",
    "find_isomorphism",
    "from_covers",
    "from_matrix",
    "from_relation",
    "homogeneous_preservation_check",
    "is_isomorphic",
    "m0_sublattice",
    "max_k_family",
    "mobius",
    "orbit_partition",
    "peck_report",
    "quotient_poset",
    "reading_dm_check",
    "smallest_lattice_congruence",
    "universal_quotient",
]
