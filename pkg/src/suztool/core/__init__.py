"""Generic finite-group engine over materialised universes."""

from .classes import ConjugacyData, conjugacy_classes, conjugacy_classes_pairwise
from .iso import (
    abelian_group,
    brute_force_isomorphic,
    cyclic_group,
    direct_product,
    is_isomorphism,
    isomorphisms,
    relabel,
)
from .lattice import all_subgroups, normal_subgroups
from .lemma22 import verify_lemma22
from .oracle import (
    OracleGroup,
    Subgroup,
    closure,
    generating_set,
    normal_closure,
    subgroup_as_group,
    trivial_subgroup,
    whole_group,
)
from .structure import (
    GroupFingerprint,
    center,
    derived_series,
    derived_subgroup,
    exponent,
    fingerprint,
    frattini_2group,
    omega1,
    quotient,
)

__all__ = [
    "ConjugacyData",
    "GroupFingerprint",
    "OracleGroup",
    "Subgroup",
    "abelian_group",
    "all_subgroups",
    "brute_force_isomorphic",
    "center",
    "closure",
    "conjugacy_classes",
    "conjugacy_classes_pairwise",
    "cyclic_group",
    "derived_series",
    "derived_subgroup",
    "direct_product",
    "exponent",
    "fingerprint",
    "frattini_2group",
    "generating_set",
    "is_isomorphism",
    "isomorphisms",
    "normal_closure",
    "normal_subgroups",
    "omega1",
    "quotient",
    "relabel",
    "subgroup_as_group",
    "trivial_subgroup",
    "verify_lemma22",
    "whole_group",
]
