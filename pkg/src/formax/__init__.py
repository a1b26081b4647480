"""Finite permutation group engine for maximal-subgroup strata and the
generalized solvable formation classes built on them, plus the verification
harness (reference tables, theorem scans, structural audits) and its CLI.
"""

from .catalog import GroupRecord, default_corpus, named_group, parse_group_file
from .formations import (
    Allowlist, ClassContext, ClassId, class_join_membership, class_meet,
    class_membership, f1_membership, formation_axiom_check, minimal_non_solvable,
    minimal_non_p_solvable, parse_class_id,
)
from .group import (
    Group, GroupError, Homomorphism, NotASubgroup, NotNormal, Subgroup,
    build_group, conjugate, core, coset_action, derived_subgroup, intersect,
    is_normal, is_prime_power, normal_closure, quotient_group,
)
from .lattice import (
    BoundExceeded, DEFAULT_BOUND, GroupProfile, Lattice, LatticeService,
    SubgroupSet, enumerate_classes, enumerate_subgroups, frattini_subgroup,
    max_over, maximal_subgroups, second_maximal_subgroups,
    strictly_second_maximal,
)
from .perm import DegreeMismatch, PermParseError, Permutation, parse_perm
from .pipelines import (
    ANTIHOM_EXAMPLES, REGISTERED_PIPELINES, EvalOptions, TheoremVerdict,
    antihom_check, base_set, contract, eval_pipeline, extend, generating_check,
    parse_pipeline, phi, render_pipeline, transport_to_quotient,
)
from .structure import (
    ChiefSeries, SimpleType, UnidentifiableFactor, chief_series,
    composition_factors, is_p_solvable, is_solvable,
    minimal_normal_subgroups, normal_subgroups, residual, solvable_residual,
)
from .suites import SuiteConfig, VerificationReport, run_suite
from .tables import EXPECTED_TABLES, reproduce_table

__version__ = "0.1.0"
