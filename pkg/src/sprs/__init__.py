"""String pointer reduction system for gene assembly in ciliates.

Legal strings of pointers, the snr/spr/sdr reduction rules, reduction
graphs with reality and desire edges, and decision procedures for
reducibility, snr counting, and successfulness per rule subset.
"""

from .decide import (
    OverlapGraph,
    ReducibilityVerdict,
    exists_reduction_to_domain,
    is_reducible,
    is_reducible_spr_sdr,
    overlap_graph,
    reduct_of,
    snr_count,
    successful_in,
)
from .errors import (
    CapacityError,
    DomainError,
    NotApplicableError,
    ParseError,
    SprsError,
    StructureError,
)
from .graph import (
    ComponentSummary,
    ReductionGraph,
    build_reduction_graph,
    components,
    export_dot,
    graphs_isomorphic,
    reduct,
    reduction_function,
    summary_text,
)
from .rules import (
    FULL_RULESET,
    Rule,
    applicable_rules,
    apply_reduction,
    apply_rule,
    enumerate_successful_reductions,
    find_reduction,
    format_reduction,
    is_reducible_oracle,
    parse_reduction,
    parse_rule,
    parse_ruleset,
    reduction_domain,
    rule_applicable,
    rule_domain,
)
from .strings import (
    MdsPattern,
    bar,
    domain,
    encode_pattern,
    format_pattern,
    format_string,
    ident,
    interval,
    inverse,
    is_elementary,
    is_legal,
    is_positive,
    is_realistic,
    is_realizable,
    parse_pattern,
    parse_string,
    pointers_overlap,
    realistic_witness,
    remove_pointers,
)

__all__ = [name for name in dir() if not name.startswith("_")]
