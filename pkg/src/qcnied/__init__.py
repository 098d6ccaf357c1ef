"""Quasi-cyclic code-equivalence toolkit.

Structured parity-check matrices over small binary extension fields,
admission conditions on their circulant blocks, a Niederreiter-style
key wrap around them, exact automorphism (stabilizer) computation, and
distinguishability bounds for the induced hidden-subgroup instances.
"""

from .circulant import (
    BlockCirculant,
    CirculantBlock,
    ParityCheck,
    Perm,
    act,
    expand_pc,
    perm_equivalent,
)
from .conditions import (
    ConditionReport,
    Verdict,
    check_i,
    check_ii,
    check_iii,
    check_iv,
    check_v,
    check_variant,
    good_shape,
    sample_compliant,
    sample_variant,
    validate_all,
)
from .distinguish import (
    BoundReport,
    EnvelopeStats,
    class_size_sn,
    dk_bound,
    dk_bound_envelope,
    dk_bound_from_elements,
    gamma_t_bound,
    log_gl_order,
    logsumexp,
    min_class_size,
    s0_exact,
    s1_term,
    worst_case_h,
)
from .autgroup import (
    AutGroup,
    Lemma1Report,
    PairStab,
    classify,
    column_orbit,
    h_group_exhaustive,
    minimal_degree,
    reordering_count,
    stab_block,
    stab_full,
    verify_lemma1,
)
from .field import FieldCtx, default_modulus, is_irreducible
from .niederreiter import (
    ErrorCapacity,
    PrivateKey,
    PublicKey,
    decrypt,
    encrypt,
    error_capacity,
    keygen,
)
from . import errors, io

__all__ = [
    "AutGroup",
    "BlockCirculant",
    "BoundReport",
    "CirculantBlock",
    "ConditionReport",
    "EnvelopeStats",
    "ErrorCapacity",
    "FieldCtx",
    "Lemma1Report",
    "PairStab",
    "ParityCheck",
    "Perm",
    "PrivateKey",
    "PublicKey",
    "Verdict",
    "act",
    "check_i",
    "check_ii",
    "check_iii",
    "check_iv",
    "check_v",
    "check_variant",
    "class_size_sn",
    "classify",
    "column_orbit",
    "decrypt",
    "default_modulus",
    "dk_bound",
    "dk_bound_envelope",
    "dk_bound_from_elements",
    "encrypt",
    "error_capacity",
    "errors",
    "expand_pc",
    "gamma_t_bound",
    "good_shape",
    "h_group_exhaustive",
    "io",
    "is_irreducible",
    "keygen",
    "log_gl_order",
    "logsumexp",
    "min_class_size",
    "minimal_degree",
    "perm_equivalent",
    "reordering_count",
    "s0_exact",
    "s1_term",
    "sample_compliant",
    "sample_variant",
    "stab_block",
    "stab_full",
    "validate_all",
    "verify_lemma1",
    "worst_case_h",
]
