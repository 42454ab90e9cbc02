"""Exact computation in the Baumslag-Gersten group and certification of a
2-generated 2-related group with no non-trivial finite quotients."""

from .bs12 import (
    A_GEN,
    B_GEN,
    IDENTITY,
    Dyadic,
    HElement,
    bit_cap,
    get_bit_cap,
    h_eval_word,
    h_inv,
    h_is_identity,
    h_mul,
    h_pow,
    in_A,
    in_B,
    set_bit_cap,
)
from .errors import (
    DegreeMismatch,
    EmptySequence,
    HnnForgeError,
    InvalidSpec,
    NotCertified,
    ResourceLimit,
    WordSyntaxError,
)
from .hnn import (
    GWord,
    britton_reduce,
    cyclic_permutations,
    cyclic_reduce,
    element_of_H,
    g_inv,
    g_mul,
    is_cyclically_reduced,
    is_identity_in_G,
    is_reduced,
    star_check,
    t_length,
)
from .relator import (
    ConditionReport,
    RelatorSpec,
    build_relator,
    default_spec,
    exponent_sequence,
    parse_u_list,
    validate,
)
from .small_cancellation import (
    PieceReport,
    collins_verify,
    common_prefix_blocks,
    conjugate_prefix_check,
    h_conjugate,
    inverse_block_seq,
    max_common_run,
    piece_bound,
)
from .quotients import (
    Perm,
    SearchReport,
    baumslag_relation_holds,
    certified_order_bound,
    relator_image,
    search_homs_G,
    search_homs_K,
)
from .certify import CertReport, certify
from .words import format_word, parse_word

__version__ = "0.1.0"
