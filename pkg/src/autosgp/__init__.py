"""Expanding and asynchronous automaton semigroups acting on rooted trees."""

from .action import Element, WreathForm, act, act_stream, compose_wreath, section, section_automaton, wreath
from .automaton import (
    AutomatonClass,
    AutomatonError,
    ClassViolation,
    ParseError,
    PartialTransducer,
    Transducer,
    ValidationError,
    check_tables,
    classify,
    parse,
    parse_partial,
    serialize,
    to_dot,
    validate,
)
from .constructions import (
    complete_partial,
    direct_product,
    fpcm_automaton,
    gallery,
    inverse_automaton,
    normal_ideal_extension,
    pcp_automaton,
    prefix_code_decoder,
    union,
)
from .deciders import (
    BoundaryCensus,
    PathNFA,
    SeparationWitness,
    agreement_words,
    boundary_fixed_census,
    build_path_nfa,
    difference_witness,
    equal,
    find_period,
    fixed_words,
    injective,
    is_idempotent,
    is_identity_element,
    is_identity_function,
    nfa_path_injective,
    separate,
)
from .explorer import BallReport, check_presentation, enumerate_ball, growth
from .words import (
    Alphabet,
    CommutationRelation,
    Ordering,
    Word,
    concat,
    is_prefix,
    is_trace_normal,
    project,
    shortlex_compare,
    trace_normal_form,
)

__version__ = "0.1.0"
