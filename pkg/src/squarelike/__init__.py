"""Decision procedure for the first-order theory of square-like abelian groups.

Groups are represented by their Szmielew invariants
(:class:`~squarelike.core.SzmielewDescriptor`); sentences are Boolean
combinations of invariant atoms.  The main entry points are
:func:`satisfiable_square_like` and :func:`in_theory`.
"""

from .classifier import (
    NotSquareLike,
    discriminating_companion,
    elem_equiv,
    is_discriminating,
    is_square_like,
)
from .consistency import satisfiable_szmielew
from .core import (
    FALSE,
    OMEGA,
    TRUE,
    ZERO,
    And,
    Family,
    InvariantAtom,
    Lit,
    Not,
    Or,
    PrimeComponent,
    SzmielewDescriptor,
    atom,
    direct_sum,
)
from .decider import (
    InconsistentInput,
    InvariantViolation,
    Membership,
    conj_discr_sat,
    in_theory,
    p_conj_discr_sat,
    satisfiable_square_like,
)
from .evaluator import atom_value, eval_atom, eval_sentence
from .normalizer import gamma_lift, negate_atom, to_nnf, to_positive_dnf
from .parser import (
    ParseError,
    descriptor_from_json,
    descriptor_to_json,
    format_descriptor,
    format_sentence,
    parse_descriptor,
    parse_sentence,
)

__all__ = [
    "FALSE", "OMEGA", "TRUE", "ZERO",
    "And", "Family", "InvariantAtom", "Lit", "Not", "Or",
    "PrimeComponent", "SzmielewDescriptor", "atom", "direct_sum",
    "NotSquareLike", "discriminating_companion", "elem_equiv",
    "is_discriminating", "is_square_like",
    "satisfiable_szmielew",
    "InconsistentInput", "InvariantViolation", "Membership",
    "conj_discr_sat", "in_theory", "p_conj_discr_sat", "satisfiable_square_like",
    "atom_value", "eval_atom", "eval_sentence",
    "gamma_lift", "negate_atom", "to_nnf", "to_positive_dnf",
    "ParseError", "descriptor_from_json", "descriptor_to_json",
    "format_descriptor", "format_sentence", "parse_descriptor", "parse_sentence",
]
