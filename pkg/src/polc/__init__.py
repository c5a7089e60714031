"""Decide membership of regular languages in Pol(C), co-Pol(C) and UPol(C).

Typical use::

    from polc import Dfa, StClass, syntactic, compute_pairs, decide_pol

    lang = Dfa.from_regex("(a|b)*a(a|b)*", "ab")
    sd = syntactic(lang)
    verdict = decide_pol(sd, compute_pairs(sd.morphism, StClass(lang.alphabet)))
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .algebra import (
    FiniteMonoid,
    Morphism,
    OrderedMonoid,
    SyntacticData,
    evaluate,
    idempotent_power,
    idempotents,
    is_upper_set,
    monoid_report,
    syntactic,
)
from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    accepts,
    bool_op,
    compare,
    compile_nfa,
    complement,
    equivalent,
    includes,
    intersection,
    parse_regex,
    quotient,
    union,
    upward_closure,
)
from .baseclass import (
    AtClass,
    BaseClass,
    CanonicalPreorder,
    FiniteLattice,
    LatticeClass,
    StClass,
    alphabet_profiles,
    check_char_property,
    class_from_spec,
    leq_C,
    load_lattice,
    member,
    period,
    saturate_lattice,
    separate,
)
from .decide import Verdict, decide, decide_copol, decide_pol, decide_upol
from .errors import InternalInvariantError, PolcError, RegexSyntaxError, ResourceLimitError
from .expr import Base, Concat, Marked, PolExpr, Union, expr_to_dfa, render
from .forest import Binary, Idempotent, Leaf, build_forest, validate_forest
from .laws import run_laws
from .pairs import PairRelation, check_relation_laws, compute_pairs, compute_saturated
from .witness import SynthesisResult, compute_Ke, synthesize, verify_witness

__all__ = [name for name in dir() if not name.startswith("_")]
