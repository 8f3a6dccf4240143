"""Context-free grammar simplification with a bounded language oracle."""

from .analysis import (
    PredicateReport,
    accessible_set,
    nullable_set,
    predicates,
    unit_pairs,
    useful_set,
)
from .derivation import (
    DerivationStep,
    DerivationTrace,
    SearchCaps,
    apply_step,
    derives_witness,
    enumerate_language,
    min_yield,
    produces,
    replay,
)
from .equivalence import EquivVerdict, Status, bounded_equiv
from .gram_io import parse_grammar, serialize_grammar
from .grammar import Grammar, N, Rule, Symbol, T, Tag, lift_alphabet, max_rhs_len, validate
from .randgen import GenConfig, random_grammar, random_nonempty_grammar
from .transform import (
    EmptyLanguageError,
    PassReport,
    eliminate_empty,
    eliminate_inaccessible,
    eliminate_unit,
    eliminate_useless,
    simplify_pipeline,
)

__version__ = "0.1.0"
