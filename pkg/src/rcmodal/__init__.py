"""Toolkit for edge-changing modal logics.

Six dynamic operators (local/global edge deletion, addition, inversion)
with a direct model checker, equivalence-preserving compilation into hybrid
logic with binders, a syntactic decidable-fragment analyzer, and a bounded
finite-model search used as an empirical equivalence oracle.
"""

from .syntax import (
    And, At, Bottom, Box, Diamond, Down, DynBox, DynDiamond, Exists, Forall,
    Implies, ModalProfile, Nominal, Not, Or, ParseError, Prop, TOP,
    desugar, parse_hybrid, parse_rc, print_formula, profile, prop_names,
    nominal_names, to_nnf,
)
from .kripke import (
    FrameClassReport, KripkeModel, ModelError, ModelFile, UpdateError,
    count_models, enumerate_models, frame_classify, load_model,
    model_from_dict, model_to_dict, save_model, update,
)
from .rc_semantics import rc_check
from .hybrid_semantics import (
    UnboundNominalError, free_nominals, hy_check, initial_assignment,
)
from .translator import (
    FreshNames, MixedFamilyError, SwapDepthError, TranslateOptions,
    TranslationError, belongs, canonical_rename, contains_universal,
    is_closed, is_sat_edges, simplify_for_display, translate, translate_eco,
)
from .fragments import (
    FragmentReport, NotApplicableError, box_binder_box_free, fragment_check,
    pattern_tokens,
)
from .satsearch import (
    OracleReport, SatResult, SplitMix64, oracle_compare, random_rc_formula,
    sat_bounded,
)

__version__ = "0.1.0"
