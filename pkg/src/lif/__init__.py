"""Logic of Information Flows: parsing, exact finite evaluation, input/output
analysis, composition elimination, FO translation and clique constructions."""

from .analysis import IOReport, fvars, inputs, is_io_disjoint, outputs, syn_io
from .constructions import CliqueSpec, build_all, build_alpha_2n, build_alpha_exists_3n
from .errors import (
    ArityError,
    FreshVariableError,
    LIFError,
    LIFSyntaxError,
    MismatchError,
    PreconditionError,
    UniverseError,
    UnknownModuleError,
    VocabularyError,
)
from .folink import fo_evaluate, fo_to_lif, lif_to_fo, parse_fo, render_fo
from .oracle import determines, inertially_cylindrified, witness_inputs, witness_outputs
from .rewrite import (
    FreshVarSupply,
    build_move,
    compose_io_disjoint,
    eliminate_compositions,
    expand_redundant,
    move_right,
)
from .semantics import (
    BRV,
    Domain,
    Interpretation,
    brv_compose,
    brv_converse,
    brv_cyl,
    brv_difference,
    brv_intersect,
    brv_select,
    brv_union,
    equivalent_on,
    evaluate,
    load_interpretation,
)
from .syntax import Universe, Vocabulary, parse_expression, parse_vocabulary, render

from types import ModuleType as _ModuleType

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _ModuleType))
