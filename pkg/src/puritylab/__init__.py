"""purity-lab: exact purity/flatness/injectivity decisions for finitely
presented modules over finite commutative local algebras."""

from .algebra import (
    Algebra,
    AlgebraError,
    Ideal,
    annihilator,
    build_named,
    chain,
    double_annihilator_test,
    ideal_generate,
    min_generators,
    square_zero,
    truncated,
)
from .bounds import Budget, BudgetExceededError, Settings, UpTo
from .checkers import (
    PurityQuery,
    check_end_local,
    check_fitting,
    check_flat,
    check_free,
    check_injective,
    check_purity,
    check_purity_via_tensor,
    check_sequence_purity,
)
from .constructions import (
    StaircaseSpec,
    auslander_bridger_dual,
    fq_dual,
    staircase_module,
)
from .modules import (
    GenRelProfile,
    Module,
    ModuleMap,
    Submodule,
    direct_sum,
    enumerate_submodules,
    free_module,
    from_presentation,
    has_free_summand,
    hom_space,
    is_isomorphic,
    minimal_presentation,
    quotient,
    submodule_span,
    tensor,
    tensor_map_on_inclusion,
    hom_restriction,
)
from .report import CheckReport, canonical_json, emit_report
from .suites import SUITES, run_suite, suite_names
from .workspace import Workspace, parse_workspace, run_workspace

__version__ = "0.1.0"
