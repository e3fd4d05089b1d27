"""Evolving multialgebras with machine-model translators.

The package splits into the algebraic core (signatures, values, partial
interpretations, term evaluation, finitely presented functionals), an
execution engine producing replayable traces, reference simulators for
window Turing machines, transition RAMs, and grammars, and bidirectional
translators that realize each machine model as a fixed class of machines
over the core.
"""

from .algebra import (
    Atoms,
    Builtin,
    DefaultedTable,
    Domain,
    FiniteEnum,
    FiniteSubsets,
    FiniteTable,
    IntLine,
    MaybeElement,
    Naturals,
    PartialInterpretation,
    State,
    Status,
    Value,
    Words,
    element,
    eval_multiterm,
    eval_term,
    interpretations_equal,
    oplus,
    render_value,
    values_equal,
)
from .classes import ClassReport, check_class
from .engine import (
    Ema,
    Input,
    Outcome,
    Scripted,
    Seeded,
    Trace,
    init_state,
    reachable_words,
    render_trace,
    run,
    step,
)
from .functional import (
    BetaRow,
    BetaTable,
    GuardPair,
    PairedMultiterm,
    Presentation,
    StepResult,
    UndefinedAt,
    Updates,
    UpdateTuple,
    apply_presentation,
    evaluate_guards,
    normalize_presentation,
    validate_presentation,
)
from .machines import (
    Content,
    Grammar,
    OpApply,
    Tram,
    TramConfig,
    TmConfig,
    WindowTm,
    grammar_derives,
    grammar_step,
    tm_local_config,
    tm_run,
    tm_step,
    tram_addressed,
    tram_run,
    tram_step,
)
from .signature import (
    GroundTerm,
    NSortType,
    Signature,
    Symbol,
    term,
    type_check_term,
    validate_signature,
)
from .translate import (
    ema_to_grammar,
    ema_to_tm,
    ema_to_tram,
    grammar_to_ema,
    lockstep_grammar,
    lockstep_tm,
    lockstep_tram,
    normalize_ema,
    tm_to_ema,
    tram_to_ema,
)

__version__ = "0.1.0"
