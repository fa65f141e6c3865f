"""Chart parser for multimodal categorial grammars.

Slash elimination, gap-threading extraction, head-wrap stacks, product
rules, left-node raising, and quoted-speech attribution, over a
weighted chart with subsumption and lambda-term semantics.
"""

from .chart import (
    ChartItem,
    Chart,
    EMPTY_EXT,
    ExtractionSet,
    ExtractionTag,
    Leaf,
    Node,
    ParseResult,
    WrapEntry,
    check_coherence,
    disjoint_union,
    insert,
    run,
    subsumption_key,
)
from .formula import (
    Atom,
    Box,
    Dia,
    Dir,
    Formula,
    FormulaError,
    Mode,
    Product,
    Slash,
    match_extraction_licensor,
    parse_formula,
    print_formula,
)
from .lexicon import (
    LexEntry,
    Lexicon,
    LexiconError,
    UnknownWordError,
    lexical_items,
    load_lexicon,
)
from .proof import (
    Derivation,
    derivation_to_json,
    extract_derivation,
    render_trace,
    yield_of,
)
from .rules import RuleSet, scan_triggers
from .semantics import (
    Abs,
    App,
    BudgetExceededError,
    Const,
    FreshVars,
    LambdaTerm,
    Pair,
    Proj,
    TermError,
    Var,
    alpha_equal,
    beta_normalize,
    parse_term,
    print_term,
)

__version__ = "0.1.0"
