"""Context-free grammar toolkit: normal forms, derivation trees, pumping,
closure constructions and decision procedures."""

from importlib import resources

from .closure import concat, homomorphism, star, substitute, union
from .decide import (
    cyk, enumerate_words, is_empty, is_finite, member, oracle_infinite, oracle_nonempty,
    parse_tree,
)
from .grammar import (
    Grammar, GrammarError, GrammarSyntaxError, Kind, Production, Symbol, Word, format_word,
    load_grammar, parse_grammar, parse_word, serialize_grammar, validate, word,
)
from .pumping import (
    PREDICATES, LanguagePredicate, PumpDecomposition, decompose, pump, pump_check,
    pumping_constant, refute_cfl,
)
from .transform import (
    CnfGrammar, EmptyLanguageError, generating_variables, reachable_symbols, remove_epsilon,
    remove_unit, remove_useless, to_cnf,
)
from .trees import (
    DerivationTree, check_tree, longest_path_length, tree_from_derivation, yield_of,
)

__version__ = "0.1.0"


def load_corpus() -> dict[str, Grammar]:
    """The bundled example grammars, keyed by file stem."""
    out = {}
    for entry in sorted(resources.files(__package__).joinpath("corpus").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".cfg"):
            out[entry.name[:-4]] = parse_grammar(entry.read_text(encoding="utf-8"))
    return out
