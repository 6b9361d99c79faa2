from .alphabet import (
    ALPHABET_SIZE,
    VOWELS,
    WORD_END,
    index_to_letter,
    letter_to_index,
    normalize_to_words,
    symbols_to_words,
    word_to_symbols,
)
from .ngram import (
    EnhancedLetterModel,
    NgramModel,
    model_codelength,
    sample_words,
    train_enhanced,
    train_ngram,
)
from .pcfg import (
    DerivationError,
    GrammarError,
    ParseDerivation,
    Pcfg,
    Rule,
    derivation_terminals,
    pcfg_decode,
    pcfg_derivation_cost,
    pcfg_encode,
)

__all__ = [
    "ALPHABET_SIZE",
    "DerivationError",
    "EnhancedLetterModel",
    "GrammarError",
    "NgramModel",
    "ParseDerivation",
    "Pcfg",
    "Rule",
    "VOWELS",
    "WORD_END",
    "derivation_terminals",
    "index_to_letter",
    "letter_to_index",
    "model_codelength",
    "normalize_to_words",
    "pcfg_decode",
    "pcfg_derivation_cost",
    "pcfg_encode",
    "sample_words",
    "symbols_to_words",
    "train_enhanced",
    "train_ngram",
    "word_to_symbols",
]
