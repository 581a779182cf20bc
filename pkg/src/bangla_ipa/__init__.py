"""
bangla-ipa - Bengali text to IPA transcription, normalization and evaluation.
"""

from .core import (
    BanglaIpaError,
    EvalReport,
    LexiconEntry,
    NumberMode,
    TranscriptionOptions,
)

from .script import segment_graphemes, tokenize

from .phoneset import (
    Phone,
    PhoneSeq,
    normalize_ipa,
    parse_ipa,
    render_ipa,
    validate_phoneseq,
)

from .normalize import (
    expand_abbreviation,
    expand_mixed,
    number_to_words_cardinal,
    number_to_words_digits,
)

from .lexicon import Lexicon, load_default_lexicon, load_lexicon, merge

from .g2p import G2PEngine, SentenceResult, TranscriptionResult, transcribe_sentence, transcribe_word

from .eval import cer, edit_distance_alignment, evaluate_corpus, load_corpus, per, wer

__version__ = "1.0.0"

__all__ = [
    # Core
    "BanglaIpaError",
    "EvalReport",
    "LexiconEntry",
    "NumberMode",
    "TranscriptionOptions",

    # Script
    "segment_graphemes",
    "tokenize",

    # Phone set
    "Phone",
    "PhoneSeq",
    "normalize_ipa",
    "parse_ipa",
    "render_ipa",
    "validate_phoneseq",

    # Normalization
    "expand_abbreviation",
    "expand_mixed",
    "number_to_words_cardinal",
    "number_to_words_digits",

    # Lexicon
    "Lexicon",
    "load_default_lexicon",
    "load_lexicon",
    "merge",

    # G2P
    "G2PEngine",
    "SentenceResult",
    "TranscriptionResult",
    "transcribe_sentence",
    "transcribe_word",

    # Evaluation
    "cer",
    "edit_distance_alignment",
    "evaluate_corpus",
    "load_corpus",
    "per",
    "wer",
]
