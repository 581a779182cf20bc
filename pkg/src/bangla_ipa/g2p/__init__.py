"""
Rule-based grapheme-to-phoneme engine for Bengali.
"""

from .base import Position, Rule, TraceStep, WordState

from .rules import (
    ALL_RULE_IDS,
    BaseMapRule,
    InherentVowelRule,
    GlideRule,
    NasalizationRule,
    DiphthongRule,
    SuffixLengthRule,
    HRegisterRule,
    SyllableDotRule,
    default_rules,
    syllable_breaks,
)

from .engine import (
    G2PEngine,
    TranscriptionResult,
    SentenceResult,
    map_base_cluster,
    resolve_inherent_vowels,
    apply_glide_rules,
    apply_nasalization,
    detect_diphthongs,
    mark_suffix_length,
    transcribe_word,
    transcribe_sentence,
)

__all__ = [
    # Base
    "Position",
    "Rule",
    "TraceStep",
    "WordState",

    # Rules
    "ALL_RULE_IDS",
    "BaseMapRule",
    "InherentVowelRule",
    "GlideRule",
    "NasalizationRule",
    "DiphthongRule",
    "SuffixLengthRule",
    "HRegisterRule",
    "SyllableDotRule",
    "default_rules",
    "syllable_breaks",

    # Engine
    "G2PEngine",
    "TranscriptionResult",
    "SentenceResult",
    "map_base_cluster",
    "resolve_inherent_vowels",
    "apply_glide_rules",
    "apply_nasalization",
    "detect_diphthongs",
    "mark_suffix_length",
    "transcribe_word",
    "transcribe_sentence",
]
