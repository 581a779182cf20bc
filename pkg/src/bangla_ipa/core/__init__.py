"""
Core exceptions, schemas, configuration and utilities for bangla-ipa.
"""

from .config import Settings, get_settings, reset_settings

from .exceptions import (
    BanglaIpaError,
    MalformedSequenceError,
    UnmappableGraphemeError,
    IpaError,
    UnknownSymbolError,
    InvalidIpaError,
    LexiconError,
    LexiconParseError,
    DuplicateSurfaceError,
    LexiconEntryError,
    UnknownAbbreviationError,
    OutOfRangeError,
    CorpusError,
    CorpusParseError,
    DuplicateIdError,
    DegenerateReferenceError,
)

from .schemas import (
    NumberMode,
    EntryTag,
    ResultSource,
    TranscriptionOptions,
    LexiconEntry,
    SentenceScore,
    EvalReport,
)

from .utils import (
    iter_tsv,
    save_json_to_file,
    load_json_from_file,
    save_text_to_file,
)

__all__ = [
    # Config
    "Settings",
    "get_settings",
    "reset_settings",

    # Exceptions
    "BanglaIpaError",
    "MalformedSequenceError",
    "UnmappableGraphemeError",
    "IpaError",
    "UnknownSymbolError",
    "InvalidIpaError",
    "LexiconError",
    "LexiconParseError",
    "DuplicateSurfaceError",
    "LexiconEntryError",
    "UnknownAbbreviationError",
    "OutOfRangeError",
    "CorpusError",
    "CorpusParseError",
    "DuplicateIdError",
    "DegenerateReferenceError",

    # Schemas
    "NumberMode",
    "EntryTag",
    "ResultSource",
    "TranscriptionOptions",
    "LexiconEntry",
    "SentenceScore",
    "EvalReport",

    # Utils
    "iter_tsv",
    "save_json_to_file",
    "load_json_from_file",
    "save_text_to_file",
]
