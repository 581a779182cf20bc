"""
Custom exceptions for the Bangla IPA toolkit.
"""

from typing import Optional, Sequence


class BanglaIpaError(Exception):
    """Base exception for all bangla-ipa errors."""
    pass


# ─── Script ──────────────────────────────────────────────────────────────────

class MalformedSequenceError(BanglaIpaError):
    """Raised by strict segmentation on dangling signs or doubled viramas."""
    def __init__(self, offset: int, reason: str):
        self.offset = offset
        self.reason = reason
        super().__init__(f"offset {offset}: {reason}")


class UnmappableGraphemeError(BanglaIpaError):
    """A non-Bengali letter appeared inside a word token."""
    def __init__(self, grapheme: str, offset: int = 0):
        self.grapheme = grapheme
        self.offset = offset
        super().__init__(f"unmappable grapheme {grapheme!r} at offset {offset}")


# ─── IPA ─────────────────────────────────────────────────────────────────────

class IpaError(BanglaIpaError):
    """Base class for IPA parsing and validation failures."""
    pass


class UnknownSymbolError(IpaError):
    """Raised when an IPA string holds a glyph outside the inventory."""
    def __init__(self, symbol: str, position: int):
        self.symbol = symbol
        self.position = position
        super().__init__(f"unknown IPA symbol {symbol!r} (U+{ord(symbol[0]):04X}) at {position}")


class InvalidIpaError(IpaError):
    """Raised when a parsed IPA string breaks phone invariants."""
    def __init__(self, ipa: str, violations: Sequence = ()):
        self.ipa = ipa
        self.violations = list(violations)
        detail = "; ".join(str(v) for v in self.violations) or "invalid"
        super().__init__(f"{ipa!r}: {detail}")


# ─── Lexicon ─────────────────────────────────────────────────────────────────

class LexiconError(BanglaIpaError):
    """Base class for lexicon file problems."""
    pass


class LexiconParseError(LexiconError):
    """Bad column count or unknown tag in a lexicon line."""
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class DuplicateSurfaceError(LexiconError):
    """Same surface form listed twice in one lexicon file."""
    def __init__(self, surface: str, line_no: int):
        self.surface = surface
        self.line_no = line_no
        super().__init__(f"line {line_no}: duplicate surface {surface!r}")


class LexiconEntryError(LexiconError):
    """An entry's IPA column failed strict validation."""
    def __init__(self, line_no: int, cause: Exception):
        self.line_no = line_no
        self.cause = cause
        super().__init__(f"line {line_no}: {cause}")


class UnknownAbbreviationError(BanglaIpaError):
    """Dotted abbreviation with no lexicon expansion."""
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unknown abbreviation {token!r}, reading letter names")


# ─── Numbers ─────────────────────────────────────────────────────────────────

class OutOfRangeError(BanglaIpaError):
    """Cardinal reading requested for a value of 10^9 or more."""
    def __init__(self, value: int):
        self.value = value
        super().__init__(f"{value} is outside the cardinal range (< 10^9)")


# ─── Corpus / evaluation ─────────────────────────────────────────────────────

class CorpusError(BanglaIpaError):
    """Base class for parallel corpus problems."""
    pass


class CorpusParseError(CorpusError):
    """A corpus line does not have the id, text, ipa columns."""
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class DuplicateIdError(CorpusError):
    """Record id seen twice in one corpus."""
    def __init__(self, record_id: str, line_no: Optional[int] = None):
        self.record_id = record_id
        self.line_no = line_no
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}duplicate id {record_id!r}")


class DegenerateReferenceError(BanglaIpaError):
    """Error rate requested against an empty reference."""
    pass
