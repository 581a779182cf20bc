"""
Pydantic schemas shared across the toolkit: options, lexicon entries and
evaluation reports.
"""

from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


# ─── Enums ────────────────────────────────────────────────────────────────────

class NumberMode(str, Enum):
    """How digit runs are read aloud."""
    CARDINAL = "cardinal"
    DIGITS = "digits"
    AUTO = "auto"


class EntryTag(str, Enum):
    """Why a surface form is in the lexicon."""
    LOAN = "loan"
    ABBREV = "abbrev"
    ACRONYM = "acronym"
    PROPER = "proper"
    NUMBER = "number"
    OVERRIDE = "override"


class ResultSource(str, Enum):
    """Where a word transcription came from."""
    LEXICON = "Lexicon"
    RULES = "Rules"
    MIXED = "Mixed"


# ─── Options ─────────────────────────────────────────────────────────────────

class TranscriptionOptions(BaseModel):
    """Engine switches. Defaults reproduce the reference dataset conventions."""
    model_config = ConfigDict(frozen=True)

    careful_speech: bool = Field(
        default=False,
        description="News-reading register: trace every হ as carefully articulated; হ stays h either way"
    )
    number_policy: NumberMode = Field(
        default=NumberMode.AUTO,
        description="Cardinal, digit-by-digit, or length-based choice for digit runs"
    )
    auto_digit_threshold: int = Field(
        default=7,
        ge=1,
        description="Digit-run length at which Auto switches to digit-by-digit"
    )
    mark_morph_length: bool = Field(
        default=True,
        description="Mark emphatic/conjunctive suffix vowels with ː"
    )
    emit_syllable_dots: bool = Field(
        default=False,
        description="Insert '.' between syllables (display only)"
    )
    disabled_rules: FrozenSet[str] = Field(
        default_factory=frozenset,
        description="Rule ids to skip, e.g. 'medial-schwa-deletion'"
    )


# ─── Lexicon ─────────────────────────────────────────────────────────────────

class LexiconEntry(BaseModel):
    """Surface form with its fixed IPA."""
    model_config = ConfigDict(frozen=True)

    surface: str = Field(..., min_length=1, description="NFC Bengali surface form")
    ipa: str = Field(..., description="Canonical IPA (strict-valid)")
    tag: EntryTag = Field(..., description="Entry category")
    expansion: Tuple[str, ...] = Field(
        default=(),
        description="Full-form words for abbreviations"
    )
    priority: int = Field(default=0, description="Higher wins on merge")
    line_no: Optional[int] = Field(
        default=None,
        description="Source line, kept for error reports",
        exclude=True,
    )

    @model_validator(mode="after")
    def _expansion_matches_tag(self) -> "LexiconEntry":
        if self.tag is EntryTag.ABBREV and not self.expansion:
            raise ValueError("abbrev entries need an expansion")
        if self.tag is not EntryTag.ABBREV and self.expansion:
            raise ValueError(f"{self.tag.value} entries take no expansion")
        return self

    def same_content(self, other: "LexiconEntry") -> bool:
        """Equality ignoring source line numbers."""
        return (self.surface, self.ipa, self.tag, self.expansion, self.priority) == (
            other.surface, other.ipa, other.tag, other.expansion, other.priority
        )


# ─── Evaluation ──────────────────────────────────────────────────────────────

class SentenceScore(BaseModel):
    """Edit counts for one corpus record."""
    id: str = Field(..., description="Record id")
    ref: str = Field(..., description="Normalized reference IPA")
    hyp: str = Field(..., description="Normalized hypothesis IPA")
    word_errors: int = Field(..., ge=0, description="Word-level edit distance")
    ref_words: int = Field(..., ge=0, description="Reference word count")
    phone_errors: int = Field(..., ge=0, description="Phone-level edit distance")
    ref_phones: int = Field(..., ge=0, description="Reference phone count")
    char_errors: int = Field(..., ge=0, description="Code-point edit distance")
    ref_chars: int = Field(..., ge=0, description="Reference code-point count")

    @property
    def wer(self) -> float:
        return self.word_errors / self.ref_words if self.ref_words else float(self.word_errors)


class EvalReport(BaseModel):
    """Corpus-level error rates (micro-averaged) and per-sentence detail."""
    wer: float = Field(..., ge=0, description="Σ word edits / Σ reference words")
    per: float = Field(..., ge=0, description="Σ phone edits / Σ reference phones")
    cer: float = Field(..., ge=0, description="Σ code-point edits / Σ reference code points")
    n_sentences: int = Field(..., ge=0, description="Records evaluated")
    n_ref_words: int = Field(..., ge=0, description="Total reference words")
    n_hyp_words: int = Field(default=0, ge=0, description="Total hypothesis words")
    word_errors: int = Field(default=0, ge=0, description="Total word edits")
    phone_errors: int = Field(default=0, ge=0, description="Total phone edits")
    n_ref_phones: int = Field(default=0, ge=0, description="Total reference phones")
    char_errors: int = Field(default=0, ge=0, description="Total code-point edits")
    n_ref_chars: int = Field(default=0, ge=0, description="Total reference code points")
    oov_rate: Optional[float] = Field(
        default=None,
        description="Share of hypothesis-side source words missing from the vocabulary"
    )
    oov_words: int = Field(default=0, ge=0, description="Count of OOV source words")
    averaging: str = Field(default="micro", description="Aggregation method")
    fold_aliases: bool = Field(default=True, description="Whether loose glyphs were folded before scoring")
    split: Optional[str] = Field(default=None, description="Corpus split label")
    per_sentence: List[SentenceScore] = Field(default_factory=list, description="Per-record scores")
    warnings: List[str] = Field(default_factory=list, description="Non-fatal problems")

    def summary_line(self) -> str:
        """One-line summary printed by the CLI."""
        return f"WER {self.wer:.4f} PER {self.per:.4f} CER {self.cer:.4f} ({self.n_sentences} sentences)"

    def to_text(self) -> str:
        """Key-value header, then a tab-separated per-sentence table."""
        header = [
            ("wer", f"{self.wer:.6f}"),
            ("per", f"{self.per:.6f}"),
            ("cer", f"{self.cer:.6f}"),
            ("n_sentences", str(self.n_sentences)),
            ("n_ref_words", str(self.n_ref_words)),
            ("n_hyp_words", str(self.n_hyp_words)),
            ("word_errors", str(self.word_errors)),
            ("phone_errors", str(self.phone_errors)),
            ("char_errors", str(self.char_errors)),
            ("oov_rate", "n/a" if self.oov_rate is None else f"{self.oov_rate:.6f}"),
            ("oov_words", str(self.oov_words)),
            ("averaging", self.averaging),
            ("fold_aliases", str(self.fold_aliases).lower()),
            ("split", self.split or ""),
            ("warnings", str(len(self.warnings))),
        ]
        lines = [f"{k}: {v}" for k, v in header]
        lines.append("")
        lines.append("id\tword_errors\tref_words\tphone_errors\tref_phones\tref\thyp")
        for s in self.per_sentence:
            lines.append(
                f"{s.id}\t{s.word_errors}\t{s.ref_words}\t{s.phone_errors}\t{s.ref_phones}\t{s.ref}\t{s.hyp}"
            )
        for w in self.warnings:
            lines.append(f"# warning: {w}")
        return "\n".join(lines) + "\n"
