"""
Unicode-level analysis of Bengali text.

Classifies code points, segments NFC text into orthographic grapheme
clusters (consonant conjuncts joined by virama, plus their signs), and
splits text into word, number, mixed, abbreviation and punctuation tokens.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import groupby
from typing import Dict, List, Optional, Tuple, Union

import regex

from .core.exceptions import MalformedSequenceError


# ─── Code point classes ──────────────────────────────────────────────────────

class CodepointClass(str, Enum):
    """Orthographic role of a single code point."""
    INDEPENDENT_VOWEL = "IndependentVowel"
    CONSONANT_LETTER = "ConsonantLetter"
    VOWEL_SIGN = "VowelSign"
    VIRAMA = "Virama"
    CHANDRABINDU = "Chandrabindu"
    ANUSVARA = "Anusvara"
    VISARGA = "Visarga"
    NUKTA = "Nukta"
    BENGALI_DIGIT = "BengaliDigit"
    LATIN_DIGIT = "LatinDigit"
    JOINER = "Joiner"
    PUNCTUATION = "Punctuation"
    WHITESPACE = "Whitespace"
    OTHER = "Other"


BENGALI_BLOCK = range(0x0980, 0x0A00)

VIRAMA = "্"
NUKTA = "়"
CHANDRABINDU = "ঁ"
ANUSVARA = "ং"
VISARGA = "ঃ"
ZWNJ = "‌"
ZWJ = "‍"
ABBREVIATION_DOT = "."
DANDA = "।"


def _span(first: int, last: int) -> range:
    return range(first, last + 1)


def _build_block_table() -> Dict[int, CodepointClass]:
    table: Dict[int, CodepointClass] = {cp: CodepointClass.PUNCTUATION for cp in BENGALI_BLOCK}
    groups = {
        CodepointClass.INDEPENDENT_VOWEL: [
            *_span(0x0985, 0x098C), 0x098F, 0x0990, 0x0993, 0x0994, 0x09E0, 0x09E1,
        ],
        CodepointClass.CONSONANT_LETTER: [
            *_span(0x0995, 0x09A8), *_span(0x09AA, 0x09B0), 0x09B2, *_span(0x09B6, 0x09B9),
            0x09CE, 0x09DC, 0x09DD, 0x09DF, 0x09F0, 0x09F1,
        ],
        CodepointClass.VOWEL_SIGN: [
            *_span(0x09BE, 0x09C4), 0x09C7, 0x09C8, 0x09CB, 0x09CC, 0x09D7, 0x09E2, 0x09E3,
        ],
        CodepointClass.BENGALI_DIGIT: list(_span(0x09E6, 0x09EF)),
        CodepointClass.VIRAMA: [0x09CD],
        CodepointClass.CHANDRABINDU: [0x0981],
        CodepointClass.ANUSVARA: [0x0982, 0x09FC],
        CodepointClass.VISARGA: [0x0983],
        CodepointClass.NUKTA: [0x09BC],
    }
    for kind, cps in groups.items():
        for cp in cps:
            table[cp] = kind
    return table


_BLOCK_TABLE = _build_block_table()


@lru_cache(maxsize=4096)
def _classify(cp: int) -> CodepointClass:
    if cp in _BLOCK_TABLE:
        return _BLOCK_TABLE[cp]
    ch = chr(cp)
    if ch in (ZWNJ, ZWJ):
        return CodepointClass.JOINER
    if "0" <= ch <= "9":
        return CodepointClass.LATIN_DIGIT
    if ch.isspace():
        return CodepointClass.WHITESPACE
    if unicodedata.category(ch)[0] in "PS":
        return CodepointClass.PUNCTUATION
    return CodepointClass.OTHER


def classify_codepoint(cp: Union[str, int]) -> CodepointClass:
    """
    Classify one Unicode scalar value.

    Total over the scalar space. Every value in the Bengali block gets a
    non-Other class; unassigned and symbol positions in the block are
    Punctuation.

    Args:
        cp: A one-character string or an integer code point

    Returns:
        CodepointClass
    """
    return _classify(ord(cp) if isinstance(cp, str) else cp)


def nfc(text: str) -> str:
    """Canonical-composition normalize."""
    return unicodedata.normalize("NFC", text)


_LETTER_CLASSES = frozenset({
    CodepointClass.INDEPENDENT_VOWEL, CodepointClass.CONSONANT_LETTER,
    CodepointClass.VOWEL_SIGN, CodepointClass.VIRAMA, CodepointClass.CHANDRABINDU,
    CodepointClass.ANUSVARA, CodepointClass.VISARGA, CodepointClass.NUKTA,
    CodepointClass.JOINER,
})
_DIGIT_CLASSES = frozenset({CodepointClass.BENGALI_DIGIT, CodepointClass.LATIN_DIGIT})
_FOREIGN_LETTER = regex.compile(r"[\p{L}\p{M}]")


# ─── Grapheme clusters ───────────────────────────────────────────────────────

class ClusterKind(str, Enum):
    """Coarse shape of a grapheme cluster."""
    CONSONANT = "consonant"
    VOWEL = "vowel"
    DIGIT = "digit"
    SPACE = "space"
    SYMBOL = "symbol"
    MARK = "mark"


@dataclass(frozen=True)
class GraphemeCluster:
    """One orthographic unit: consonant(s) or independent vowel plus attached signs."""
    text: str
    start: int
    kind: ClusterKind
    bases: Tuple[str, ...] = ()
    independent_vowel: Optional[str] = None
    vowel_sign: Optional[str] = None
    has_virama_final: bool = False
    has_chandrabindu: bool = False
    trailing_marks: Tuple[str, ...] = ()
    degenerate: Optional[str] = None

    @property
    def end(self) -> int:
        return self.start + len(self.text)

    @property
    def is_letter(self) -> bool:
        return self.kind in (ClusterKind.CONSONANT, ClusterKind.VOWEL)

    @property
    def is_conjunct(self) -> bool:
        return len(self.bases) > 1


@dataclass
class _Builder:
    start: int
    kind: ClusterKind
    chars: List[str] = field(default_factory=list)
    bases: List[str] = field(default_factory=list)
    independent_vowel: Optional[str] = None
    vowel_sign: Optional[str] = None
    virama: bool = False
    chandrabindu: bool = False
    marks: List[str] = field(default_factory=list)
    zwnj: bool = False

    def build(self, degenerate: Optional[str] = None) -> GraphemeCluster:
        return GraphemeCluster(
            text="".join(self.chars),
            start=self.start,
            kind=self.kind,
            bases=tuple(self.bases),
            independent_vowel=self.independent_vowel,
            vowel_sign=self.vowel_sign,
            has_virama_final=self.virama,
            has_chandrabindu=self.chandrabindu,
            trailing_marks=tuple(self.marks),
            degenerate=degenerate,
        )


class _Segmenter:
    """Single left-to-right pass; every input character lands in exactly one cluster."""

    def __init__(self, strict: bool):
        self.strict = strict
        self.clusters: List[GraphemeCluster] = []
        self.cur: Optional[_Builder] = None

    def flush(self):
        if self.cur is not None:
            self.clusters.append(self.cur.build())
            self.cur = None

    def single(self, i: int, ch: str, kind: ClusterKind, degenerate: Optional[str] = None):
        self.flush()
        if degenerate and self.strict:
            raise MalformedSequenceError(i, degenerate)
        builder = _Builder(start=i, kind=kind, chars=[ch])
        if kind is ClusterKind.MARK and ch in (ANUSVARA, VISARGA):
            builder.marks.append(ch)
        self.clusters.append(builder.build(degenerate))

    def open_consonant(self) -> bool:
        cur = self.cur
        return (
            cur is not None and cur.kind is ClusterKind.CONSONANT
            and cur.vowel_sign is None and not cur.virama
            and not cur.marks and not cur.chandrabindu
        )

    def feed(self, i: int, ch: str):
        k = classify_codepoint(ch)
        cur = self.cur

        if k is CodepointClass.CONSONANT_LETTER:
            if cur is not None and cur.kind is ClusterKind.CONSONANT and cur.virama and not cur.zwnj:
                cur.bases.append(ch)
                cur.virama = False
                cur.chars.append(ch)
                return
            self.flush()
            self.cur = _Builder(start=i, kind=ClusterKind.CONSONANT, chars=[ch], bases=[ch])
        elif k is CodepointClass.NUKTA:
            if self.open_consonant():
                cur.bases[-1] += ch
                cur.chars.append(ch)
            else:
                self.single(i, ch, ClusterKind.MARK, "nukta without a consonant")
        elif k is CodepointClass.VOWEL_SIGN:
            if self.open_consonant():
                cur.vowel_sign = ch
                cur.chars.append(ch)
            else:
                self.single(i, ch, ClusterKind.MARK, "vowel sign without a consonant")
        elif k is CodepointClass.VIRAMA:
            if cur is not None and cur.kind is ClusterKind.CONSONANT and cur.virama:
                self.single(i, ch, ClusterKind.MARK, "double virama")
            elif self.open_consonant():
                cur.virama = True
                cur.chars.append(ch)
            else:
                self.single(i, ch, ClusterKind.MARK, "virama without a consonant")
        elif k is CodepointClass.CHANDRABINDU:
            if cur is not None and cur.kind in (ClusterKind.CONSONANT, ClusterKind.VOWEL) \
                    and not cur.chandrabindu and not cur.virama:
                cur.chandrabindu = True
                cur.chars.append(ch)
            else:
                self.single(i, ch, ClusterKind.MARK, "chandrabindu without a host vowel")
        elif k in (CodepointClass.ANUSVARA, CodepointClass.VISARGA):
            if cur is not None and cur.kind in (ClusterKind.CONSONANT, ClusterKind.VOWEL) \
                    and not cur.virama:
                cur.marks.append(ch)
                cur.chars.append(ch)
            else:
                self.single(i, ch, ClusterKind.MARK, "stray anusvara/visarga")
        elif k is CodepointClass.INDEPENDENT_VOWEL:
            self.flush()
            self.cur = _Builder(start=i, kind=ClusterKind.VOWEL, chars=[ch], independent_vowel=ch)
        elif k is CodepointClass.JOINER:
            if cur is not None and cur.kind in (ClusterKind.CONSONANT, ClusterKind.VOWEL):
                cur.chars.append(ch)
                if ch == ZWNJ:
                    cur.zwnj = True
            else:
                self.single(i, ch, ClusterKind.SYMBOL)
        elif k in _DIGIT_CLASSES:
            self.single(i, ch, ClusterKind.DIGIT)
        elif k is CodepointClass.WHITESPACE:
            self.single(i, ch, ClusterKind.SPACE)
        else:
            self.single(i, ch, ClusterKind.SYMBOL)


def segment_graphemes(text: str, strict: bool = False) -> List[GraphemeCluster]:
    """
    Segment text into grapheme clusters.

    The input is NFC-normalized first. Concatenating the ``text`` of the
    result reproduces the normalized input exactly.

    Args:
        text: Any Unicode text
        strict: Raise MalformedSequenceError instead of flagging degenerate clusters

    Returns:
        List of GraphemeCluster in source order
    """
    seg = _Segmenter(strict)
    for i, ch in enumerate(nfc(text)):
        seg.feed(i, ch)
    seg.flush()
    return seg.clusters


def letter_cluster_count(text: str) -> int:
    """Number of consonant/vowel clusters in text."""
    return sum(1 for c in segment_graphemes(text) if c.is_letter)


# ─── Tokens ──────────────────────────────────────────────────────────────────

class TokenKind(str, Enum):
    """Token categories produced by tokenize()."""
    WORD = "Word"
    NUMBER = "Number"
    MIXED = "Mixed"
    ABBREVIATION = "Abbreviation"
    PUNCT = "Punct"


@dataclass(frozen=True)
class Token:
    """A token with its code point span into the NFC-normalized source."""
    text: str
    kind: TokenKind
    span: Tuple[int, int]


def _run_class(ch: str) -> str:
    k = classify_codepoint(ch)
    if k in _LETTER_CLASSES:
        return "alnum"
    if k in _DIGIT_CLASSES:
        return "alnum"
    if k is CodepointClass.WHITESPACE:
        return "space"
    if k is CodepointClass.OTHER and _FOREIGN_LETTER.match(ch):
        return "alnum"
    return "punct"


def _is_digit(ch: str) -> bool:
    return classify_codepoint(ch) in _DIGIT_CLASSES


def tokenize(text: str) -> List[Token]:
    """
    Split text into Word, Number, Mixed, Abbreviation and Punct tokens.

    Whitespace separates chunks; each chunk is refined into letter/digit
    runs and punctuation runs. A letter run of one or two clusters directly
    followed by ``.`` becomes an Abbreviation that includes the dot.

    Args:
        text: Any Unicode text (NFC-normalized internally)

    Returns:
        Ordered, disjoint tokens covering all non-whitespace input
    """
    text = nfc(text)
    runs: List[Tuple[str, int, int]] = []
    pos = 0
    for cls, group in groupby(text, key=_run_class):
        length = sum(1 for _ in group)
        runs.append((cls, pos, pos + length))
        pos += length

    tokens: List[Token] = []
    skip_dot_at: Optional[int] = None
    for idx, (cls, start, end) in enumerate(runs):
        if cls == "space":
            continue
        if cls == "punct":
            if skip_dot_at == start:
                start += 1
                skip_dot_at = None
            if start < end:
                tokens.append(Token(text[start:end], TokenKind.PUNCT, (start, end)))
            continue

        chunk = text[start:end]
        has_digit = any(_is_digit(ch) for ch in chunk)
        has_letter = any(not _is_digit(ch) for ch in chunk)
        if has_digit and has_letter:
            tokens.append(Token(chunk, TokenKind.MIXED, (start, end)))
        elif has_digit:
            tokens.append(Token(chunk, TokenKind.NUMBER, (start, end)))
        elif end < len(text) and text[end] == ABBREVIATION_DOT and 1 <= letter_cluster_count(chunk) <= 2:
            tokens.append(Token(text[start:end + 1], TokenKind.ABBREVIATION, (start, end + 1)))
            skip_dot_at = end
        else:
            tokens.append(Token(chunk, TokenKind.WORD, (start, end)))
    return tokens
