"""
Bengali IPA inventory plus parsing, rendering, normalization and validation
of IPA strings.

A Phone is a base glyph plus diacritics. Marks are rendered in one
canonical order: aspiration, nasal, length, non-syllabic, then ʲ/ʷ.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core.exceptions import UnknownSymbolError


# ─── Enums ────────────────────────────────────────────────────────────────────

class PhoneCategory(str, Enum):
    """Manner class of a base segment."""
    VOWEL = "Vowel"
    STOP = "Stop"
    NASAL = "Nasal"
    TAP = "Tap"
    FLAP = "Flap"
    FRICATIVE = "Fricative"
    LATERAL = "Lateral"
    APPROXIMANT = "Approximant"


class Place(str, Enum):
    """Place of articulation (consonants) or frontness (vowels)."""
    BILABIAL = "bilabial"
    LABIODENTAL = "labiodental"
    DENTAL = "dental"
    ALVEOLAR = "alveolar"
    RETROFLEX = "retroflex"
    POST_ALVEOLAR = "post-alveolar"
    PALATAL = "palatal"
    VELAR = "velar"
    GLOTTAL = "glottal"
    FRONT = "front"
    CENTRAL = "central"
    BACK = "back"


class Diacritic(str, Enum):
    """Marks a Phone can carry. SYLLABLE_BREAK is a separator, never attached."""
    ASP_VOICELESS = "ʰ"
    ASP_VOICED = "ʱ"
    NASAL = "̃"
    LONG = "ː"
    NON_SYLLABIC = "̯"
    PALATALIZED = "ʲ"
    LABIALIZED = "ʷ"
    SYLLABLE_BREAK = "."


class ViolationCode(str, Enum):
    """Kinds of phone-level defects reported by validate_phoneseq."""
    BAD_ASPIRATION = "BadAspiration"
    DIACRITIC_ON_WRONG_BASE = "DiacriticOnWrongBase"
    UNKNOWN_SYMBOL = "UnknownSymbol"
    NON_CANONICAL_ORDER = "NonCanonicalOrder"
    SCHWA_FORBIDDEN = "SchwaForbidden"
    CONFLICTING_DIACRITICS = "ConflictingDiacritics"


# ─── Inventory ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PhoneBase:
    """One inventory segment."""
    symbol: str
    category: PhoneCategory
    voiced: bool
    place: Place
    height: Optional[str] = None
    loan_or_contextual: bool = False


def _vowel(symbol: str, height: str, place: Place) -> PhoneBase:
    return PhoneBase(symbol, PhoneCategory.VOWEL, True, place, height=height)


def _cons(symbol: str, category: PhoneCategory, voiced: bool, place: Place,
          loan: bool = False) -> PhoneBase:
    return PhoneBase(symbol, category, voiced, place, loan_or_contextual=loan)


_S, _N, _F = PhoneCategory.STOP, PhoneCategory.NASAL, PhoneCategory.FRICATIVE

INVENTORY: Dict[str, PhoneBase] = {b.symbol: b for b in [
    # vowels
    _vowel("ɪ", "near-high", Place.FRONT),
    _vowel("e", "close-mid", Place.FRONT),
    _vowel("ɛ", "open-mid", Place.FRONT),
    _vowel("ɐ", "near-open", Place.CENTRAL),
    _vowel("ɔ", "open-mid", Place.BACK),
    _vowel("o", "close-mid", Place.BACK),
    _vowel("ʊ", "near-high", Place.BACK),
    # stops
    _cons("p", _S, False, Place.BILABIAL), _cons("b", _S, True, Place.BILABIAL),
    _cons("t̪", _S, False, Place.DENTAL), _cons("d̪", _S, True, Place.DENTAL),
    _cons("ʈ", _S, False, Place.RETROFLEX), _cons("ɖ", _S, True, Place.RETROFLEX),
    _cons("c", _S, False, Place.PALATAL), _cons("ɟ", _S, True, Place.PALATAL),
    _cons("k", _S, False, Place.VELAR), _cons("g", _S, True, Place.VELAR),
    # nasals
    _cons("m", _N, True, Place.BILABIAL), _cons("n", _N, True, Place.ALVEOLAR),
    _cons("ŋ", _N, True, Place.VELAR),
    # tap, flap, lateral, approximant
    _cons("ɾ", PhoneCategory.TAP, True, Place.ALVEOLAR),
    _cons("ɽ", PhoneCategory.FLAP, True, Place.RETROFLEX),
    _cons("l", PhoneCategory.LATERAL, True, Place.ALVEOLAR),
    _cons("j", PhoneCategory.APPROXIMANT, True, Place.PALATAL),
    # fricatives
    _cons("ʃ", _F, False, Place.POST_ALVEOLAR),
    _cons("h", _F, False, Place.GLOTTAL),
    _cons("s", _F, False, Place.ALVEOLAR, loan=True),
    _cons("z", _F, True, Place.ALVEOLAR, loan=True),
    _cons("f", _F, False, Place.LABIODENTAL, loan=True),
    _cons("v", _F, True, Place.LABIODENTAL, loan=True),
]}

VOWELS = frozenset(s for s, b in INVENTORY.items() if b.category is PhoneCategory.VOWEL)
HIGH_VOWELS = frozenset({"ɪ", "ʊ"})
VOICELESS_STOPS = frozenset(s for s, b in INVENTORY.items() if b.category is _S and not b.voiced)
VOICED_STOPS = frozenset(s for s, b in INVENTORY.items() if b.category is _S and b.voiced)
VOICED_ASPIRABLE = VOICED_STOPS | {"ɽ"}

# Accepted on input in every mode.
ALIASES: Dict[str, str] = {"æ": "ɛ", "dʒ": "ɟ", "ʒ": "ɟ", "ʝ": "ɟ"}

# Glyphs used in loose transcriptions; folded only on request.
FOLD_ALIASES: Dict[str, str] = {"i": "ɪ", "u": "ʊ", "a": "ɐ", "r": "ɾ", "t": "t̪", "d": "d̪"}

MARK_ORDER: Dict[str, int] = {
    Diacritic.ASP_VOICELESS.value: 0,
    Diacritic.ASP_VOICED.value: 0,
    Diacritic.NASAL.value: 1,
    Diacritic.LONG.value: 2,
    Diacritic.NON_SYLLABIC.value: 3,
    Diacritic.PALATALIZED.value: 4,
    Diacritic.LABIALIZED.value: 4,
}
ASCII_LENGTH = ":"

_ASPIRATION = (Diacritic.ASP_VOICELESS.value, Diacritic.ASP_VOICED.value)
_VOWEL_ONLY = (Diacritic.NASAL.value, Diacritic.LONG.value, Diacritic.NON_SYLLABIC.value)


def _match_table(fold: bool) -> List[Tuple[str, str]]:
    table = {s: s for s in INVENTORY}
    table.update(ALIASES)
    if fold:
        table.update(FOLD_ALIASES)
    return sorted(table.items(), key=lambda kv: -len(kv[0]))


_MATCH_STRICT = _match_table(False)
_MATCH_FOLD = _match_table(True)


# ─── Phones ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Phone:
    """A base glyph plus its diacritics, kept in the order they were given."""
    base: str
    marks: Tuple[str, ...] = ()

    @property
    def is_separator(self) -> bool:
        return self.base in (" ", ".") and not self.marks

    @property
    def is_vowel(self) -> bool:
        return self.base in VOWELS

    @property
    def known(self) -> bool:
        return self.base in INVENTORY

    def has(self, mark: "Diacritic | str") -> bool:
        return (mark.value if isinstance(mark, Diacritic) else mark) in self.marks

    def with_mark(self, mark: "Diacritic | str") -> "Phone":
        value = mark.value if isinstance(mark, Diacritic) else mark
        if value in self.marks:
            return self
        return Phone(self.base, self.marks + (value,)).canonical()

    def canonical(self) -> "Phone":
        return Phone(self.base, tuple(sorted(self.marks, key=lambda m: MARK_ORDER.get(m, 5))))

    def render(self) -> str:
        return self.base + "".join(self.canonical().marks)

    def __str__(self) -> str:
        return self.render()


WORD_SEP = Phone(" ")
SYLLABLE_SEP = Phone(".")


def phone(base: str, *marks: "Diacritic | str") -> Phone:
    """Build a Phone from a base and marks."""
    return Phone(base, tuple(m.value if isinstance(m, Diacritic) else m for m in marks))


@dataclass(frozen=True)
class PhoneSeq:
    """Ordered phones; word and syllable boundaries are separator phones."""
    phones: Tuple[Phone, ...] = ()

    def __iter__(self) -> Iterator[Phone]:
        return iter(self.phones)

    def __len__(self) -> int:
        return len(self.phones)

    def __getitem__(self, i):
        return self.phones[i]

    def __bool__(self) -> bool:
        return bool(self.phones)

    def segments(self) -> List[Phone]:
        """Phones without any separators."""
        return [p for p in self.phones if not p.is_separator]

    def words(self) -> List[Tuple[Phone, ...]]:
        """Phones grouped by word, syllable dots removed."""
        out: List[Tuple[Phone, ...]] = []
        cur: List[Phone] = []
        for p in self.phones:
            if p == WORD_SEP:
                if cur:
                    out.append(tuple(cur))
                cur = []
            elif p != SYLLABLE_SEP:
                cur.append(p)
        if cur:
            out.append(tuple(cur))
        return out

    @classmethod
    def join_words(cls, words: Iterable["PhoneSeq"]) -> "PhoneSeq":
        """Concatenate non-empty word sequences with single word separators."""
        out: List[Phone] = []
        for w in words:
            if not w:
                continue
            if out:
                out.append(WORD_SEP)
            out.extend(w.phones)
        return cls(tuple(out))

    def render(self) -> str:
        return render_ipa(self)

    def __str__(self) -> str:
        return self.render()


# ─── Violations ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Violation:
    """One phone-level defect."""
    code: ViolationCode
    position: int
    message: str

    def __str__(self) -> str:
        return f"{self.code.value}@{self.position}: {self.message}"


# ─── Parse / render ──────────────────────────────────────────────────────────

def _expand(s: str) -> str:
    # per-character NFD: precomposed ã/õ split, no reordering across characters
    return "".join(unicodedata.normalize("NFD", ch) for ch in s)


def parse_ipa(s: str, strict: bool = True, fold_aliases: bool = False) -> PhoneSeq:
    """
    Parse an IPA string into a PhoneSeq.

    Whitespace runs become one word separator; ``.`` is a syllable break.
    Combining marks attach to the preceding base. ``:`` reads as ``ː``.

    Args:
        s: IPA text
        strict: Raise UnknownSymbolError on glyphs outside the inventory;
            otherwise keep them as unknown-base phones
        fold_aliases: Also accept loose glyphs (i u a r t d, ɛ̯) and map
            them onto the inventory

    Returns:
        PhoneSeq

    Raises:
        UnknownSymbolError: strict mode only
    """
    text = _expand(s)
    table = _MATCH_FOLD if fold_aliases else _MATCH_STRICT
    out: List[Phone] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            while i < n and text[i].isspace():
                i += 1
            if out and out[-1] != WORD_SEP and i < n:
                out.append(WORD_SEP)
            continue
        if ch == Diacritic.SYLLABLE_BREAK.value:
            out.append(SYLLABLE_SEP)
            i += 1
            continue
        mark = Diacritic.LONG.value if ch == ASCII_LENGTH else ch
        if mark in MARK_ORDER:
            if out and not out[-1].is_separator:
                out[-1] = Phone(out[-1].base, out[-1].marks + (mark,))
            elif strict:
                raise UnknownSymbolError(ch, i)
            else:
                out.append(Phone("", (mark,)))
            i += 1
            continue
        for key, canonical in table:
            if text.startswith(key, i):
                out.append(Phone(canonical))
                i += len(key)
                break
        else:
            if strict:
                raise UnknownSymbolError(ch, i)
            out.append(Phone(ch))
            i += 1

    if out and out[-1] == WORD_SEP:
        out.pop()
    phones = out
    if fold_aliases:
        phones = [
            Phone("e", p.marks) if p.base == "ɛ" and Diacritic.NON_SYLLABIC.value in p.marks else p
            for p in phones
        ]
    return PhoneSeq(tuple(phones))


def render_ipa(seq: "PhoneSeq | Sequence[Phone]") -> str:
    """Render phones with marks in canonical order."""
    return "".join(p.render() for p in seq)


def normalize_ipa(s: str, strict: bool = False, fold_aliases: bool = False) -> str:
    """
    Canonicalize an IPA string.

    Maps æ to ɛ and ``:`` to ``ː``, orders combining marks canonically and
    collapses whitespace. Idempotent.

    Args:
        s: IPA text
        strict: Surface parse errors instead of passing unknown glyphs through
        fold_aliases: Also fold loose glyphs onto the inventory

    Returns:
        Normalized IPA string
    """
    return render_ipa(parse_ipa(s, strict=strict, fold_aliases=fold_aliases))


def unknown_symbols(seq: PhoneSeq) -> List[Tuple[int, str]]:
    """(position, base) for every phone whose base is outside the inventory."""
    return [(i, p.base) for i, p in enumerate(seq) if not p.is_separator and not p.known]


# ─── Validation ──────────────────────────────────────────────────────────────

def _check_phone(i: int, p: Phone) -> List[Violation]:
    found: List[Violation] = []
    if not p.known:
        if p.base == "ə":
            found.append(Violation(ViolationCode.SCHWA_FORBIDDEN, i, "schwa is not in the inventory"))
        elif p.base == "":
            found.append(Violation(ViolationCode.DIACRITIC_ON_WRONG_BASE, i, "diacritic with no base"))
        elif p.base == "r":
            found.append(Violation(ViolationCode.UNKNOWN_SYMBOL, i, "trill r is not in the inventory; use ɾ"))
        else:
            found.append(Violation(ViolationCode.UNKNOWN_SYMBOL, i, f"unknown base {p.base!r}"))
        return found

    asp = [m for m in p.marks if m in _ASPIRATION]
    if len(asp) > 1:
        found.append(Violation(ViolationCode.BAD_ASPIRATION, i, "more than one aspiration mark"))
    if Diacritic.ASP_VOICELESS.value in asp and p.base not in VOICELESS_STOPS:
        found.append(Violation(ViolationCode.BAD_ASPIRATION, i, f"ʰ on {p.base}, expected a voiceless stop"))
    if Diacritic.ASP_VOICED.value in asp and p.base not in VOICED_ASPIRABLE:
        found.append(Violation(ViolationCode.BAD_ASPIRATION, i, f"ʱ on {p.base}, expected a voiced stop or ɽ"))

    for m in _VOWEL_ONLY:
        if m in p.marks and not p.is_vowel:
            found.append(Violation(ViolationCode.DIACRITIC_ON_WRONG_BASE, i, f"U+{ord(m):04X} on consonant {p.base}"))
    if p.base == "ɐ" and p.has(Diacritic.NON_SYLLABIC):
        found.append(Violation(ViolationCode.DIACRITIC_ON_WRONG_BASE, i, "ɐ has no semi-vowel counterpart"))

    if p.has(Diacritic.LONG) and p.has(Diacritic.NON_SYLLABIC):
        found.append(Violation(ViolationCode.CONFLICTING_DIACRITICS, i, "long and non-syllabic together"))
    if len(set(p.marks)) != len(p.marks):
        found.append(Violation(ViolationCode.CONFLICTING_DIACRITICS, i, "repeated diacritic"))

    if p.marks != p.canonical().marks:
        found.append(Violation(ViolationCode.NON_CANONICAL_ORDER, i, f"marks on {p.base} out of order"))
    return found


def validate_phoneseq(seq: "PhoneSeq | Sequence[Phone]") -> List[Violation]:
    """
    Check every phone against the inventory and diacritic rules.

    Returns:
        Violations with phone positions; empty iff the sequence is well formed
    """
    found: List[Violation] = []
    for i, p in enumerate(seq):
        if p.is_separator:
            continue
        found.extend(_check_phone(i, p))
    return found
