"""
Verbalization of numbers, mixed letter/digit tokens and abbreviations into
Bengali words for the g2p pipeline.
"""

from __future__ import annotations

from typing import List, Optional

import regex

from .core.exceptions import OutOfRangeError, UnknownAbbreviationError
from .core.schemas import EntryTag, NumberMode, TranscriptionOptions
from .lexicon import Lexicon
from .observability.logger import get_logger
from .script import ABBREVIATION_DOT, nfc, segment_graphemes


logger = get_logger("bangla_ipa.normalize")

UNIT_WORDS = (
    "শূন্য", "এক", "দুই", "তিন", "চার", "পাঁচ", "ছয়", "সাত", "আট", "নয়",
    "দশ", "এগারো", "বারো", "তেরো", "চৌদ্দ", "পনেরো", "ষোলো", "সতেরো", "আঠারো", "উনিশ",
    "বিশ", "একুশ", "বাইশ", "তেইশ", "চব্বিশ", "পঁচিশ", "ছাব্বিশ", "সাতাশ", "আটাশ", "ঊনত্রিশ",
    "ত্রিশ", "একত্রিশ", "বত্রিশ", "তেত্রিশ", "চৌত্রিশ", "পঁয়ত্রিশ", "ছত্রিশ", "সাঁইত্রিশ", "আটত্রিশ", "ঊনচল্লিশ",
    "চল্লিশ", "একচল্লিশ", "বিয়াল্লিশ", "তেতাল্লিশ", "চুয়াল্লিশ", "পঁয়তাল্লিশ", "ছেচল্লিশ", "সাতচল্লিশ", "আটচল্লিশ", "ঊনপঞ্চাশ",
    "পঞ্চাশ", "একান্ন", "বায়ান্ন", "তিপ্পান্ন", "চুয়ান্ন", "পঞ্চান্ন", "ছাপ্পান্ন", "সাতান্ন", "আটান্ন", "ঊনষাট",
    "ষাট", "একষট্টি", "বাষট্টি", "তেষট্টি", "চৌষট্টি", "পঁয়ষট্টি", "ছেষট্টি", "সাতষট্টি", "আটষট্টি", "ঊনসত্তর",
    "সত্তর", "একাত্তর", "বাহাত্তর", "তিয়াত্তর", "চুয়াত্তর", "পঁচাত্তর", "ছিয়াত্তর", "সাতাত্তর", "আটাত্তর", "ঊনআশি",
    "আশি", "একাশি", "বিরাশি", "তিরাশি", "চুরাশি", "পঁচাশি", "ছিয়াশি", "সাতাশি", "অষ্টাশি", "ঊননব্বই",
    "নব্বই", "একানব্বই", "বিরানব্বই", "তিরানব্বই", "চুরানব্বই", "পঁচানব্বই", "ছিয়ানব্বই", "সাতানব্বই", "আটানব্বই", "নিরানব্বই",
)
DIGIT_WORDS = UNIT_WORDS[:10]

HUNDRED = "শো"
THOUSAND = "হাজার"
LAKH = "লাখ"
CRORE = "কোটি"
SCALES = ((10 ** 7, CRORE), (10 ** 5, LAKH), (10 ** 3, THOUSAND))
CARDINAL_LIMIT = 10 ** 9

ORDINAL_WORDS = {
    1: "প্রথম", 2: "দ্বিতীয়", 3: "তৃতীয়", 4: "চতুর্থ", 5: "পঞ্চম",
    6: "ষষ্ঠ", 7: "সপ্তম", 8: "অষ্টম", 9: "নবম", 10: "দশম",
}
ORDINAL_SUFFIXES = frozenset(nfc(s) for s in ("ম", "য়", "ই", "র্থ", "ষ্ঠ"))

# Words that mark the next digit run as a phone or house number.
DIGIT_CONTEXT_WORDS = frozenset(nfc(w) for w in (
    "ফোন", "মোবাইল", "নম্বর", "নম্বরে", "নং", "বাড়ি", "বাসা", "হোল্ডিং", "রোড", "কোড",
))

_DIGIT_CHARS = "0-9০-৯"
_RUNS = regex.compile(rf"[{_DIGIT_CHARS}]+|[^{_DIGIT_CHARS}]+")


def digit_value(ch: str) -> int:
    """Value of one Bengali or Latin digit."""
    if "০" <= ch <= "৯":
        return ord(ch) - ord("০")
    if "0" <= ch <= "9":
        return ord(ch) - ord("0")
    raise ValueError(f"not a digit: {ch!r}")


def digits_to_int(digits: str) -> int:
    value = 0
    for ch in digits:
        value = value * 10 + digit_value(ch)
    return value


def is_digit_run(text: str) -> bool:
    return bool(text) and all("০" <= ch <= "৯" or "0" <= ch <= "9" for ch in text)


def _hundreds_word(h: int) -> str:
    return UNIT_WORDS[h] + HUNDRED


def number_to_words_cardinal(value: int) -> List[str]:
    """
    South-Asian cardinal reading: crore, lakh, thousand, hundred, then 0-99.

    Zero-valued groups are skipped; ``0`` alone reads as শূন্য.

    Args:
        value: 0 <= value < 10^9

    Returns:
        Bengali words, e.g. 206 -> [দুইশো, ছয়]

    Raises:
        OutOfRangeError: value is negative or >= 10^9
    """
    if value < 0 or value >= CARDINAL_LIMIT:
        raise OutOfRangeError(value)
    if value == 0:
        return [UNIT_WORDS[0]]

    words: List[str] = []
    rest = value
    for scale, word in SCALES:
        group, rest = divmod(rest, scale)
        if group:
            words.extend([UNIT_WORDS[group], word])
    hundreds, tail = divmod(rest, 100)
    if hundreds:
        words.append(_hundreds_word(hundreds))
    if tail:
        words.append(UNIT_WORDS[tail])
    return words


def number_to_words_digits(digits: str) -> List[str]:
    """One digit name per input digit."""
    return [DIGIT_WORDS[digit_value(ch)] for ch in digits]


def resolve_policy(digits: str, mode: NumberMode, threshold: int = 7, flagged: bool = False) -> NumberMode:
    """
    Turn Auto into Cardinal or DigitByDigit.

    Auto reads digit-by-digit when the run has ``threshold`` or more digits
    or when the context flags a phone/house number.
    """
    if mode is not NumberMode.AUTO:
        return mode
    if flagged or len(digits) >= threshold:
        return NumberMode.DIGITS
    return NumberMode.CARDINAL


def verbalize_number(
    digits: str,
    opts: Optional[TranscriptionOptions] = None,
    flagged: bool = False,
    warnings: Optional[List[str]] = None,
) -> List[str]:
    """
    Read a digit run per the options' number policy.

    Values beyond the cardinal range fall back to digit-by-digit with a warning.
    """
    opts = opts or TranscriptionOptions()
    mode = resolve_policy(digits, opts.number_policy, opts.auto_digit_threshold, flagged)
    if mode is NumberMode.DIGITS:
        return number_to_words_digits(digits)
    try:
        return number_to_words_cardinal(digits_to_int(digits))
    except OutOfRangeError as e:
        message = f"{e}; reading digit by digit"
        logger.warning(message, stage="Normalize")
        if warnings is not None:
            warnings.append(message)
        return number_to_words_digits(digits)


def expand_mixed(
    text: str,
    opts: Optional[TranscriptionOptions] = None,
    flagged: bool = False,
    warnings: Optional[List[str]] = None,
) -> List[str]:
    """
    Split a letters+digits token and verbalize its digit runs.

    An ordinal suffix right after a number from 1 to 10 gives the ordinal
    word (1ম -> প্রথম); otherwise the number reads as a cardinal and the
    suffix stays a separate word.

    Args:
        text: Mixed token text, e.g. "19টা"
        opts: Transcription options (number policy)
        flagged: Context marks the digits as a phone/house number
        warnings: Optional sink for review notes and warnings

    Returns:
        Flat list of Bengali words
    """
    runs = _RUNS.findall(text)
    words: List[str] = []
    i = 0
    while i < len(runs):
        run = runs[i]
        if not is_digit_run(run):
            words.append(run)
            i += 1
            continue
        following = runs[i + 1] if i + 1 < len(runs) else None
        value = digits_to_int(run)
        if following in ORDINAL_SUFFIXES and value in ORDINAL_WORDS:
            words.append(ORDINAL_WORDS[value])
            if warnings is not None:
                warnings.append(f"review: ordinal reading for {run}{following}")
            i += 2
            continue
        words.extend(verbalize_number(run, opts, flagged, warnings))
        i += 1
    return words


def letter_name_reading(text: str) -> List[str]:
    """Each letter cluster read as its own word (dot and other symbols dropped)."""
    return [c.text for c in segment_graphemes(text) if c.is_letter]


def expand_abbreviation(
    text: str,
    lexicon: Lexicon,
    warnings: Optional[List[str]] = None,
) -> List[str]:
    """
    Replace an abbreviation or acronym with the words to transcribe.

    Dotted abbreviations use the lexicon expansion. Unknown dotted ones
    fall back to letter-name reading with a warning. Undotted acronyms
    are returned unchanged so g2p can look them up.

    Returns:
        List of Bengali words
    """
    entry = lexicon.lookup(text)
    if entry is not None and entry.tag is EntryTag.ABBREV:
        return list(entry.expansion)
    if not text.endswith(ABBREVIATION_DOT):
        return [text]
    stem = text[: -len(ABBREVIATION_DOT)]
    entry = lexicon.lookup(stem)
    if entry is not None and entry.tag is EntryTag.ABBREV:
        return list(entry.expansion)
    problem = UnknownAbbreviationError(text)
    logger.warning(str(problem), stage="Normalize")
    if warnings is not None:
        warnings.append(str(problem))
    return letter_name_reading(stem)
