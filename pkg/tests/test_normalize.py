"""
Tests for number verbalization, mixed tokens and abbreviations.
"""

import pytest

from bangla_ipa.core.exceptions import OutOfRangeError
from bangla_ipa.core.schemas import NumberMode, TranscriptionOptions
from bangla_ipa.normalize import (
    number_to_words_cardinal,
    number_to_words_digits,
    expand_abbreviation,
    expand_mixed,
    resolve_policy,
    verbalize_number,
)
from bangla_ipa.script import nfc


def _nfc(words):
    return [nfc(w) for w in words]


# ─── Cardinals ───────────────────────────────────────────────────────────────

@pytest.mark.parametrize("value,expected", [
    (0, ["শূন্য"]),
    (7, ["সাত"]),
    (19, ["উনিশ"]),
    (100, ["একশো"]),
    (206, ["দুইশো", "ছয়"]),
    (2050, ["দুই", "হাজার", "পঞ্চাশ"]),
    (100000, ["এক", "লাখ"]),
    (10 ** 7, ["এক", "কোটি"]),
    (12345678, ["এক", "কোটি", "তেইশ", "লাখ", "পঁয়তাল্লিশ", "হাজার", "ছয়শো", "আটাত্তর"]),
])
def test_cardinal_readings(value, expected):
    assert _nfc(number_to_words_cardinal(value)) == _nfc(expected)


@pytest.mark.parametrize("value", [-1, 10 ** 9, 10 ** 12])
def test_cardinal_range(value):
    with pytest.raises(OutOfRangeError):
        number_to_words_cardinal(value)


def test_largest_cardinal_has_no_zero_words():
    words = _nfc(number_to_words_cardinal(10 ** 9 - 1))
    assert nfc("শূন্য") not in words
    assert words[:2] == _nfc(["নিরানব্বই", "কোটি"])


# ─── Digits and policy ───────────────────────────────────────────────────────

def test_digit_by_digit_reading():
    assert _nfc(number_to_words_digits("২০৫০")) == _nfc(["দুই", "শূন্য", "পাঁচ", "শূন্য"])
    assert _nfc(number_to_words_digits("07")) == _nfc(["শূন্য", "সাত"])


@pytest.mark.parametrize("digits,mode,flagged,expected", [
    ("১২৩", NumberMode.AUTO, False, NumberMode.CARDINAL),
    ("০১৭১১২২৩৩৪৪", NumberMode.AUTO, False, NumberMode.DIGITS),
    ("১২৩", NumberMode.AUTO, True, NumberMode.DIGITS),
    ("১২৩৪৫৬৭৮", NumberMode.CARDINAL, False, NumberMode.CARDINAL),
    ("১২", NumberMode.DIGITS, False, NumberMode.DIGITS),
])
def test_resolve_policy(digits, mode, flagged, expected):
    assert resolve_policy(digits, mode, 7, flagged) is expected


def test_out_of_range_number_falls_back_to_digits():
    warnings = []
    opts = TranscriptionOptions(number_policy=NumberMode.CARDINAL)
    words = verbalize_number("1234567890", opts, warnings=warnings)
    assert len(words) == 10
    assert len(warnings) == 1


# ─── Mixed tokens ────────────────────────────────────────────────────────────

def test_mixed_token_splits_digits_from_letters():
    assert _nfc(expand_mixed("১৯টা")) == _nfc(["উনিশ", "টা"])
    assert _nfc(expand_mixed("A4")) == _nfc(["A", "চার"])


def test_ordinal_suffix_reads_as_ordinal_with_review_note():
    warnings = []
    assert _nfc(expand_mixed("১ম", warnings=warnings)) == _nfc(["প্রথম"])
    assert warnings and warnings[0].startswith("review")


def test_ordinal_suffix_outside_table_stays_cardinal():
    assert _nfc(expand_mixed("১১ম")) == _nfc(["এগারো", "ম"])


# ─── Abbreviations ───────────────────────────────────────────────────────────

def test_known_abbreviation_expands(lexicon):
    assert _nfc(expand_abbreviation("মো.", lexicon)) == _nfc(["মোহাম্মদ"])
    assert _nfc(expand_abbreviation("ডা.", lexicon)) == _nfc(["ডাক্তার"])


def test_undotted_acronym_is_left_for_lookup(lexicon):
    assert expand_abbreviation("এসএসসি", lexicon) == ["এসএসসি"]


def test_unknown_abbreviation_reads_letter_names(lexicon):
    warnings = []
    assert expand_abbreviation("কখ.", lexicon, warnings) == ["ক", "খ"]
    assert "unknown abbreviation" in warnings[0]
