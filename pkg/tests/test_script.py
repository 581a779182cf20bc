"""
Tests for code point classes, grapheme segmentation and tokenization.
"""

import random

import pytest

from bangla_ipa.core.exceptions import MalformedSequenceError
from bangla_ipa.script import (
    BENGALI_BLOCK,
    NUKTA,
    ClusterKind,
    CodepointClass,
    TokenKind,
    classify_codepoint,
    nfc,
    segment_graphemes,
    tokenize,
)


# ─── classify_codepoint ──────────────────────────────────────────────────────

@pytest.mark.parametrize("ch,expected", [
    ("ক", CodepointClass.CONSONANT_LETTER),
    ("অ", CodepointClass.INDEPENDENT_VOWEL),
    ("া", CodepointClass.VOWEL_SIGN),
    ("্", CodepointClass.VIRAMA),
    ("ঁ", CodepointClass.CHANDRABINDU),
    ("ং", CodepointClass.ANUSVARA),
    ("ঃ", CodepointClass.VISARGA),
    ("়", CodepointClass.NUKTA),
    ("৭", CodepointClass.BENGALI_DIGIT),
    ("7", CodepointClass.LATIN_DIGIT),
    ("‌", CodepointClass.JOINER),
    ("।", CodepointClass.PUNCTUATION),
    (" ", CodepointClass.WHITESPACE),
    ("x", CodepointClass.OTHER),
])
def test_classify_codepoint(ch, expected):
    assert classify_codepoint(ch) is expected


def test_classify_accepts_integers():
    assert classify_codepoint(0x0995) is CodepointClass.CONSONANT_LETTER


def test_every_block_position_has_a_bengali_class():
    assert all(classify_codepoint(cp) is not CodepointClass.OTHER for cp in BENGALI_BLOCK)


def test_unassigned_block_position_is_punctuation():
    assert classify_codepoint(0x0984) is CodepointClass.PUNCTUATION


# ─── segment_graphemes ───────────────────────────────────────────────────────

def test_conjunct_is_one_cluster():
    clusters = segment_graphemes("ক্ষমা")
    assert [c.text for c in clusters] == ["ক্ষ", "মা"]
    assert clusters[0].bases == ("ক", "ষ")
    assert clusters[0].is_conjunct
    assert clusters[1].vowel_sign == "া"


def test_nukta_letters_join_their_base():
    clusters = segment_graphemes("বাড়ি")
    assert len(clusters) == 2
    assert clusters[1].bases == ("ড" + NUKTA,)
    assert clusters[1].vowel_sign == "ি"


def test_signs_and_marks_are_recorded():
    (chand,) = segment_graphemes("চাঁ")
    assert chand.has_chandrabindu
    clusters = segment_graphemes("বাংলা")
    assert clusters[0].trailing_marks == ("ং",)
    clusters = segment_graphemes("সৎ")
    assert [c.bases for c in clusters] == [("স",), ("ৎ",)]


def test_final_virama_is_kept_on_cluster():
    (cluster,) = segment_graphemes("ক্")
    assert cluster.has_virama_final


def test_zwnj_blocks_conjunct():
    clusters = segment_graphemes("ক্‌ষ")
    assert len([c for c in clusters if c.is_letter]) == 2


def test_degenerate_clusters_in_lenient_mode():
    clusters = segment_graphemes("াক")
    assert clusters[0].kind is ClusterKind.MARK
    assert clusters[0].degenerate
    assert clusters[1].bases == ("ক",)


def test_strict_mode_raises_with_offset():
    with pytest.raises(MalformedSequenceError) as info:
        segment_graphemes("কা ্", strict=True)
    assert info.value.offset == 3


def test_segmentation_reproduces_normalized_text():
    rng = random.Random(7)
    alphabet = [chr(cp) for cp in BENGALI_BLOCK] + [" ", "a", "5", "‌", "‍"]
    for _ in range(500):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        clusters = segment_graphemes(text)
        assert "".join(c.text for c in clusters) == nfc(text)
        assert all(c.text for c in clusters)


# ─── tokenize ────────────────────────────────────────────────────────────────

def test_token_kinds():
    tokens = tokenize("আমি ২০৬ টাকা দিলাম।")
    assert [t.kind for t in tokens] == [
        TokenKind.WORD, TokenKind.NUMBER, TokenKind.WORD, TokenKind.WORD, TokenKind.PUNCT,
    ]
    assert tokens[1].text == "২০৬"


def test_mixed_and_abbreviation_tokens():
    tokens = tokenize("মো. রহিম ১৯টা")
    assert [(t.text, t.kind) for t in tokens] == [
        ("মো.", TokenKind.ABBREVIATION),
        ("রহিম", TokenKind.WORD),
        ("১৯টা", TokenKind.MIXED),
    ]


def test_spans_index_the_normalized_text():
    text = nfc("সে বাড়ি গেল, তারপর ফিরল।")
    for token in tokenize(text):
        start, end = token.span
        assert text[start:end] == token.text


def test_tokens_cover_all_non_whitespace():
    text = "ক, খ; ৩টি — ok!"
    covered = "".join(t.text for t in tokenize(text))
    assert covered == "".join(text.split())


def test_empty_and_blank_input():
    assert tokenize("") == []
    assert tokenize("   \t ") == []
