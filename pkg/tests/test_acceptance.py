"""
End-to-end properties: golden transcriptions, metric sanity, an oracle
check of the aligner, fuzzing of the rule engine, and number readings.

Every random test runs from a fixed seed.
"""

import itertools
import random
from functools import lru_cache

import pytest

from bangla_ipa.core.schemas import NumberMode, ResultSource, TranscriptionOptions
from bangla_ipa.eval import (
    CorpusRecord,
    ParallelCorpus,
    edit_distance_alignment,
    evaluate_corpus,
    wer,
)
from bangla_ipa.normalize import (
    CARDINAL_LIMIT,
    CRORE,
    HUNDRED,
    LAKH,
    THOUSAND,
    UNIT_WORDS,
    number_to_words_cardinal,
    number_to_words_digits,
)
from bangla_ipa.g2p.tables import HA
from bangla_ipa.phoneset import Diacritic, normalize_ipa, validate_phoneseq
from bangla_ipa.script import BENGALI_BLOCK, nfc, segment_graphemes


# ─── Golden transcriptions ───────────────────────────────────────────────────

@pytest.mark.parametrize("word,expected", [
    ("মুসক", "muʃɔk"),
    ("এসএসসি", "esessi"),
    ("ফেইক", "feik"),
    ("ফজর", "fɔzɔr"),
])
def test_golden_words(engine, word, expected):
    got = engine.transcribe_word(word).render()
    assert normalize_ipa(got, fold_aliases=True) == normalize_ipa(expected, fold_aliases=True)


def test_golden_suffix_length(engine):
    assert engine.transcribe_word("গরুগুলোও").render().endswith("ooː")


def test_golden_numbers(engine):
    assert engine.transcribe_sentence("২০৬").render() == "d̪ʊɪ̯ʃo cʰɔe̯"
    digits = TranscriptionOptions(number_policy=NumberMode.DIGITS)
    assert len(engine.transcribe_sentence("২০৫০", digits).render().split(" ")) == 4


def test_golden_abbreviation(engine):
    assert engine.transcribe_sentence("মো.").render() == "mohɐmmɔd̪"


# ─── Metric sanity ───────────────────────────────────────────────────────────

WORD_POOL = (
    "আমি", "ভাত", "খাই", "জল", "চাঁদ", "মামলায়", "নিয়ম", "ভয়", "দেওয়া", "গরুগুলোও",
    "ফজর", "ফেইক", "মুসক", "রাষ্ট্র", "হলুদ", "দেহ", "এখন", "কেন", "মেক্সিকোও", "বাড়ি",
    "২০৬", "১৯টা", "টাকা", "মো.", "এসএসসি", "সংগ্রাম", "স্বাধীন", "পরীক্ষা", "বিজ্ঞান", "উঠেছে",
)


def _random_sentence(rng):
    words = rng.choices(WORD_POOL, k=rng.randint(1, 8))
    return " ".join(words) + rng.choice(["", "।", "?", ","])


def test_self_consistency_on_random_sentences(engine):
    rng = random.Random(2024)
    texts = [_random_sentence(rng) for _ in range(1000)]
    corpus = ParallelCorpus(
        CorpusRecord(id=f"s{i}", text=t, ref_ipa=engine.transcribe_sentence(t).render())
        for i, t in enumerate(texts)
    )
    report = evaluate_corpus(corpus, engine)
    assert (report.wer, report.per, report.cer) == (0, 0, 0)
    assert report.n_sentences == 1000


@pytest.mark.parametrize("seed", range(5))
def test_wer_moves_by_k_over_n(engine, seed):
    rng = random.Random(seed)
    text = " ".join(rng.choices(WORD_POOL[:20], k=rng.randint(3, 10)))
    ref_words = engine.transcribe_sentence(text).render().split(" ")
    n = len(ref_words)
    k = rng.randint(1, n)
    hyp_words = list(ref_words)
    for i, position in enumerate(rng.sample(range(n), k)):
        hyp_words[position] = "z" + "ɐ" * (i + 1)
    assert wer(" ".join(ref_words), " ".join(hyp_words)) * n == k


# ─── Aligner against a reference implementation ──────────────────────────────

def _oracle(a, b):
    @lru_cache(maxsize=None)
    def dist(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        if a[i] == b[j]:
            return dist(i + 1, j + 1)
        return 1 + min(dist(i + 1, j), dist(i, j + 1), dist(i + 1, j + 1))

    return dist(0, 0)


def _check(a, b):
    alignment = edit_distance_alignment(list(a), list(b))
    assert alignment.distance == _oracle(tuple(a), tuple(b)), (a, b)
    assert alignment.apply(list(a)) == list(b), (a, b)


def _strings(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_aligner_exhaustive_short_strings():
    short = list(_strings("abcd", 4))
    for a in short:
        for b in short:
            _check(a, b)


def test_aligner_exhaustive_binary_up_to_total_length_eight():
    binary = list(_strings("ab", 8))
    for a in binary:
        for b in binary:
            if len(a) + len(b) <= 8:
                _check(a, b)


def test_aligner_random_pairs():
    rng = random.Random(7)
    for _ in range(10_000):
        a = rng.choices("abcd", k=rng.randint(0, 8))
        b = rng.choices("abcd", k=rng.randint(0, 8))
        _check(a, b)
    for _ in range(10_000):
        a = rng.choices("abcd", k=rng.randint(9, 20))
        b = rng.choices("abcd", k=rng.randint(9, 20))
        _check(a, b)


# ─── Fuzzing the rule engine ─────────────────────────────────────────────────

BLOCK_CHARS = [chr(cp) for cp in BENGALI_BLOCK]
VOICED_ASPIRATES = ("ঘ", "ঝ", "ঢ", "ধ", "ভ", "ঢ" + "\u09bc")
SIGNS = ["", "া", "ি", "ী", "ু", "ূ", "ে", "ৈ", "ো", "ৌ", "্"]


def _random_words(seed, count):
    rng = random.Random(seed)
    return [nfc("".join(rng.choices(BLOCK_CHARS, k=rng.randint(1, 8)))) for _ in range(count)]


def test_fuzz_outputs_are_valid_and_canonical(engine):
    for word in _random_words(99, 10_000):
        result = engine.transcribe_word(word)
        rendered = result.render()
        assert validate_phoneseq(result.ipa) == [], word
        assert normalize_ipa(rendered) == rendered, word


def test_fuzz_chandrabindu_count_matches_nasal_vowels(engine):
    for word in _random_words(100, 10_000):
        result = engine.transcribe_word(word)
        if result.source is not ResultSource.RULES:
            continue
        marked = sum(
            1 for c in segment_graphemes(word) if c.is_letter and c.has_chandrabindu
        )
        assert not [w for w in result.warnings if w.startswith("InvariantBreach")], word
        nasal = sum(1 for p in result.ipa if Diacritic.NASAL.value in p.marks)
        assert nasal == marked, word


def test_fuzz_every_ha_keeps_its_h(engine):
    for word in _random_words(101, 10_000):
        result = engine.transcribe_word(word)
        if result.source is not ResultSource.RULES:
            continue
        written = sum(c.bases.count(HA) for c in segment_graphemes(word) if c.is_letter)
        spoken = sum(1 for p in result.ipa if p.base == "h")
        assert spoken >= written, word


def test_voiced_aspirates_never_take_voiceless_aspiration(engine):
    rng = random.Random(5)
    for _ in range(2000):
        word = "".join(
            rng.choice(VOICED_ASPIRATES) + rng.choice(SIGNS) for _ in range(rng.randint(1, 4))
        )
        assert Diacritic.ASP_VOICELESS.value not in engine.transcribe_word(word).render(), word


# ─── Number readings ─────────────────────────────────────────────────────────

_UNITS = {nfc(w): i for i, w in enumerate(UNIT_WORDS)}
_SCALE_VALUES = {nfc(CRORE): 10 ** 7, nfc(LAKH): 10 ** 5, nfc(THOUSAND): 10 ** 3}
_HUNDRED = nfc(HUNDRED)


def _words_to_value(words):
    total = 0
    pending = None
    for word in map(nfc, words):
        if word in _SCALE_VALUES:
            assert pending, words
            total += pending * _SCALE_VALUES[word]
            pending = None
        elif word.endswith(_HUNDRED) and word[: -len(_HUNDRED)] in _UNITS:
            assert pending is None, words
            total += _UNITS[word[: -len(_HUNDRED)]] * 100
        else:
            assert pending is None, words
            pending = _UNITS[word]
    return total + (pending or 0)


def test_cardinal_readings_round_trip_below_one_lakh():
    for value in range(100_000):
        assert _words_to_value(number_to_words_cardinal(value)) == value


def test_cardinal_readings_round_trip_random_large():
    rng = random.Random(31)
    for _ in range(1000):
        value = rng.randrange(CARDINAL_LIMIT)
        assert _words_to_value(number_to_words_cardinal(value)) == value


def test_digit_reading_has_one_word_per_digit():
    rng = random.Random(17)
    for _ in range(1000):
        digits = "".join(rng.choices("0123456789০১২৩৪৫৬৭৮৯", k=rng.randint(1, 15)))
        words = number_to_words_digits(digits)
        assert len(words) == len(digits)
        assert all(nfc(w) in _UNITS and _UNITS[nfc(w)] < 10 for w in words)


# ─── Determinism ─────────────────────────────────────────────────────────────

def test_repeated_runs_agree(engine):
    rng = random.Random(3)
    texts = [_random_sentence(rng) for _ in range(200)]
    first = [engine.transcribe_sentence(t).render() for t in texts]
    second = [engine.transcribe_sentence(t).render() for t in texts]
    assert first == second

    corpus = ParallelCorpus(
        CorpusRecord(id=str(i), text=t, ref_ipa=r) for i, (t, r) in enumerate(zip(texts, first))
    )
    assert evaluate_corpus(corpus, engine).model_dump_json() == evaluate_corpus(corpus, engine).model_dump_json()
