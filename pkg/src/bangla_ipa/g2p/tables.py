"""
Grapheme → phone tables for the rule engine.

Consonants follow the proposed consonant chart (শ/ষ/স all ʃ, র always ɾ,
voiced aspirates with ʱ). Vowel letters and signs follow the proposed
vowel chart. Keys are NFC: ড় ঢ় য় are stored as base + nukta.
"""

from enum import Enum
from typing import Dict, FrozenSet, Tuple

from ..phoneset import Diacritic, Phone, phone


_ASP = Diacritic.ASP_VOICELESS
_VASP = Diacritic.ASP_VOICED
_OFF = Diacritic.NON_SYLLABIC

NUKTA = "়"

# ─── Consonants ──────────────────────────────────────────────────────────────

CONSONANTS: Dict[str, Tuple[Phone, ...]] = {
    "ক": (phone("k"),), "খ": (phone("k", _ASP),), "গ": (phone("g"),), "ঘ": (phone("g", _VASP),), "ঙ": (phone("ŋ"),),
    "চ": (phone("c"),), "ছ": (phone("c", _ASP),), "জ": (phone("ɟ"),), "ঝ": (phone("ɟ", _VASP),), "ঞ": (phone("ŋ"),),
    "ট": (phone("ʈ"),), "ঠ": (phone("ʈ", _ASP),), "ড": (phone("ɖ"),), "ঢ": (phone("ɖ", _VASP),), "ণ": (phone("n"),),
    "ত": (phone("t̪"),), "থ": (phone("t̪", _ASP),), "দ": (phone("d̪"),), "ধ": (phone("d̪", _VASP),), "ন": (phone("n"),),
    "প": (phone("p"),), "ফ": (phone("p", _ASP),), "ব": (phone("b"),), "ভ": (phone("b", _VASP),), "ম": (phone("m"),),
    "য": (phone("ɟ"),), "র": (phone("ɾ"),), "ল": (phone("l"),),
    "শ": (phone("ʃ"),), "ষ": (phone("ʃ"),), "স": (phone("ʃ"),), "হ": (phone("h"),),
    "ড" + NUKTA: (phone("ɽ"),),
    "ঢ" + NUKTA: (phone("ɽ", _VASP),),
    "য" + NUKTA: (phone("j"),),
    "ৎ": (phone("t̪"),),
    # Assamese ra/wa, read like their Bengali counterparts
    "ৰ": (phone("ɾ"),), "ৱ": (phone("b"),),
}

# Nukta spellings used for loan sounds.
LOAN_CONSONANTS: Dict[str, Tuple[Phone, ...]] = {
    "জ" + NUKTA: (phone("z"),),
    "ফ" + NUKTA: (phone("f"),),
}

YA = "য"
YA_GLIDE = "য" + NUKTA
BA = "ব"
MA = "ম"
HA = "হ"
KHANDA_TA = "ৎ"

# Letters that never carry an inherent vowel.
NO_INHERENT: FrozenSet[str] = frozenset({KHANDA_TA})

# Conjunct pairs with a fixed reading: (word-initial, elsewhere).
SPECIAL_CONJUNCTS: Dict[Tuple[str, str], Tuple[Tuple[Phone, ...], Tuple[Phone, ...]]] = {
    ("ক", "ষ"): ((phone("k", _ASP),), (phone("k"), phone("k", _ASP))),
    ("জ", "ঞ"): ((phone("g"),), (phone("g"), phone("g"))),
}

# ─── Vowels ──────────────────────────────────────────────────────────────────

INHERENT = "অ"

INDEPENDENT_VOWELS: Dict[str, Tuple[Phone, ...]] = {
    "অ": (phone("ɔ"),),
    "আ": (phone("ɐ"),),
    "ই": (phone("ɪ"),), "ঈ": (phone("ɪ"),),
    "উ": (phone("ʊ"),), "ঊ": (phone("ʊ"),),
    "ঋ": (phone("ɾ"), phone("ɪ")), "ৠ": (phone("ɾ"), phone("ɪ")),
    "ঌ": (phone("l"), phone("ɪ")), "ৡ": (phone("l"), phone("ɪ")),
    "এ": (phone("e"),),
    "ঐ": (phone("o"), phone("ɪ", _OFF)),
    "ও": (phone("o"),),
    "ঔ": (phone("o"), phone("ʊ", _OFF)),
}

VOWEL_SIGNS: Dict[str, Tuple[Phone, ...]] = {
    "া": (phone("ɐ"),),
    "ি": (phone("ɪ"),), "ী": (phone("ɪ"),),
    "ু": (phone("ʊ"),), "ূ": (phone("ʊ"),),
    "ৃ": (phone("ɾ"), phone("ɪ")), "ৄ": (phone("ɾ"), phone("ɪ")),
    "ৢ": (phone("l"), phone("ɪ")), "ৣ": (phone("l"), phone("ɪ")),
    "ে": (phone("e"),),
    "ৈ": (phone("o"), phone("ɪ", _OFF)),
    "ো": (phone("o"),),
    "ৌ": (phone("o"), phone("ʊ", _OFF)),
    "ৗ": (phone("o"), phone("ʊ", _OFF)),
}

AA_SIGN = "া"
AA_LETTER = "আ"

# Independent vowels that end a word as an emphatic/conjunctive suffix.
SUFFIX_VOWELS: FrozenSet[str] = frozenset({"ও", "ই", "এ"})

ANUSVARA_PHONE = phone("ŋ")
VISARGA_PHONE = phone("h")

# ─── Diphthongs ──────────────────────────────────────────────────────────────

class DiphthongKind(str, Enum):
    """Table a vowel pair comes from."""
    REGULAR = "regular"
    IRREGULAR = "irregular"


class Glide(str, Enum):
    """Which member of the pair is non-syllabic."""
    FALLING = "falling"
    RISING = "rising"


REGULAR_DIPHTHONGS: Dict[Tuple[str, str], Glide] = {
    pair: Glide.FALLING for pair in [
        ("ɪ", "ʊ"),
        ("e", "ɪ"), ("e", "ʊ"),
        ("ɛ", "e"), ("ɛ", "o"),
        ("ɐ", "ɪ"), ("ɐ", "e"), ("ɐ", "ʊ"), ("ɐ", "o"),
        ("ɔ", "ɪ"), ("ɔ", "e"), ("ɔ", "o"), ("ɔ", "ʊ"),
        ("o", "ɪ"), ("o", "e"), ("o", "ʊ"),
        ("ʊ", "ɪ"), ("ʊ", "e"), ("ʊ", "o"),
    ]
}

# ɐ has no semi-vowel form, so pairs ending in ɐ glide on the first member.
IRREGULAR_DIPHTHONGS: Dict[Tuple[str, str], Glide] = {
    ("ɪ", "ɐ"): Glide.RISING,
    ("ʊ", "ɐ"): Glide.RISING,
    ("e", "ɐ"): Glide.RISING,
    ("o", "ɐ"): Glide.RISING,
    ("ɛ", "ɐ"): Glide.RISING,
    ("ɔ", "ɐ"): Glide.RISING,
    ("ɪ", "e"): Glide.FALLING,
    ("ɪ", "o"): Glide.FALLING,
    ("ɪ", "ɔ"): Glide.FALLING,
    ("e", "o"): Glide.FALLING,
    ("ɛ", "ɪ"): Glide.FALLING,
    ("ɛ", "ʊ"): Glide.FALLING,
}


def diphthong_kind(first: str, second: str) -> "Tuple[DiphthongKind, Glide] | None":
    """Look a vowel pair up in both tables."""
    pair = (first, second)
    if pair in REGULAR_DIPHTHONGS:
        return DiphthongKind.REGULAR, REGULAR_DIPHTHONGS[pair]
    if pair in IRREGULAR_DIPHTHONGS:
        return DiphthongKind.IRREGULAR, IRREGULAR_DIPHTHONGS[pair]
    return None
