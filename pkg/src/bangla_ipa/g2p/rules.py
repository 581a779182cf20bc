"""
The g2p pipeline stages, in the order the engine runs them:

    base map → inherent vowels → glides → nasalization → diphthongs
    → suffix length → হ register → syllable dots
"""

from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from ..core.exceptions import UnmappableGraphemeError
from ..phoneset import HIGH_VOWELS, SYLLABLE_SEP, Diacritic, Phone
from ..script import ANUSVARA, VISARGA, ZWJ, ZWNJ, ClusterKind, GraphemeCluster
from .base import Position, Rule, Seg, WordState
from .tables import (
    AA_LETTER,
    AA_SIGN,
    ANUSVARA_PHONE,
    BA,
    CONSONANTS,
    HA,
    INDEPENDENT_VOWELS,
    INHERENT,
    LOAN_CONSONANTS,
    MA,
    NO_INHERENT,
    NUKTA,
    SPECIAL_CONJUNCTS,
    SUFFIX_VOWELS,
    VISARGA_PHONE,
    VOWEL_SIGNS,
    YA,
    YA_GLIDE,
    DiphthongKind,
    Glide,
    diphthong_kind,
)


OPEN_VOWEL = "ɔ"
CLOSE_VOWEL = "o"
YA_PHALA_VOWEL = "ɛ"
CODA_GLIDE = Phone("e", (Diacritic.NON_SYLLABIC.value,))
INHERENT_SLOT = "inherent"


# ─── Base mapping ────────────────────────────────────────────────────────────

def _consonant(base: str) -> Tuple[Tuple[Phone, ...], str]:
    if base in LOAN_CONSONANTS:
        return LOAN_CONSONANTS[base], "loan-phone"
    if base in CONSONANTS:
        return CONSONANTS[base], "base-map"
    bare = base.replace(NUKTA, "")
    if bare in CONSONANTS:
        return CONSONANTS[bare], "base-map"
    return (), "unmappable"


def map_onset(
    cluster: GraphemeCluster,
    position: Position,
    enabled: Callable[[str], bool] = lambda _: True,
) -> Tuple[List[Tuple[Phone, str]], bool]:
    """
    Consonant phones of a cluster, each with the rule that produced it.

    Returns:
        (phones with rule ids, whether a word-initial য-phala colors the vowel)
    """
    bases = cluster.bases
    out: List[Tuple[Phone, str]] = []
    ya_initial = False
    i = 0
    while i < len(bases):
        b = bases[i]
        pair = (b, bases[i + 1]) if i + 1 < len(bases) else None
        if pair in SPECIAL_CONJUNCTS and enabled("special-conjunct"):
            initial_form, medial_form = SPECIAL_CONJUNCTS[pair]
            form = initial_form if position is Position.INITIAL and i == 0 else medial_form
            out.extend((p, "special-conjunct") for p in form)
            i += 2
            continue
        if i > 0 and b == YA and enabled("ya-phala"):
            if position is Position.INITIAL:
                ya_initial = True
            elif out:
                out[-1] = (out[-1][0].with_mark(Diacritic.PALATALIZED), "ya-phala")
            i += 1
            continue
        if i > 0 and b == BA and bases[i - 1] not in (MA, BA) and enabled("ba-phala"):
            already_double = len(out) >= 2 and out[-1][0].base == out[-2][0].base
            if position is not Position.INITIAL and out and not already_double:
                held, held_rule = out[-1]
                out[-1] = (Phone(held.base), "ba-phala")
                out.append((held, held_rule))
            i += 1
            continue
        phones, rule = _consonant(b)
        if i > 0 and bases[i - 1] == b and rule == "base-map":
            rule = "geminate"
        out.extend((p, rule) for p in phones)
        i += 1
    return out, ya_initial


def map_vowel(cluster: GraphemeCluster, ya_initial: bool = False) -> List[Tuple[Phone, str]]:
    """Phones of the written vowel (letter or sign); empty when the vowel is inherent."""
    if cluster.independent_vowel is not None:
        phones = INDEPENDENT_VOWELS.get(cluster.independent_vowel, ())
        return [(p, "base-map") for p in phones]
    if cluster.vowel_sign is not None:
        phones = VOWEL_SIGNS.get(cluster.vowel_sign, ())
        if ya_initial and cluster.vowel_sign == AA_SIGN:
            return [(Phone(YA_PHALA_VOWEL), "ya-phala")]
        return [(p, "base-map") for p in phones]
    return []


def has_inherent_vowel(cluster: GraphemeCluster) -> bool:
    """A consonant cluster with no sign and no virama carries the inherent vowel."""
    if cluster.kind is not ClusterKind.CONSONANT or cluster.vowel_sign is not None:
        return False
    if cluster.has_virama_final:
        return False
    return cluster.bases[-1] not in NO_INHERENT or cluster.has_chandrabindu


class BaseMapRule(Rule):
    """Map every cluster to phones; inherent vowels become unresolved slots."""

    name = "base-map"
    rule_ids = (
        "base-map", "loan-phone", "special-conjunct", "geminate", "ya-phala",
        "ba-phala", "visarga-gemination", "unmappable", "degenerate",
    )

    def apply(self, state: WordState) -> None:
        for ci, cluster in enumerate(state.clusters):
            if cluster.is_letter:
                segs = self._letter(state, ci, cluster)
            else:
                segs = self._non_letter(state, ci, cluster)
            state.segs.extend(segs)
            self._emit_groups(state, ci, segs, cluster)
        self._visarga(state)
        find_suffix(state)

    def _letter(self, state: WordState, ci: int, cluster: GraphemeCluster) -> List[Seg]:
        position = state.position(ci)
        onset, ya_initial = map_onset(cluster, position, state.enabled)
        segs = [Seg(p, ci, rule) for p, rule in onset]
        segs.extend(Seg(p, ci, rule) for p, rule in map_vowel(cluster, ya_initial))

        if cluster.independent_vowel == INHERENT:
            segs[-1].inherent = True
            segs[-1].rule = INHERENT_SLOT
            state.keep_inherent.add(ci)
        elif has_inherent_vowel(cluster):
            segs.append(Seg(Phone(OPEN_VOWEL), ci, INHERENT_SLOT, inherent=True))
            if ya_initial:
                state.fixed_inherent[ci] = (YA_PHALA_VOWEL, "ya-phala")
                state.keep_inherent.add(ci)
            if cluster.has_chandrabindu:
                state.keep_inherent.add(ci)

        for mark in cluster.trailing_marks:
            if mark == ANUSVARA:
                segs.append(Seg(ANUSVARA_PHONE, ci, "base-map"))
            elif mark == VISARGA:
                segs.append(Seg(VISARGA_PHONE, ci, "base-map"))
        return segs

    def _non_letter(self, state: WordState, ci: int, cluster: GraphemeCluster) -> List[Seg]:
        if cluster.kind is ClusterKind.MARK:
            if cluster.text == ANUSVARA:
                return [Seg(ANUSVARA_PHONE, ci, "degenerate")]
            return []
        if cluster.text in (ZWJ, ZWNJ):
            return []
        problem = UnmappableGraphemeError(cluster.text, state.span(ci)[0])
        state.warn(str(problem))
        return []

    def _emit_groups(self, state: WordState, ci: int, segs: Sequence[Seg], cluster: GraphemeCluster):
        if not cluster.is_letter:
            rule = "degenerate" if cluster.kind is ClusterKind.MARK or cluster.text in (ZWJ, ZWNJ) \
                else "unmappable"
            state.emit(rule, ci, [s.phone for s in segs])
            return
        groups: Dict[str, List[Phone]] = {}
        for s in segs:
            if s.rule != INHERENT_SLOT:
                groups.setdefault(s.rule, []).append(s.phone)
        if not groups:
            groups["base-map"] = []
        for rule, phones in groups.items():
            state.emit(rule, ci, phones)

    def _visarga(self, state: WordState):
        """
        ঃ before a consonant doubles it, unaspirated; elsewhere it stays h.
        Before a cluster that is already geminate (নিঃশ্বাস) ঃ adds nothing.
        """
        if not state.enabled("visarga-gemination"):
            return
        segs = state.segs
        absorbed: List[Seg] = []
        for i, s in enumerate(segs):
            if VISARGA not in state.clusters[s.cluster].trailing_marks or s.phone != VISARGA_PHONE:
                continue
            nxt = segs[i + 1] if i + 1 < len(segs) else None
            if nxt is None or nxt.cluster == s.cluster or nxt.is_vowel:
                continue
            after = segs[i + 2] if i + 2 < len(segs) else None
            if after is not None and after.cluster == nxt.cluster and after.phone.base == nxt.phone.base:
                absorbed.append(s)
                state.emit("visarga-gemination", s.cluster)
                continue
            s.phone = Phone(nxt.phone.base)
            s.rule = "visarga-gemination"
            state.emit(s.rule, s.cluster, [s.phone])
        for s in absorbed:
            segs.remove(s)


def find_suffix(state: WordState) -> None:
    """
    Detect an emphatic/conjunctive suffix vowel (ও ই এ) closing the word.

    The word needs at least three letter clusters, and the stem must not end
    in ɐ (যাচাই keeps its diphthong). A stem ending in an inherent vowel is
    consonant-final, so that cluster is treated as word-final.
    """
    letters = state.letter_indices
    if len(letters) < 3:
        return
    last, prev = letters[-1], letters[-2]
    suffix = state.clusters[last]
    if suffix.independent_vowel not in SUFFIX_VOWELS or suffix.has_chandrabindu or suffix.trailing_marks:
        return
    stem_end = state.clusters[prev]
    if stem_end.vowel_sign == AA_SIGN or stem_end.independent_vowel == AA_LETTER:
        return
    state.suffix_cluster = last
    for s in state.segs_of(last):
        s.suffix = True
    if has_inherent_vowel(stem_end) and not stem_end.trailing_marks:
        state.stem_final_cluster = prev


# ─── Inherent vowels ─────────────────────────────────────────────────────────

class InherentVowelRule(Rule):
    """
    Resolve inherent vowel slots to ɔ or o, or delete them.

    Deletion: word-final after a single consonant, and medially between a
    vowel and a consonant+vowel onset. Word-final slots survive as o after
    a conjunct or হ; a one-cluster word keeps ɔ. Elsewhere the vowel is o
    before a high vowel and ɔ otherwise.
    """

    name = "inherent-vowels"
    rule_ids = (
        "inherent-final-deletion", "medial-schwa-deletion", "inherent-conjunct-final-o",
        "inherent-h-final-o", "inherent-single-cluster", "inherent-o-raising", "inherent-default",
    )

    def apply(self, state: WordState) -> None:
        letters = state.letter_indices
        single = len(letters) == 1
        for s in [s for s in state.segs if s.inherent]:
            if s.cluster in state.keep_inherent or s.cluster in state.fixed_inherent:
                continue
            cluster = state.clusters[s.cluster]
            if cluster.kind is not ClusterKind.CONSONANT:
                continue
            if self._is_final(state, s.cluster):
                if single:
                    continue
                if cluster.is_conjunct:
                    state.fixed_inherent[s.cluster] = (CLOSE_VOWEL, "inherent-conjunct-final-o")
                elif cluster.bases[-1] == HA:
                    state.fixed_inherent[s.cluster] = (CLOSE_VOWEL, "inherent-h-final-o")
                elif state.enabled("inherent-final-deletion"):
                    self._delete(state, s, "inherent-final-deletion")
                continue
            if state.enabled("medial-schwa-deletion") and self._medial_context(state, s):
                self._delete(state, s, "medial-schwa-deletion")

        for s in reversed([s for s in state.segs if s.inherent and s.rule == INHERENT_SLOT]):
            base, rule = self._quality(state, s, single)
            s.phone = Phone(base, s.phone.marks)
            s.rule = rule
            state.emit(rule, s.cluster, [s.phone])

    @staticmethod
    def _is_final(state: WordState, ci: int) -> bool:
        letters = state.letter_indices
        cluster = state.clusters[ci]
        at_end = ci == letters[-1] or ci == state.stem_final_cluster
        return at_end and not cluster.trailing_marks

    def _will_lose_final(self, state: WordState, ci: int) -> bool:
        cluster = state.clusters[ci]
        return (
            has_inherent_vowel(cluster)
            and ci not in state.keep_inherent
            and ci not in state.fixed_inherent
            and self._is_final(state, ci)
            and len(state.letter_indices) > 1
            and not cluster.is_conjunct
            and cluster.bases[-1] != HA
            and state.enabled("inherent-final-deletion")
        )

    def _medial_context(self, state: WordState, s: Seg) -> bool:
        ci = s.cluster
        cluster = state.clusters[ci]
        if cluster.is_conjunct or cluster.trailing_marks or YA_GLIDE in cluster.bases:
            return False
        first = next(i for i, x in enumerate(state.segs) if x.cluster == ci)
        if first == 0:
            return False
        prev = state.segs[first - 1]
        if not prev.is_vowel or prev.cluster == ci:
            return False
        letters = state.letter_indices
        later = [i for i in letters if i > ci]
        if not later:
            return False
        nxt = state.clusters[later[0]]
        if nxt.kind is not ClusterKind.CONSONANT or nxt.bases[0] == HA:
            return False
        if nxt.vowel_sign is not None:
            return True
        return has_inherent_vowel(nxt) and not self._will_lose_final(state, later[0])

    @staticmethod
    def _delete(state: WordState, s: Seg, rule: str):
        state.segs.remove(s)
        state.emit(rule, s.cluster, [])

    @staticmethod
    def _quality(state: WordState, s: Seg, single: bool) -> Tuple[str, str]:
        if s.cluster in state.fixed_inherent:
            return state.fixed_inherent[s.cluster]
        if single:
            return OPEN_VOWEL, "inherent-single-cluster"
        idx = state.segs.index(s)
        following = next((x for x in state.segs[idx + 1:] if x.is_vowel), None)
        if following is not None and following.phone.base in HIGH_VOWELS and state.enabled("inherent-o-raising"):
            return CLOSE_VOWEL, "inherent-o-raising"
        return OPEN_VOWEL, "inherent-default"


# ─── Glides ──────────────────────────────────────────────────────────────────

class GlideRule(Rule):
    """
    য় between and after vowels.

    After a vowel with no vowel of its own, য় is the offglide e̯. Between
    vowels it palatalizes the preceding vowel (ʲ), or labializes a
    preceding o (ʷ) in ওয়া-type spellings. An inherent vowel right after
    the palatal transition is raised to o.
    """

    name = "glides"
    rule_ids = ("coda-ya-diphthong", "middle-ya-palatal", "owa-labial", "post-palatal-raising")

    def apply(self, state: WordState) -> None:
        i = 0
        while i < len(state.segs):
            s = state.segs[i]
            if s.phone.base != "j" or YA_GLIDE not in state.clusters[s.cluster].bases:
                i += 1
                continue
            prev = state.segs[i - 1] if i > 0 else None
            nxt = state.segs[i + 1] if i + 1 < len(state.segs) else None
            prev_vowel = prev is not None and prev.is_vowel
            own_vowel = nxt is not None and nxt.cluster == s.cluster and nxt.is_vowel
            if prev_vowel and not own_vowel and state.enabled("coda-ya-diphthong"):
                s.phone = CODA_GLIDE
                s.rule = "coda-ya-diphthong"
                state.emit(s.rule, s.cluster, [s.phone])
            elif prev_vowel and own_vowel:
                if self._transition(state, i, prev, nxt):
                    continue
            i += 1

    def _transition(self, state: WordState, i: int, prev: Seg, nxt: Seg) -> bool:
        s = state.segs[i]
        if prev.phone.base == CLOSE_VOWEL and not prev.inherent and state.enabled("owa-labial"):
            prev.phone = prev.phone.with_mark(Diacritic.LABIALIZED)
            rule = "owa-labial"
        elif state.enabled("middle-ya-palatal"):
            prev.phone = prev.phone.with_mark(Diacritic.PALATALIZED)
            rule = "middle-ya-palatal"
        else:
            return False
        prev.rule = rule
        del state.segs[i]
        state.emit(rule, s.cluster, [prev.phone])
        if nxt.inherent and nxt.cluster not in state.fixed_inherent:
            if state.enabled("post-palatal-raising") and rule == "middle-ya-palatal":
                nxt.phone = Phone(CLOSE_VOWEL, nxt.phone.marks)
                nxt.rule = "post-palatal-raising"
                state.emit(nxt.rule, nxt.cluster, [nxt.phone])
            later = [ci for ci in state.letter_indices if ci > s.cluster]
            if later:
                state.flags.append(f"review: middle য় before a consonant in {state.text}")
        return True


# ─── Nasalization ────────────────────────────────────────────────────────────

class NasalizationRule(Rule):
    """Chandrabindu nasalizes the vowel of its cluster."""

    name = "nasalization"
    rule_ids = ("chandrabindu-nasal",)

    def apply(self, state: WordState) -> None:
        for ci, cluster in enumerate(state.clusters):
            if not cluster.has_chandrabindu or not cluster.is_letter:
                continue
            vowel = state.vowel_of(ci)
            if vowel is None:
                state.warn(f"InvariantBreach: chandrabindu in {cluster.text!r} has no vowel; nasal dropped")
                continue
            vowel.phone = vowel.phone.with_mark(Diacritic.NASAL)
            vowel.rule = "chandrabindu-nasal"
            state.emit(vowel.rule, ci, [vowel.phone])


# ─── Diphthongs ──────────────────────────────────────────────────────────────

_TRANSITION_MARKS = (Diacritic.PALATALIZED, Diacritic.LABIALIZED, Diacritic.NON_SYLLABIC, Diacritic.LONG)


def _pairable(p: Phone) -> bool:
    return p.is_vowel and not any(p.has(m) for m in _TRANSITION_MARKS)


def glide_pairs(
    phones: Sequence[Phone],
    blocked: Iterable[int] = (),
    irregular_ok: Callable[[int, int], bool] = lambda i, j: True,
) -> List[Tuple[int, DiphthongKind]]:
    """
    Find adjacent vowel pairs that form a diphthong.

    Args:
        phones: Phones of one or more words
        blocked: Positions that may not take part in a pair
        irregular_ok: Whether the irregular table applies to the pair (i, i+1)

    Returns:
        (position of the non-syllabic member, table kind), left to right
    """
    blocked = set(blocked)
    found: List[Tuple[int, DiphthongKind]] = []
    i = 0
    while i + 1 < len(phones):
        a, b = phones[i], phones[i + 1]
        if i in blocked or i + 1 in blocked or not (_pairable(a) and _pairable(b)):
            i += 1
            continue
        hit = diphthong_kind(a.base, b.base)
        if hit is None or (hit[0] is DiphthongKind.IRREGULAR and not irregular_ok(i, i + 1)):
            i += 1
            continue
        kind, glide = hit
        target = i + 1 if glide is Glide.FALLING else i
        if phones[target].base != "ɐ":
            found.append((target, kind))
            i += 2
            continue
        i += 1
    return found


class DiphthongRule(Rule):
    """
    Mark the offglide of adjacent vowel pairs found in the diphthong tables.

    Irregular pairs count only inside the stem: both vowels in one cluster,
    or the second vowel written in a non-final cluster.
    """

    name = "diphthongs"
    rule_ids = ("diphthong-glide", "diphthong-irregular")

    def apply(self, state: WordState) -> None:
        if not state.enabled("diphthong-glide"):
            return
        segs = state.segs
        letters = state.letter_indices
        last = letters[-1] if letters else None
        blocked = {i for i, s in enumerate(segs) if s.suffix}

        def irregular_ok(i: int, j: int) -> bool:
            if not state.enabled("diphthong-irregular"):
                return False
            if segs[i].cluster == segs[j].cluster:
                return True
            return segs[j].cluster != last

        for target, kind in glide_pairs([s.phone for s in segs], blocked, irregular_ok):
            s = segs[target]
            s.phone = s.phone.with_mark(Diacritic.NON_SYLLABIC)
            s.rule = "diphthong-glide" if kind is DiphthongKind.REGULAR else "diphthong-irregular"
            state.emit(s.rule, s.cluster, [s.phone])


# ─── Suffix length ───────────────────────────────────────────────────────────

class SuffixLengthRule(Rule):
    """Lengthen the vowel of a detected emphatic/conjunctive suffix."""

    name = "suffix-length"
    rule_ids = ("suffix-length",)

    def apply(self, state: WordState) -> None:
        if state.suffix_cluster is None or not state.opts.mark_morph_length:
            return
        if not state.enabled("suffix-length"):
            return
        vowel = state.vowel_of(state.suffix_cluster)
        if vowel is None:
            return
        vowel.phone = vowel.phone.with_mark(Diacritic.LONG)
        vowel.rule = "suffix-length"
        state.emit(vowel.rule, vowel.cluster, [vowel.phone])


# ─── হ register ──────────────────────────────────────────────────────────────

class HRegisterRule(Rule):
    """
    হ is always h, word-initially and between vowels. Careful speech
    records each হ in the trace as carefully articulated.
    """

    name = "h-register"
    rule_ids = ("careful-h",)

    def apply(self, state: WordState) -> None:
        if not state.opts.careful_speech:
            return
        for s in state.segs:
            if s.phone.base == "h" and HA in state.clusters[s.cluster].bases:
                state.emit("careful-h", s.cluster, [s.phone])


# ─── Syllable dots ───────────────────────────────────────────────────────────

def syllable_breaks(phones: Sequence[Phone]) -> List[int]:
    """
    Positions before which a syllable dot goes.

    Each syllabic vowel after the first starts a syllable. A single
    consonant right before it is its onset; an offglide right after the
    previous nucleus stays with that nucleus.
    """
    nuclei = [
        i for i, p in enumerate(phones)
        if p.is_vowel and not p.has(Diacritic.NON_SYLLABIC)
    ]
    breaks: List[int] = []
    for prev, cur in zip(nuclei, nuclei[1:]):
        onset = cur - 1
        offglide = onset == prev + 1 and phones[onset].is_vowel
        breaks.append(onset if onset > prev and not offglide else cur)
    return breaks


class SyllableDotRule(Rule):
    """Display mode: insert '.' at syllable boundaries."""

    name = "syllable-dots"
    rule_ids = ("syllable-dots",)

    def apply(self, state: WordState) -> None:
        if not state.opts.emit_syllable_dots:
            return
        for pos in reversed(syllable_breaks(state.phones())):
            cluster = state.segs[pos].cluster
            state.segs.insert(pos, Seg(SYLLABLE_SEP, cluster, "syllable-dots"))
            state.emit("syllable-dots", cluster, [SYLLABLE_SEP])


def default_rules() -> Tuple[Rule, ...]:
    """The fixed pipeline order."""
    return (
        BaseMapRule(),
        InherentVowelRule(),
        GlideRule(),
        NasalizationRule(),
        DiphthongRule(),
        SuffixLengthRule(),
        HRegisterRule(),
        SyllableDotRule(),
    )


ALL_RULE_IDS: Tuple[str, ...] = tuple(
    rule_id for rule in default_rules() for rule_id in rule.rule_ids
)
