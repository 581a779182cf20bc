"""
G2P engine: lexicon lookup first, then the rule pipeline; sentence-level
routing of numbers and abbreviations through the normalizer.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..core.schemas import EntryTag, ResultSource, TranscriptionOptions
from ..lexicon import Lexicon, load_default_lexicon
from ..normalize import (
    DIGIT_CONTEXT_WORDS,
    HUNDRED,
    expand_abbreviation,
    expand_mixed,
    verbalize_number,
)
from ..observability.logger import get_logger
from ..phoneset import (
    Diacritic,
    Phone,
    PhoneSeq,
    parse_ipa,
    validate_phoneseq,
)
from ..script import GraphemeCluster, Token, TokenKind, nfc, segment_graphemes, tokenize
from .base import Position, Rule, TraceStep, WordState
from .rules import (
    GlideRule,
    InherentVowelRule,
    NasalizationRule,
    default_rules,
    glide_pairs,
    map_onset,
    map_vowel,
)
from .tables import INDEPENDENT_VOWELS, SUFFIX_VOWELS


logger = get_logger("bangla_ipa.g2p")

LEXICON_RULE = "lexicon"
REPAIR_RULE = "invariant-repair"


# ─── Results ─────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class TranscriptionResult:
    """
    Transcription of one word.

    ``phone_rules`` runs parallel to ``ipa`` and names the rule (or
    ``lexicon``) that left each phone.
    """
    word: str
    ipa: PhoneSeq
    source: ResultSource
    trace: Tuple[TraceStep, ...] = ()
    phone_rules: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = ()
    flags: Tuple[str, ...] = ()
    span: Optional[Tuple[int, int]] = None

    def render(self) -> str:
        return self.ipa.render()

    def to_dict(self) -> Dict[str, Any]:
        """Convert result to dictionary."""
        return {
            "word": self.word,
            "ipa": self.render(),
            "source": self.source.value,
            "trace": [step.to_dict() for step in self.trace],
            "warnings": list(self.warnings),
            "flags": list(self.flags),
        }

    def __repr__(self):
        return f"TranscriptionResult({self.word!r} -> {self.render()!r}, {self.source.value})"


@dataclass(frozen=True)
class SentenceResult:
    """Word results in token order plus the joined phone sequence."""
    text: str
    words: Tuple[TranscriptionResult, ...]
    ipa: PhoneSeq
    warnings: Tuple[str, ...] = ()

    def render(self) -> str:
        return self.ipa.render()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "text": self.text,
            "ipa": self.render(),
            "words": [w.to_dict() for w in self.words],
            "warnings": list(self.warnings),
        }


# ─── Engine ──────────────────────────────────────────────────────────────────

class G2PEngine:
    """
    Immutable transcriber: a lexicon, default options and the rule pipeline.

    Calls are pure functions of (text, lexicon, options), so one engine can
    be shared across threads.
    """

    def __init__(
        self,
        lexicon: Optional[Lexicon] = None,
        opts: Optional[TranscriptionOptions] = None,
        rules: Optional[Sequence[Rule]] = None,
    ):
        self.lexicon = lexicon if lexicon is not None else load_default_lexicon()
        self.opts = opts or TranscriptionOptions()
        self.rules: Tuple[Rule, ...] = tuple(rules) if rules is not None else default_rules()

    def __repr__(self):
        return f"G2PEngine(lexicon={self.lexicon!r}, rules={len(self.rules)})"

    # --- Words ---
    def transcribe_word(
        self,
        word: Union[str, Token],
        opts: Optional[TranscriptionOptions] = None,
    ) -> TranscriptionResult:
        """
        Transcribe one word.

        A lexicon hit returns the entry verbatim. A miss tries a lexicon stem
        plus suffix vowel, or a number word plus শো, and falls back to the
        full rule pipeline.

        Args:
            word: Word text or Word token
            opts: Overrides the engine's options

        Returns:
            TranscriptionResult whose ipa passes validate_phoneseq
        """
        opts = opts or self.opts
        span = word.span if isinstance(word, Token) else None
        text = nfc(word.text if isinstance(word, Token) else word)
        if not text:
            return TranscriptionResult(text, PhoneSeq(), ResultSource.RULES, span=span)

        entry = self.lexicon.lookup(text)
        if entry is not None:
            logger.lexicon_hit(text, entry.tag.value)
            seq = parse_ipa(entry.ipa)
            step = TraceStep(LEXICON_RULE, (0, len(text)), tuple(seq))
            return TranscriptionResult(
                text, seq, ResultSource.LEXICON, (step,),
                phone_rules=tuple(LEXICON_RULE for _ in seq), span=span,
            )

        clusters = segment_graphemes(text)
        mixed = self._split_with_lexicon(text, clusters, opts)
        if mixed is not None:
            return _with_span(mixed, span)
        return _with_span(self._run_rules(text, clusters, opts), span)

    def _run_rules(self, text: str, clusters: List[GraphemeCluster], opts: TranscriptionOptions,
                   upto: Optional[type] = None) -> TranscriptionResult:
        state = WordState(text=text, clusters=clusters, opts=opts)
        for rule in self.rules:
            rule.apply(state)
            if upto is not None and isinstance(rule, upto):
                break
        phones, rules = _repair(state)
        return TranscriptionResult(
            word=text,
            ipa=PhoneSeq(tuple(phones)),
            source=ResultSource.RULES,
            trace=tuple(state.trace),
            phone_rules=tuple(rules),
            warnings=tuple(state.warnings),
            flags=tuple(state.flags),
        )

    def _split_with_lexicon(self, text: str, clusters: List[GraphemeCluster],
                            opts: TranscriptionOptions) -> Optional[TranscriptionResult]:
        """Lexicon stem + emphatic suffix vowel, or lexicon number + শো."""
        letters = [c for c in clusters if c.is_letter]
        if len(letters) < 2:
            return None
        last = letters[-1]
        if (
            len(letters) >= 3 and last.independent_vowel in SUFFIX_VOWELS
            and not last.has_chandrabindu and not last.trailing_marks
        ):
            stem = text[: last.start - clusters[0].start]
            entry = self.lexicon.lookup(stem)
            if entry is not None and not entry.ipa.endswith("ɐ"):
                suffix = INDEPENDENT_VOWELS[last.independent_vowel][0]
                rule = "base-map"
                if opts.mark_morph_length and "suffix-length" not in opts.disabled_rules:
                    suffix = suffix.with_mark(Diacritic.LONG)
                    rule = "suffix-length"
                return _joined(text, stem, parse_ipa(entry.ipa), (suffix,), rule)
        if text.endswith(HUNDRED) and len(text) > len(HUNDRED):
            stem = text[: -len(HUNDRED)]
            head, tail = self.lexicon.lookup(stem), self.lexicon.lookup(HUNDRED)
            if head is not None and tail is not None and head.tag is EntryTag.NUMBER:
                return _joined(text, stem, parse_ipa(head.ipa), tuple(parse_ipa(tail.ipa)), LEXICON_RULE)
        return None

    # --- Sentences ---
    def expand_token(self, token: Token, previous: Optional[str], opts: TranscriptionOptions,
                     warnings: List[str]) -> List[str]:
        """Words to transcribe for one token; punctuation gives none."""
        flagged = previous is not None and previous in DIGIT_CONTEXT_WORDS
        if token.kind is TokenKind.PUNCT:
            return []
        if token.kind is TokenKind.NUMBER:
            return verbalize_number(token.text, opts, flagged, warnings)
        if token.kind is TokenKind.MIXED:
            return expand_mixed(token.text, opts, flagged, warnings)
        if token.kind is TokenKind.ABBREVIATION:
            return expand_abbreviation(token.text, self.lexicon, warnings)
        return [token.text]

    def transcribe_sentence(self, text: str, opts: Optional[TranscriptionOptions] = None) -> SentenceResult:
        """
        Tokenize, normalize numbers and abbreviations, transcribe each word.

        Punctuation never reaches the IPA. Word results are joined with
        single word separators in token order.

        Returns:
            SentenceResult
        """
        opts = opts or self.opts
        warnings: List[str] = []
        results: List[TranscriptionResult] = []
        previous: Optional[str] = None
        for token in tokenize(text):
            words = self.expand_token(token, previous, opts, warnings)
            for w in words:
                result = self.transcribe_word(w, opts)
                results.append(_with_span(result, token.span))
                warnings.extend(result.warnings)
            if token.kind is not TokenKind.PUNCT:
                previous = token.text
        seq = PhoneSeq.join_words(r.ipa for r in results)
        return SentenceResult(nfc(text), tuple(results), seq, tuple(warnings))


# ─── Helpers ─────────────────────────────────────────────────────────────────

def _with_span(result: TranscriptionResult, span: Optional[Tuple[int, int]]) -> TranscriptionResult:
    if span is None or result.span == span:
        return result
    return TranscriptionResult(
        result.word, result.ipa, result.source, result.trace, result.phone_rules,
        result.warnings, result.flags, span,
    )


def _joined(text: str, stem: str, head: PhoneSeq, tail: Sequence[Phone], tail_rule: str) -> TranscriptionResult:
    seq = PhoneSeq(tuple(head) + tuple(tail))
    trace = (
        TraceStep(LEXICON_RULE, (0, len(stem)), tuple(head)),
        TraceStep(tail_rule, (len(stem), len(text)), tuple(tail)),
    )
    rules = tuple(LEXICON_RULE for _ in head) + tuple(tail_rule for _ in tail)
    return TranscriptionResult(text, seq, ResultSource.MIXED, trace, rules)


def _repair(state: WordState) -> Tuple[List[Phone], List[str]]:
    """Canonicalize marks; strip the marks of any phone that still breaks an invariant."""
    for s in state.segs:
        s.phone = s.phone.canonical()
    phones = state.phones()
    for v in validate_phoneseq(phones):
        s = state.segs[v.position]
        s.phone = Phone(s.phone.base)
        s.rule = REPAIR_RULE
        state.warn(f"InvariantBreach: {v}")
    return state.phones(), [s.rule for s in state.segs]


def _prefix(clusters: Sequence[GraphemeCluster], opts: Optional[TranscriptionOptions], upto: type) -> List[Phone]:
    text = "".join(c.text for c in clusters)
    engine = G2PEngine(Lexicon(name="empty"), opts)
    return list(engine._run_rules(text, list(clusters), engine.opts, upto=upto).ipa)


# ─── Public operations ───────────────────────────────────────────────────────

def map_base_cluster(cluster: GraphemeCluster, position: Union[Position, str] = Position.MEDIAL) -> List[Phone]:
    """
    Phones a cluster spells out before any context rule.

    The inherent vowel is not included; it is resolved per word.

    Args:
        cluster: Cluster from segment_graphemes
        position: initial, medial or final

    Returns:
        Consonant phones followed by the written vowel's phones
    """
    position = Position(position)
    onset, ya_initial = map_onset(cluster, position)
    return [p for p, _ in onset] + [p for p, _ in map_vowel(cluster, ya_initial)]


def resolve_inherent_vowels(clusters: Sequence[GraphemeCluster],
                            opts: Optional[TranscriptionOptions] = None) -> List[Phone]:
    """Phones of a word after base mapping and inherent-vowel resolution."""
    return _prefix(clusters, opts, InherentVowelRule)


def apply_glide_rules(clusters: Sequence[GraphemeCluster],
                      opts: Optional[TranscriptionOptions] = None) -> List[Phone]:
    """Phones of a word after the য় glide rules."""
    return _prefix(clusters, opts, GlideRule)


def apply_nasalization(clusters: Sequence[GraphemeCluster],
                       opts: Optional[TranscriptionOptions] = None) -> List[Phone]:
    """Phones of a word after chandrabindu nasalization."""
    return _prefix(clusters, opts, NasalizationRule)


def detect_diphthongs(phones: "PhoneSeq | Sequence[Phone]", blocked: Sequence[int] = ()) -> PhoneSeq:
    """
    Mark the offglide of every regular or irregular diphthong.

    Args:
        phones: Vowel-resolved phones
        blocked: Positions that must not join a pair (suffix vowels)

    Returns:
        New PhoneSeq
    """
    out = list(phones)
    for target, _ in glide_pairs(out, blocked):
        out[target] = out[target].with_mark(Diacritic.NON_SYLLABIC)
    return PhoneSeq(tuple(out))


def mark_suffix_length(phones: "PhoneSeq | Sequence[Phone]", suffix_index: Optional[int]) -> PhoneSeq:
    """
    Lengthen the suffix vowel at suffix_index.

    Args:
        phones: Word phones
        suffix_index: Position of the suffix vowel, or None when there is no suffix

    Returns:
        New PhoneSeq; the preceding vowel is untouched
    """
    out = list(phones)
    if suffix_index is not None and out[suffix_index].is_vowel:
        out[suffix_index] = out[suffix_index].with_mark(Diacritic.LONG)
    return PhoneSeq(tuple(out))


def transcribe_word(word: Union[str, Token], lexicon: Optional[Lexicon] = None,
                    opts: Optional[TranscriptionOptions] = None) -> TranscriptionResult:
    """Transcribe one word with the default or given lexicon."""
    return G2PEngine(lexicon, opts).transcribe_word(word)


def transcribe_sentence(text: str, lexicon: Optional[Lexicon] = None,
                        opts: Optional[TranscriptionOptions] = None) -> SentenceResult:
    """Transcribe running text with the default or given lexicon."""
    return G2PEngine(lexicon, opts).transcribe_sentence(text)

