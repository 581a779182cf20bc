"""
Rule interface and the per-word working state shared by all rules.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from ..core.schemas import TranscriptionOptions
from ..observability.logger import get_logger
from ..phoneset import Phone
from ..script import GraphemeCluster


logger = get_logger("bangla_ipa.g2p")


class Position(str, Enum):
    """Where a cluster sits inside its word."""
    INITIAL = "initial"
    MEDIAL = "medial"
    FINAL = "final"


@dataclass(frozen=True)
class TraceStep:
    """One rule firing: the rule, the grapheme span it read, and the phones it left."""
    rule_id: str
    span: Tuple[int, int]
    phones: Tuple[Phone, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rule": self.rule_id,
            "span": list(self.span),
            "phones": "".join(p.render() for p in self.phones),
        }

    def __str__(self) -> str:
        return f"{self.rule_id}[{self.span[0]}:{self.span[1]}] {''.join(p.render() for p in self.phones)}"


@dataclass
class Seg:
    """A phone in the draft, tied to the cluster it came from."""
    phone: Phone
    cluster: int
    rule: str
    inherent: bool = False
    suffix: bool = False

    @property
    def is_vowel(self) -> bool:
        return self.phone.is_vowel


@dataclass
class WordState:
    """
    Mutable draft for one word.

    ``clusters`` are the word's grapheme clusters; every Seg points back to
    one of them. Rules edit ``segs`` in place and log what they did with
    ``emit``.
    """
    text: str
    clusters: List[GraphemeCluster]
    opts: TranscriptionOptions
    segs: List[Seg] = field(default_factory=list)
    trace: List[TraceStep] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    # clusters whose inherent vowel is never deleted, and ones with a fixed quality
    keep_inherent: Set[int] = field(default_factory=set)
    fixed_inherent: Dict[int, Tuple[str, str]] = field(default_factory=dict)
    suffix_cluster: Optional[int] = None
    stem_final_cluster: Optional[int] = None

    # --- Cluster helpers ---
    @property
    def letter_indices(self) -> List[int]:
        return [i for i, c in enumerate(self.clusters) if c.is_letter]

    def position(self, ci: int) -> Position:
        letters = self.letter_indices
        if letters and ci == letters[0]:
            return Position.INITIAL
        if letters and ci == letters[-1]:
            return Position.FINAL
        return Position.MEDIAL

    def span(self, ci: int) -> Tuple[int, int]:
        base = self.clusters[0].start if self.clusters else 0
        c = self.clusters[ci]
        return c.start - base, c.end - base

    def segs_of(self, ci: int) -> List[Seg]:
        return [s for s in self.segs if s.cluster == ci]

    def vowel_of(self, ci: int) -> Optional[Seg]:
        """First vowel Seg produced by cluster ci."""
        for s in self.segs:
            if s.cluster == ci and s.is_vowel:
                return s
        return None

    # --- Rule bookkeeping ---
    def enabled(self, rule_id: str) -> bool:
        return rule_id not in self.opts.disabled_rules

    def emit(self, rule_id: str, ci: int, phones: Sequence[Phone] = ()):
        """Record a rule firing on cluster ci."""
        self.trace.append(TraceStep(rule_id, self.span(ci), tuple(phones)))
        logger.rule_applied(rule_id, self.text)

    def warn(self, message: str):
        logger.warning(f"{self.text}: {message}", stage="G2P")
        self.warnings.append(message)

    def phones(self) -> List[Phone]:
        return [s.phone for s in self.segs]


class Rule(ABC):
    """
    A pipeline stage of the g2p engine.

    Each stage owns one or more rule ids. Optional ids can be switched
    off through ``TranscriptionOptions.disabled_rules``.
    """

    name: str = "rule"
    rule_ids: Tuple[str, ...] = ()

    @abstractmethod
    def apply(self, state: WordState) -> None:
        """
        Rewrite the draft in place.

        Args:
            state: Working state of the current word
        """
        pass

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self.rule_ids)})"
