"""
Exception lexicon: loanwords, abbreviations, acronyms, proper names,
number words and homograph overrides.

File format (UTF-8 TSV, no header, ``#`` comments)::

    surface<TAB>ipa<TAB>tag[<TAB>expansion words]

IPA columns are folded onto the inventory and must pass strict validation.

There is no priority column. Priority belongs to a whole file: pass
``priority=`` to load_lexicon or load_lexicon_file and every entry of that
file carries it. save_lexicon does not write it, so a saved lexicon loads
back at the priority its loader chooses.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, TextIO, Tuple

from pydantic import ValidationError

from .core.exceptions import (
    DuplicateSurfaceError,
    InvalidIpaError,
    LexiconEntryError,
    LexiconError,
    LexiconParseError,
    UnknownSymbolError,
)
from .core.schemas import EntryTag, LexiconEntry
from .core.utils import PathLike, iter_tsv
from .observability.logger import get_logger
from .phoneset import parse_ipa, render_ipa, validate_phoneseq
from .script import nfc


logger = get_logger("bangla_ipa.lexicon")

DATA_PACKAGE = "bangla_ipa.data"
DEFAULT_FILES = ("number_words.tsv", "default_lexicon.tsv")


class Lexicon:
    """
    Immutable surface → entry table.
    """

    def __init__(
        self,
        entries: Iterable[LexiconEntry] = (),
        name: str = "lexicon",
        version: str = "1",
        errors: Optional[List[str]] = None,
    ):
        table: Dict[str, LexiconEntry] = {}
        for entry in entries:
            table[nfc(entry.surface)] = entry
        self._entries: Mapping[str, LexiconEntry] = MappingProxyType(table)
        self.name = name
        self.version = version
        self.errors: List[str] = list(errors or [])

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, surface: object) -> bool:
        return isinstance(surface, str) and nfc(surface) in self._entries

    def __iter__(self) -> Iterator[LexiconEntry]:
        for surface in sorted(self._entries):
            yield self._entries[surface]

    def __repr__(self) -> str:
        return f"Lexicon(name={self.name!r}, entries={len(self)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return len(self) == len(other) and all(a.same_content(b) for a, b in zip(self, other))

    __hash__ = None

    @property
    def metadata(self) -> Dict[str, object]:
        return {"name": self.name, "version": self.version, "entry_count": len(self)}

    def lookup(self, surface: str) -> Optional[LexiconEntry]:
        """
        Exact-match lookup on the NFC form of surface.

        Args:
            surface: Any string

        Returns:
            The entry, or None on a miss
        """
        return self._entries.get(nfc(surface))

    def merge(self, overlay: "Lexicon") -> "Lexicon":
        """Return merge(self, overlay)."""
        return merge(self, overlay)


def merge(base: Lexicon, overlay: Lexicon) -> Lexicon:
    """
    Combine two lexicons.

    On a surface collision the higher priority wins; at equal priority the
    overlay wins.

    Returns:
        New Lexicon named after both inputs
    """
    table: Dict[str, LexiconEntry] = {e.surface: e for e in base}
    for entry in overlay:
        current = table.get(entry.surface)
        if current is None or entry.priority >= current.priority:
            table[entry.surface] = entry
    if not len(overlay):
        name = base.name
    elif not len(base):
        name = overlay.name
    else:
        name = f"{base.name}+{overlay.name}"
    return Lexicon(table.values(), name=name, version=overlay.version, errors=base.errors + overlay.errors)


def canonical_entry_ipa(ipa: str) -> str:
    """
    Fold and strictly validate an IPA column.

    Raises:
        UnknownSymbolError: glyph outside the inventory (after folding)
        InvalidIpaError: phone invariants broken
    """
    seq = parse_ipa(ipa.strip(), strict=True, fold_aliases=True)
    violations = validate_phoneseq(seq)
    if violations:
        raise InvalidIpaError(ipa, violations)
    return render_ipa(seq)


def _parse_line(line_no: int, fields: Sequence[str], priority: int) -> LexiconEntry:
    if len(fields) not in (3, 4):
        raise LexiconParseError(line_no, f"expected 3 or 4 columns, got {len(fields)}")
    surface, ipa, tag = (f.strip() for f in fields[:3])
    try:
        entry_tag = EntryTag(tag)
    except ValueError:
        raise LexiconParseError(line_no, f"unknown tag {tag!r}") from None
    try:
        canonical = canonical_entry_ipa(ipa)
    except (UnknownSymbolError, InvalidIpaError) as e:
        raise LexiconEntryError(line_no, e) from e
    expansion = tuple(nfc(w) for w in fields[3].split()) if len(fields) == 4 else ()
    try:
        return LexiconEntry(
            surface=nfc(surface),
            ipa=canonical,
            tag=entry_tag,
            expansion=expansion,
            priority=priority,
            line_no=line_no,
        )
    except ValidationError as e:
        message = e.errors()[0].get("msg", str(e))
        raise LexiconParseError(line_no, message) from None


def load_lexicon(
    stream: Iterable[str],
    strict: bool = True,
    name: str = "lexicon",
    priority: int = 0,
) -> Lexicon:
    """
    Load a lexicon from a TSV stream.

    Args:
        stream: Iterable of text lines
        strict: Abort on the first bad line; otherwise skip it and record the error
        name: Lexicon name for metadata and merged names
        priority: Priority given to every entry of this file

    Returns:
        Lexicon

    Raises:
        LexiconError: strict mode, with the offending line number
    """
    entries: Dict[str, LexiconEntry] = {}
    errors: List[str] = []
    for line_no, fields in iter_tsv(stream):
        try:
            entry = _parse_line(line_no, fields, priority)
            if entry.surface in entries:
                raise DuplicateSurfaceError(entry.surface, line_no)
        except LexiconError as e:
            if strict:
                raise
            logger.warning(f"{name}: {e}", stage="Lexicon")
            errors.append(f"{name}: {e}")
            continue
        entries[entry.surface] = entry
    logger.debug(f"loaded {len(entries)} entries from {name}", stage="Lexicon")
    return Lexicon(entries.values(), name=name, errors=errors)


def load_lexicon_file(path: PathLike, strict: bool = True, priority: int = 0) -> Lexicon:
    """Load a lexicon TSV file from disk."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        return load_lexicon(f, strict=strict, name=path.stem, priority=priority)


def save_lexicon(lexicon: Lexicon, stream: TextIO) -> None:
    """Write entries sorted by surface in the TSV format."""
    for entry in lexicon:
        columns = [entry.surface, entry.ipa, entry.tag.value]
        if entry.expansion:
            columns.append(" ".join(entry.expansion))
        stream.write("\t".join(columns) + "\n")


@lru_cache(maxsize=1)
def _default_entries() -> Tuple[LexiconEntry, ...]:
    result = Lexicon(name="default")
    data = resources.files(DATA_PACKAGE)
    for filename in DEFAULT_FILES:
        with data.joinpath(filename).open("r", encoding="utf-8") as f:
            result = merge(result, load_lexicon(f, strict=True, name=Path(filename).stem))
    return tuple(result)


def load_default_lexicon() -> Lexicon:
    """
    The shipped number-word table plus the worked-example lexicon.

    The files are parsed once; every call returns a new Lexicon object.
    """
    return Lexicon(_default_entries(), name="default")


def load_lexicons(
    paths: Sequence[PathLike] = (),
    lexicon_dir: Optional[PathLike] = None,
    strict: bool = True,
    include_default: bool = True,
) -> Lexicon:
    """
    Build the working lexicon: default, then every ``*.tsv`` in lexicon_dir
    (sorted), then each explicit path, each one overlaid on the previous.
    """
    result = load_default_lexicon() if include_default else Lexicon(name="empty")
    overlays: List[Path] = []
    if lexicon_dir is not None:
        overlays.extend(sorted(Path(lexicon_dir).glob("*.tsv")))
    overlays.extend(Path(p) for p in paths)
    for path in overlays:
        result = merge(result, load_lexicon_file(path, strict=strict))
    return result
