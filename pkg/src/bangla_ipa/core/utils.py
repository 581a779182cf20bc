"""
Core utility functions: TSV reading and JSON/text persistence.
"""

import json
from pathlib import Path
from typing import Any, Iterable, Iterator, List, Tuple, Union


PathLike = Union[str, Path]

COMMENT_PREFIX = "#"


def iter_tsv(stream: Iterable[str]) -> Iterator[Tuple[int, List[str]]]:
    """
    Yield (line number, columns) for each data line of a TSV stream.

    Blank lines and lines starting with ``#`` are skipped. A UTF-8 BOM on
    the first line is dropped. Line numbers are 1-based.

    Args:
        stream: Any iterable of text lines

    Returns:
        Iterator of (line_no, fields)
    """
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if line_no == 1:
            line = line.lstrip("﻿")
        if not line.strip() or line.lstrip().startswith(COMMENT_PREFIX):
            continue
        yield line_no, line.split("\t")


def save_json_to_file(data: Any, filename: PathLike) -> None:
    """
    Save JSON-serializable data to a file (UTF-8, non-ASCII kept).

    Args:
        data: Data to save
        filename: Target path
    """
    with open(filename, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, ensure_ascii=False)


def load_json_from_file(filename: PathLike) -> Any:
    """
    Load JSON data from a file.

    Args:
        filename: Name of the file to load from

    Returns:
        Parsed JSON value
    """
    with open(filename, 'r', encoding='utf-8') as f:
        return json.load(f)


def save_text_to_file(text: str, filename: PathLike) -> None:
    """Write text as UTF-8."""
    with open(filename, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
