"""
Shared fixtures. Puts src/ on the import path so the tests run from a
plain checkout.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pytest

from bangla_ipa.g2p import G2PEngine
from bangla_ipa.lexicon import load_default_lexicon


@pytest.fixture(scope="session")
def lexicon():
    return load_default_lexicon()


@pytest.fixture(scope="session")
def engine(lexicon):
    return G2PEngine(lexicon)


@pytest.fixture
def write_tsv(tmp_path):
    """Write rows (lists of columns, or raw strings) to a UTF-8 TSV file."""

    def _write(name, rows):
        path = tmp_path / name
        lines = [row if isinstance(row, str) else "\t".join(row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
