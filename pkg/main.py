#!/usr/bin/env python
"""
Main entry point for bangla-ipa when run from a source checkout.
Same commands as the installed ``bangla-ipa`` script.

Examples:
  python main.py transcribe input.txt -o output.ipa
  python main.py evaluate --corpus test.tsv --report report.txt
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from bangla_ipa.cli import main


if __name__ == "__main__":
    main()
