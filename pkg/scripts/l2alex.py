#!/usr/bin/env python3

"""
Run the l2alex command line program from a checkout of the collection.

    scripts/l2alex.py compute --knot catalog:4_1 --t 0.5,1,2 --format json
    scripts/l2alex.py audit --n 5 --format text
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from plugins.module_utils.cli import main  # pylint: disable=wrong-import-position

if __name__ == "__main__":
    raise SystemExit(main())
