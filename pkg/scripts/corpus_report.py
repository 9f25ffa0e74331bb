#!/usr/bin/env python3
"""Print the full invariant table for every bundled diagram.

Usage: python scripts/corpus_report.py [name ...]
"""

import json
import sys

from sfkit import corpus
from sfkit.corpuscheck import diagram_report


def main(argv):
    names = argv or corpus.corpus_names()
    for name in names:
        report = diagram_report(name)
        print(f"== {name}")
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
