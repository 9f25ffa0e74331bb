#!/usr/bin/env python3
"""Regenerate the frozen expected-result records for the bundled corpus.

Run only after the acceptance suite (whose independent oracles justify the
values) is green; the records are then compared byte-for-byte by
`sfk corpus-check`.
"""

import sys

from sfkit.corpuscheck import write_expected


def main():
    write_expected()
    print("expected records rewritten")
    return 0


if __name__ == "__main__":
    sys.exit(main())
