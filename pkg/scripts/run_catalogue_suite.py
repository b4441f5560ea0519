#!/usr/bin/env python3
"""Run the built-in catalogue suite and write the report next to this repo.

Equivalent to `fsemcalc suite --out report.json`; kept as a script so the
default regression run is one command from a checkout.
"""

import sys

from fsemcalc.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite", "--out", "report.json", *sys.argv[1:]]))
