#!/usr/bin/env python3
"""Simple runner script for orbitspace."""

import sys

from orbitspace.main import main

if __name__ == "__main__":
    sys.exit(main())
