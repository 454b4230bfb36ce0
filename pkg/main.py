#!/usr/bin/env python3
"""
Pseudograph - explicit pseudo-random graphs
Build (n, d, lambda)-graphs, measure their spectra and audit them.

Main application entry point.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from src.core.application import PseudographApp


def main() -> int:
    """Main application entry point."""
    app = PseudographApp()
    return app.run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
