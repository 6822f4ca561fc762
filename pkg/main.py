#!/usr/bin/env python3
"""
Resonance Lab

Numerical laboratory for lower bounds on max |sum_{n<=N} f(n) n^{it}|:
resonator construction, Gaussian-smoothed moments, GCD sums, certified
maximum search and the closed-form growth predictions.

Usage:
    python main.py selftest
    python main.py predict12 --T 1e9 --N 1e4 --format csv
    python main.py resonate11 --T 5000 --N 30 --window 3 13
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
