#!/usr/bin/env python3
"""
Orchestrate the table run: compute → load → analyse.
Run from project root:  python scripts/run_tables.py [N] [curve] [B]
"""
from pathlib import Path
import sys
here = Path(__file__).resolve().parent
sys.path.append(str(here))
sys.path.append(str(here.parent))

from compute_tables import run_compute
from load_db import run_load
from analysis.top_types import analyse_top_types

if __name__ == "__main__":
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 63
    curve = sys.argv[2] if len(sys.argv) > 2 else "X0(11)"
    B = int(sys.argv[3]) if len(sys.argv) > 3 else 2000
    print(f"🚀 Building tables for N={N}, {curve}, B={B}")
    paths = run_compute(N, curve, 1, B)
    run_load(paths, N)
    analyse_top_types(N)
    if "zeta" not in paths:
        print("🏁 Tables incomplete: no zeta coefficients")
        sys.exit(1)
    print("🏁 Tables complete")
