#!/usr/bin/env python3
"""
Compute:
- Distribution of factorization types for a modulus N (type, mass, density)
- Densities of minimal residual degrees for N
- Dedekind zeta coefficients of K for a curve, N and a range [A, B]
Writes CSVs under outputs/data.
"""
from pathlib import Path
import sys

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT))

from divfield import config
from divfield.cache import FrobeniusCache
from divfield.elliptic import CurveQ
from divfield.errors import DivfieldError
from divfield.zeta import distribution, distribution_table, min_degree_table, zeta_coefficients

DATA = config.OUTPUT_DIR / "data"


def run_compute(N: int = 63, curve: str = "X0(11)", A: int = 1, B: int = 2000,
                out_dir: Path | None = None, db_url: str | None = None) -> dict[str, Path]:
    out_dir = out_dir or DATA
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "types": out_dir / f"types_N{N}.csv",
        "min_degrees": out_dir / f"min_degrees_N{N}.csv",
        "zeta": out_dir / f"zeta_N{N}.csv",
    }

    dist = distribution(N)
    distribution_table(dist).to_csv(paths["types"], index=False)
    print(f"✅ {len(dist.masses)} types mod {N}, masses sum to {dist.total()} → {paths['types']}")

    min_degree_table(N).to_csv(paths["min_degrees"], index=False)
    print(f"✅ Minimal residual degrees mod {N} → {paths['min_degrees']}")

    E = CurveQ.from_text(curve)
    try:
        table = zeta_coefficients(E, N, A, B, assume_maximal_image=True,
                                  cache=FrobeniusCache(db_url), quiet=False)
    except DivfieldError as exc:
        print(f"⚠️ Zeta coefficients for {curve} skipped: {exc}")
        paths.pop("zeta")
        return paths
    frame = table.to_frame()
    frame.insert(0, "curve", E.minimal.label())
    frame.insert(1, "modulus", N)
    frame.to_csv(paths["zeta"], index=False)
    print(f"✅ {len(frame)} nonzero coefficients z_n, {A} <= n <= {B} → {paths['zeta']}")
    return paths


if __name__ == "__main__":
    run_compute()
