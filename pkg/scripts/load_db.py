#!/usr/bin/env python3
"""
Load:
- Write computed type, minimal-degree and zeta tables into SQLite (or DB in DIVFIELD_DB_URL)
- Create helpful indexes
"""
from pathlib import Path
import sys

import pandas as pd
from sqlalchemy import create_engine, text

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT))

from divfield import config

TABLES = {
    "types": ("factorization_types", ["CREATE INDEX IF NOT EXISTS idx_types_modulus ON factorization_types(modulus);",
                                      "CREATE INDEX IF NOT EXISTS idx_types_type ON factorization_types(type);"]),
    "min_degrees": ("min_degrees", ["CREATE INDEX IF NOT EXISTS idx_min_degrees_modulus ON min_degrees(modulus);"]),
    "zeta": ("zeta_coefficients", ["CREATE INDEX IF NOT EXISTS idx_zeta_curve ON zeta_coefficients(curve, modulus);",
                                   "CREATE INDEX IF NOT EXISTS idx_zeta_n ON zeta_coefficients(n);"]),
}


def run_load(paths: dict[str, Path], N: int, db_url: str | None = None):
    engine = create_engine(db_url or config.DB_URL, future=True)
    with engine.begin() as conn:
        for key, path in paths.items():
            table, indexes = TABLES[key]
            # zeta values outgrow 64-bit integers
            df = pd.read_csv(path, dtype={"z_n": str})
            # "N" would clash with "n": SQLite column names ignore case
            if "modulus" not in df.columns:
                df.insert(0, "modulus", N)
            df.to_sql(table, conn, if_exists="replace", index=False)
            for stmt in indexes:
                conn.execute(text(stmt))
            print(f"✅ Loaded {len(df)} rows into {table} → {db_url or config.DB_URL}")


if __name__ == "__main__":
    data = config.OUTPUT_DIR / "data"
    run_load({"types": data / "types_N63.csv", "min_degrees": data / "min_degrees_N63.csv"}, 63)
