#!/usr/bin/env python3
"""
Top Types Analysis
Ranks the factorization types of unramified primes in K by density and plots them.
"""
from pathlib import Path
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns
from sqlalchemy import create_engine, text

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT))

from divfield import config

OUTPUT_DIR = config.OUTPUT_DIR / "plots"

plt.style.use('seaborn-v0_8')
sns.set_palette("husl")


def load_types(N: int, db_url: str | None = None) -> pd.DataFrame:
    engine = create_engine(db_url or config.DB_URL, future=True)
    query = text("""
    SELECT type, mass, density
    FROM factorization_types
    WHERE modulus = :N
    ORDER BY mass DESC
    """)
    with engine.connect() as conn:
        return pd.read_sql_query(query, conn, params={"N": N})


def summarise(df: pd.DataFrame, top: int = 15) -> pd.DataFrame:
    """Top types by density, with the cumulative share they cover."""
    out = df.sort_values("mass", ascending=False).head(top).copy()
    out["share_pct"] = out["mass"] / df["mass"].sum() * 100
    out["cumulative_pct"] = out["share_pct"].cumsum()
    return out.reset_index(drop=True)


def analyse_top_types(N: int = 63, db_url: str | None = None, top: int = 15):
    """Print and plot the most common factorization types mod N."""
    df = load_types(N, db_url)
    if df.empty:
        print(f"⚠️ No types stored for N={N}.")
        return None

    summary = summarise(df, top)
    print(f"=== Top Factorization Types (N={N}) ===")
    print(f"{len(df)} distinct types, total mass {df['mass'].sum()}")
    print(summary[['type', 'mass', 'share_pct', 'cumulative_pct']].to_string(index=False))

    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(14, max(6, len(summary) * 0.5)))
    bars = ax.barh(range(len(summary)), summary['share_pct'], color='skyblue', alpha=0.8)
    ax.set_yticks(range(len(summary)))
    ax.set_yticklabels(summary['type'], fontsize=9)
    ax.invert_yaxis()
    ax.set_xlabel('Density (%)', fontsize=12, fontweight='bold')
    ax.set_title(f'Most Common Factorization Types, N={N}', fontsize=14, fontweight='bold', pad=20)
    ax.grid(axis='x', alpha=0.3)
    for bar, value in zip(bars, summary['share_pct']):
        ax.text(value + summary['share_pct'].max() * 0.01, bar.get_y() + bar.get_height() / 2,
                f'{value:.2f}%', va='center', fontsize=9, fontweight='bold')
    plt.tight_layout()

    output_path = OUTPUT_DIR / f"top_types_N{N}.png"
    plt.savefig(output_path, dpi=300, bbox_inches='tight')
    plt.close(fig)
    print(f"\n✅ Plot saved to: {output_path}")
    return summary


if __name__ == "__main__":
    analyse_top_types(int(sys.argv[1]) if len(sys.argv) > 1 else 63)
