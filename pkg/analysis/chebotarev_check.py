#!/usr/bin/env python3
"""
Chebotarev Check
Samples Frobenius types of a curve over primes q <= B and compares their
frequencies with the densities predicted by the class distribution.
"""
from pathlib import Path
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd
import seaborn as sns

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT))

from divfield import config
from divfield.elliptic import CurveQ
from divfield.zeta import chebotarev_sample

OUTPUT_DIR = config.OUTPUT_DIR / "plots"

sns.set_palette("husl")


def outliers(frame: pd.DataFrame, sigmas: float = 3.0) -> pd.DataFrame:
    return frame[frame["z"].abs() > sigmas]


def run_check(curve: str = "X0(11)", N: int = 7, B: int = 20000, plot: bool = True) -> pd.DataFrame:
    E = CurveQ.from_text(curve)
    frame = chebotarev_sample(E, N, B, quiet=False)
    total = int(frame["observed"].sum())
    print(f"=== Chebotarev Check: {curve}, N={N}, q <= {B} ===")
    print(f"{total} unramified primes sampled over {len(frame)} types")
    print(frame.to_string(index=False))

    bad = outliers(frame)
    if bad.empty:
        print("✅ Every type within 3 sigma of its expected count")
    else:
        print(f"⚠️ {len(bad)} types outside 3 sigma:")
        print(bad.to_string(index=False))

    if plot:
        OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
        long = frame.melt(id_vars="type", value_vars=["observed", "expected"],
                          var_name="count", value_name="primes")
        fig, ax = plt.subplots(figsize=(12, 6))
        sns.barplot(data=long, x="type", y="primes", hue="count", ax=ax)
        ax.set_title(f"Observed vs expected Frobenius types, N={N}", fontsize=14, fontweight="bold")
        ax.tick_params(axis="x", rotation=30)
        plt.tight_layout()
        output_path = OUTPUT_DIR / f"chebotarev_N{N}.png"
        plt.savefig(output_path, dpi=300, bbox_inches="tight")
        plt.close(fig)
        print(f"✅ Plot saved to: {output_path}")
    return frame


if __name__ == "__main__":
    run_check()
