from pathlib import Path
import sys

import pandas as pd
import pytest
from sqlalchemy import create_engine, text

sys.path.append(str(Path(__file__).resolve().parents[1] / "scripts"))

from analysis.chebotarev_check import outliers  # noqa: E402
from analysis.top_types import load_types, summarise  # noqa: E402
from compute_tables import run_compute  # noqa: E402
from load_db import run_load  # noqa: E402


def test_compute_and_load(tmp_path, db_url):
    paths = run_compute(7, "X0(11)", 1, 200, out_dir=tmp_path, db_url=db_url)
    assert set(paths) == {"types", "min_degrees", "zeta"}
    zeta = pd.read_csv(paths["zeta"], dtype={"z_n": str})
    assert list(zeta.columns) == ["curve", "modulus", "n", "z_n"]
    assert zeta.loc[zeta["n"] == 1, "z_n"].item() == "1"

    run_load(paths, 7, db_url)
    engine = create_engine(db_url, future=True)
    with engine.connect() as conn:
        total = conn.execute(text("SELECT SUM(mass) FROM factorization_types WHERE modulus = 7")).scalar()
        degrees = conn.execute(text("SELECT COUNT(*) FROM min_degrees")).scalar()
    assert total == 2016
    assert degrees > 0

    types = load_types(7, db_url)
    assert types["mass"].sum() == 2016
    assert types["mass"].is_monotonic_decreasing


def test_compute_skips_zeta_for_bad_curve(tmp_path, db_url, capsys):
    # y^2 = x^3 + 2 is not semistable
    paths = run_compute(7, "[0,0,0,0,2]", 1, 50, out_dir=tmp_path, db_url=db_url)
    assert "zeta" not in paths
    assert "⚠️" in capsys.readouterr().out


def test_summarise():
    df = pd.DataFrame({"type": ["a", "b", "c"], "mass": [1, 5, 2], "density": ["1/8", "5/8", "1/4"]})
    out = summarise(df, top=2)
    assert out["type"].tolist() == ["b", "c"]
    assert out["cumulative_pct"].tolist() == [62.5, 87.5]


def test_outliers():
    frame = pd.DataFrame({"type": ["a", "b"], "z": [0.5, -4.0]})
    assert outliers(frame)["type"].tolist() == ["b"]


def test_reload_keeps_indexes(tmp_path, db_url):
    paths = run_compute(7, "X0(11)", 1, 50, out_dir=tmp_path, db_url=db_url)
    run_load(paths, 7, db_url)
    run_load(paths, 7, db_url)
    engine = create_engine(db_url, future=True)
    with engine.connect() as conn:
        names = {row[0] for row in conn.execute(text("SELECT name FROM sqlite_master WHERE type = 'index'"))}
    assert {"idx_types_modulus", "idx_zeta_curve", "idx_zeta_n"} <= names


def test_compute_does_not_hide_unexpected_errors(tmp_path, db_url):
    with pytest.raises(ValueError):
        run_compute(7, "not a curve", 1, 50, out_dir=tmp_path, db_url=db_url)
