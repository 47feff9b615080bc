"""
SQL store of FrobeniusData keyed by (curve, q).

The curve key is the minimal model's coefficient string. One writer at a
time: callers merge worker results on the thread that owns the cache.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path

from sqlalchemy import create_engine, text

from . import config
from .elliptic import CurveQ
from .torsion import FrobeniusData

logger = logging.getLogger(__name__)

_SCHEMA = """
CREATE TABLE IF NOT EXISTS frobenius (
    curve TEXT NOT NULL,
    q INTEGER NOT NULL,
    a_q INTEGER NOT NULL,
    mu_json TEXT NOT NULL,
    disc TEXT,
    b_q TEXT,
    delta INTEGER,
    PRIMARY KEY (curve, q)
)
"""


def curve_key(E: CurveQ) -> str:
    return E.minimal.label()


class FrobeniusCache:
    def __init__(self, db_url: str | None = None):
        self.db_url = db_url or config.DB_URL
        if self.db_url.startswith("sqlite:///") and not self.db_url.startswith("sqlite:///:memory:"):
            Path(self.db_url.removeprefix("sqlite:///")).parent.mkdir(parents=True, exist_ok=True)
        self.engine = create_engine(self.db_url, future=True)
        with self.engine.begin() as conn:
            conn.execute(text(_SCHEMA))

    def get(self, E: CurveQ, q: int) -> FrobeniusData | None:
        with self.engine.connect() as conn:
            row = conn.execute(
                text("SELECT q, a_q, mu_json, disc, b_q, delta FROM frobenius "
                     "WHERE curve = :curve AND q = :q"),
                {"curve": curve_key(E), "q": q},
            ).fetchone()
        if row is None:
            return None
        q, a, mu_json, disc, b_q, delta = row
        return FrobeniusData(
            int(q), int(a), {int(k): int(v) for k, v in json.loads(mu_json).items()},
            int(disc) if disc is not None else None,
            int(b_q) if b_q is not None else None,
            int(delta) if delta is not None else None,
        )

    def put_many(self, E: CurveQ, records: list[FrobeniusData]) -> None:
        if not records:
            return
        rows = [{
            "curve": curve_key(E),
            "q": r.q,
            "a_q": r.a_q,
            "mu_json": json.dumps({str(k): v for k, v in sorted(r.mu.items())}),
            # discriminants can exceed 64 bits
            "disc": str(r.disc) if r.disc is not None else None,
            "b_q": str(r.b_q) if r.b_q is not None else None,
            "delta": r.delta,
        } for r in records]
        with self.engine.begin() as conn:
            conn.execute(text(
                "INSERT OR REPLACE INTO frobenius (curve, q, a_q, mu_json, disc, b_q, delta) "
                "VALUES (:curve, :q, :a_q, :mu_json, :disc, :b_q, :delta)"), rows)
        logger.debug("stored %d Frobenius records for %s", len(rows), curve_key(E))

    def put(self, E: CurveQ, record: FrobeniusData) -> None:
        self.put_many(E, [record])

    def export_jsonl(self, path: Path) -> int:
        with self.engine.connect() as conn:
            rows = conn.execute(text(
                "SELECT curve, q, a_q, mu_json, disc, b_q, delta FROM frobenius ORDER BY curve, q"
            )).fetchall()
        with open(path, "w", encoding="utf-8") as fh:
            for curve, q, a, mu_json, disc, b_q, delta in rows:
                record = {"curve": curve, "q": q, "a_q": a, "mu": json.loads(mu_json)}
                if disc is not None:
                    record.update(delta_q=int(disc), b_q=int(b_q), delta=delta)
                fh.write(json.dumps(record) + "\n")
        return len(rows)

    def import_jsonl(self, path: Path) -> int:
        count = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                record = json.loads(line)
                curve = CurveQ.from_text(record["curve"])
                self.put(curve, FrobeniusData.from_json(record))
                count += 1
        return count
