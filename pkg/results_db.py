"""
Necklace Centres - Results Store
SQLite persistence for evaluation reports and ratio-study cells.
"""

import json
import logging
import sqlite3
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from threading import Lock
from typing import Any, Dict, List, Optional

import pandas as pd

from config import get_settings
from core.models import EvalReport
from oracle.evaluate import RATIO_COLUMNS as RATIO_CELL_FIELDS

logger = logging.getLogger(__name__)


def _nullable(value: Any) -> Any:
    """pandas missing values (NaN/None) to SQL NULL."""
    if value is None:
        return None
    try:
        if pd.isna(value):
            return None
    except (TypeError, ValueError):
        pass
    return value


class ResultsStore:
    """
    Thread-safe SQLite store for evaluation results.
    """

    def __init__(self, db_path: str = "data/results.db"):
        """
        Open (and create if needed) the results database.

        Args:
            db_path: Path to SQLite database file.
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)

        self._lock = Lock()
        self._init_database()
        logger.info(f"Results store at: {self.db_path}")

    @contextmanager
    def _get_connection(self):
        conn = sqlite3.connect(str(self.db_path), check_same_thread=False)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
        finally:
            conn.close()

    def _init_database(self) -> None:
        with self._lock, self._get_connection() as conn:
            cursor = conn.cursor()

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS evaluations (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    timestamp REAL NOT NULL,
                    family TEXT NOT NULL,
                    q INTEGER NOT NULL,
                    length INTEGER NOT NULL,
                    k INTEGER NOT NULL,
                    method TEXT NOT NULL,
                    max_min TEXT NOT NULL,      -- num/den or inf
                    lambda_observed INTEGER NOT NULL,
                    optimum TEXT,
                    ratio TEXT,
                    document TEXT NOT NULL,     -- canonical JSON report
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS ratio_cells (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    timestamp REAL NOT NULL,
                    family TEXT NOT NULL,
                    q INTEGER NOT NULL,
                    length INTEGER NOT NULL,
                    k INTEGER NOT NULL,
                    method TEXT NOT NULL,
                    status TEXT NOT NULL,       -- ok or skipped
                    lambda_achieved INTEGER,
                    sampler_distance TEXT,
                    sampler_value REAL,
                    optimum TEXT,
                    optimum_value REAL,
                    ratio TEXT,
                    ratio_value REAL,
                    distance_bound REAL,
                    ratio_bound REAL,
                    bound_note TEXT,
                    note TEXT,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            cursor.execute("""
                CREATE INDEX IF NOT EXISTS idx_evaluations_language
                ON evaluations(family, q, length, k)
            """)
            cursor.execute("""
                CREATE INDEX IF NOT EXISTS idx_ratio_cells_language
                ON ratio_cells(family, q, length, k)
            """)

            conn.commit()

    def insert_evaluation(self, report: EvalReport, timestamp: Optional[float] = None) -> int:
        """
        Store one evaluation report.

        Returns:
            ID of the inserted row.
        """
        if timestamp is None:
            timestamp = datetime.now().timestamp()
        document = json.dumps(report.to_dict(), sort_keys=True)

        with self._lock, self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO evaluations (
                    timestamp, family, q, length, k, method,
                    max_min, lambda_observed, optimum, ratio, document
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                timestamp,
                report.language.family.value,
                report.language.q,
                report.language.length,
                report.k,
                report.method,
                str(report.max_min_distance),
                report.lambda_observed,
                str(report.optimum) if report.optimum is not None else None,
                str(report.ratio) if report.ratio is not None else None,
                document,
            ))
            conn.commit()
            return cursor.lastrowid

    def insert_ratio_cells(self, frame: pd.DataFrame, timestamp: Optional[float] = None) -> int:
        """
        Store every row of a ratio-study table.

        Returns:
            Number of rows inserted.
        """
        if timestamp is None:
            timestamp = datetime.now().timestamp()
        rows = [
            (timestamp, *(_nullable(record.get(name)) for name in RATIO_CELL_FIELDS))
            for record in frame.to_dict(orient="records")
        ]
        placeholders = ", ".join("?" * (len(RATIO_CELL_FIELDS) + 1))

        with self._lock, self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.executemany(
                f"INSERT INTO ratio_cells (timestamp, {', '.join(RATIO_CELL_FIELDS)}) VALUES ({placeholders})",
                rows,
            )
            conn.commit()
        logger.info(f"Stored {len(rows)} ratio-study cells")
        return len(rows)

    def get_evaluations(self, limit: int = 100) -> List[Dict[str, Any]]:
        """Most recent evaluations, newest first, with the JSON document decoded."""
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                SELECT * FROM evaluations
                ORDER BY timestamp DESC, id DESC
                LIMIT ?
            """, (limit,))
            rows = [dict(row) for row in cursor.fetchall()]
        for row in rows:
            row["document"] = json.loads(row["document"])
        return rows

    def get_ratio_cells(self, limit: int = 1000) -> pd.DataFrame:
        with self._get_connection() as conn:
            return pd.read_sql_query(
                "SELECT * FROM ratio_cells ORDER BY timestamp DESC, id DESC LIMIT ?",
                conn,
                params=(limit,),
            )

    def get_statistics(self) -> Dict[str, Any]:
        """Row counts and the worst recorded empirical ratio per method."""
        with self._get_connection() as conn:
            cursor = conn.cursor()

            cursor.execute("SELECT COUNT(*) FROM evaluations")
            total_evaluations = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM evaluations WHERE max_min = 'inf'")
            infeasible = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM ratio_cells")
            total_cells = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM ratio_cells WHERE status = 'skipped'")
            skipped = cursor.fetchone()[0]

            cursor.execute("""
                SELECT method, MAX(ratio_value)
                FROM ratio_cells
                WHERE status = 'ok'
                GROUP BY method
            """)
            worst_ratio = {row[0]: row[1] for row in cursor.fetchall()}

            return {
                "total_evaluations": total_evaluations,
                "infeasible_evaluations": infeasible,
                "total_ratio_cells": total_cells,
                "skipped_ratio_cells": skipped,
                "worst_ratio_by_method": worst_ratio,
            }


# Singleton instance
_store_instance: Optional[ResultsStore] = None
_store_lock = Lock()


def get_store(db_path: Optional[str] = None) -> ResultsStore:
    """
    Get or create the shared results store.

    An explicit path that differs from the open store replaces it.
    """
    global _store_instance

    if db_path is None:
        db_path = get_settings().results_db

    if _store_instance is None or _store_instance.db_path != Path(db_path):
        with _store_lock:
            if _store_instance is None or _store_instance.db_path != Path(db_path):
                _store_instance = ResultsStore(db_path)

    return _store_instance
