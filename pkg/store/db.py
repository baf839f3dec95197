import sqlite3
import json
import logging
from datetime import datetime
from typing import List, Dict, Optional

logger = logging.getLogger(__name__)


class Database:
    """SQLite ledger of experiment runs and their metrics."""

    def __init__(self, db_path: str = "./gowers_lab.db"):
        self.db_path = db_path
        self._init_db()

    def _init_db(self):
        """Initialize database tables."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    experiment TEXT,
                    params TEXT,
                    seed INTEGER,
                    started_at TIMESTAMP,
                    wall_clock REAL,
                    rows INTEGER,
                    failures INTEGER,
                    error TEXT
                )
            """)

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS metrics (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id INTEGER REFERENCES runs(id),
                    timestamp TIMESTAMP,
                    metric_name TEXT,
                    metric_value REAL,
                    metadata TEXT
                )
            """)

            conn.commit()

    def log_run(self,
                experiment: str,
                params: Dict,
                seed: int,
                wall_clock: float,
                rows: int,
                failures: int,
                error: Optional[str] = None) -> int:
        """Record one experiment run; returns its id."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute("""
                INSERT INTO runs
                (experiment, params, seed, started_at, wall_clock, rows, failures, error)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                experiment,
                json.dumps(params, sort_keys=True, default=str),
                seed,
                datetime.now(),
                wall_clock,
                rows,
                failures,
                error
            ))

            conn.commit()
            logger.debug(f"Logged run {cursor.lastrowid} of {experiment}")
            return cursor.lastrowid

    def log_metric(self, name: str, value: float, run_id: Optional[int] = None, metadata: Dict = None):
        """Log a metric."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute("""
                INSERT INTO metrics (run_id, timestamp, metric_name, metric_value, metadata)
                VALUES (?, ?, ?, ?, ?)
            """, (
                run_id,
                datetime.now(),
                name,
                value,
                json.dumps(metadata, default=str) if metadata else None
            ))

            conn.commit()

    def recent_runs(self, days: int = 7) -> List[Dict]:
        """Get recently recorded runs, newest first."""
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            cursor = conn.cursor()

            cursor.execute("""
                SELECT * FROM runs
                WHERE started_at > datetime('now', '-' || ? || ' days')
                ORDER BY id DESC
            """, (days,))

            return [dict(row) for row in cursor.fetchall()]

    def metrics_for(self, run_id: int) -> List[Dict]:
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            cursor = conn.cursor()
            cursor.execute(
                "SELECT metric_name, metric_value, metadata FROM metrics WHERE run_id = ? ORDER BY id",
                (run_id,)
            )
            return [dict(row) for row in cursor.fetchall()]
