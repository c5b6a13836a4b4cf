"""JSON-lines memo cache for the expensive supremum table.

One record per line: {"set", "n", "q", "sup", "argmax_y", "attained",
"grid_cells_feasible", "tol"}.  Floats round-trip exactly through json's
repr-based serialization.  A record is reused only when its tolerance equals
the requested one, so cached and fresh runs produce identical bytes; looser
(stale) records are bypassed.  Corrupt lines are skipped with a warning.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from .domains import SupResult

log = logging.getLogger(__name__)

ENV_VAR = "PQL_CACHE"


def default_cache_path() -> str | None:
    return os.environ.get(ENV_VAR)


class SupCache:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._records: dict = {}
        if self.path.exists():
            self._load()

    def _load(self):
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = (rec["set"], int(rec["n"]), float(rec["q"]), float(rec["tol"]))
                    value = SupResult(
                        float(rec["sup"]),
                        None if rec["argmax_y"] is None else float(rec["argmax_y"]),
                        bool(rec["attained"]),
                        int(rec.get("grid_cells_feasible", 0)),
                    )
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    log.warning("skipping corrupt cache line %d in %s: %s", lineno, self.path, exc)
                    continue
                self._records[key] = value

    def __len__(self) -> int:
        return len(self._records)

    def lookup(self, set_name: str, n: int, q: float, tol: float) -> SupResult | None:
        return self._records.get((set_name, n, q, tol))

    def store(self, set_name: str, n: int, q: float, tol: float, result: SupResult):
        key = (set_name, n, q, tol)
        if key in self._records:
            return
        self._records[key] = result
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(
                json.dumps(
                    {
                        "set": set_name,
                        "n": n,
                        "q": q,
                        "sup": result.value,
                        "argmax_y": result.argmax_y,
                        "attained": result.attained,
                        "grid_cells_feasible": result.grid_cells_feasible,
                        "tol": tol,
                    }
                )
                + "\n"
            )

    def records(self) -> list:
        return [
            {
                "set": k[0],
                "n": k[1],
                "q": k[2],
                "sup": v.value,
                "argmax_y": v.argmax_y,
                "attained": v.attained,
                "grid_cells_feasible": v.grid_cells_feasible,
                "tol": k[3],
            }
            for k, v in self._records.items()
        ]


def cache_roundtrip(records: list, path: str | Path | None = None) -> list:
    """Store then reload a record list; the roundtrip is lossless."""
    import tempfile

    if path is None:
        with tempfile.TemporaryDirectory() as tmp:
            return cache_roundtrip(records, Path(tmp) / "memo.jsonl")
    cache = SupCache(path)
    for rec in records:
        cache.store(
            rec["set"],
            int(rec["n"]),
            float(rec["q"]),
            float(rec["tol"]),
            SupResult(
                float(rec["sup"]),
                None if rec["argmax_y"] is None else float(rec["argmax_y"]),
                bool(rec["attained"]),
                int(rec.get("grid_cells_feasible", 0)),
            ),
        )
    return SupCache(path).records()
