# src/models/RunReport.py
"""Machine-readable record of one command run (JSON document)."""
from __future__ import annotations

import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

logger = logging.getLogger(__name__)

REPORT_SCHEMA = "rembed-run-report/1"


@dataclass
class RunReport:
    """Config echo, stage timings, solver summaries, spectrum and metrics."""
    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    convergence: Dict[str, Any] = field(default_factory=dict)
    spectrum: Optional[List[float]] = None
    metrics: Optional[Dict[str, Any]] = None
    extra: Dict[str, Any] = field(default_factory=dict)
    include_timings: bool = True

    # ------------------------------------------------------------------ #
    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time a pipeline stage and log its start and end."""
        logger.info("%s: %s started", self.command, name)
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.timings[name] = elapsed
            logger.info("%s: %s finished in %.3fs", self.command, name, elapsed)

    # ------------------------------------------------------------------ #
    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {"schema": REPORT_SCHEMA, "command": self.command,
                               "config": self.config}
        if self.include_timings:
            doc["timings"] = dict(self.timings)
        if self.convergence:
            doc["convergence"] = self.convergence
        if self.spectrum is not None:
            doc["spectrum"] = list(self.spectrum)
        if self.metrics is not None:
            doc["metrics"] = self.metrics
        if self.extra:
            doc.update(self.extra)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")
        logger.info("run report written to %s", path)
