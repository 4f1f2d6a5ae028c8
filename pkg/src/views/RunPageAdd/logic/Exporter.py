#src/views/RunPageAdd/logic/Exporter.py
"""Writes the trained model and its run report into one folder."""
from pathlib import Path
from typing import Dict

from src.formats.model_file import save_model
from src.models.LinearPredictor import LinearPredictor
from src.models.RunReport import RunReport

MODEL_FILE = "model.rmbd"
REPORT_FILE = "report.json"


def export_run(model: LinearPredictor, report: RunReport, directory: str | Path) -> Dict[str, Path]:
    """Return the written paths keyed by ``model`` and ``report``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {"model": directory / MODEL_FILE, "report": directory / REPORT_FILE}
    save_model(model, paths["model"])
    report.write(paths["report"])
    return paths
