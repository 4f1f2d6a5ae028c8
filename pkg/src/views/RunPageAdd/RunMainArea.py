# 'src/views/RunPageAdd/RunMainArea.py'
"""Main workspace on the run page: config form, Run / Export and the results panel.

Datasets are loaded once, on the first Run, and kept for later runs.
"""

from __future__ import annotations

import logging

from PySide6 import QtCore, QtWidgets
from PySide6.QtCore import Signal

from src.engine.pipeline import run_pipeline
from src.errors import RembedError
from src.forms.RembedConfigForm import RembedConfigForm
from src.models.RunReport import RunReport
from src.views.RunPageAdd.logic.DataSource import DataSource, initial_config, load_datasets
from src.views.RunPageAdd.logic.Exporter import export_run
from src.views.RunPageAdd.logic.FormProcessor import build_config, parse_t_values
from src.views.RunPageAdd.logic.Summary import summarize_report

logger = logging.getLogger(__name__)


class RunMainArea(QtWidgets.QWidget):
    """Central run workspace."""

    run_finished = Signal(str)  # short status line for the sidebar

    def __init__(self, parent: QtWidgets.QWidget | None, source: DataSource | None) -> None:
        super().__init__(parent)
        self._source = source
        self._datasets = None
        self.model = None
        self.report: RunReport | None = None
        self._init_ui()

    # --------------------------- UI INIT --------------------------- #
    def _init_ui(self) -> None:
        root = QtWidgets.QVBoxLayout(self)
        root.setContentsMargins(12, 12, 12, 12)

        config = None
        if self._source is not None:
            try:
                config = initial_config(self._source)
            except RembedError as exc:
                QtWidgets.QMessageBox.critical(self, "Error", str(exc))
        self.current_form = RembedConfigForm(self, config)
        root.addWidget(self.current_form)

        btn_box = QtWidgets.QHBoxLayout()
        self.run_btn = QtWidgets.QPushButton("Run")
        self.run_btn.clicked.connect(self._on_run_clicked)
        btn_box.addWidget(self.run_btn)

        self.export_btn = QtWidgets.QPushButton("Export…")
        self.export_btn.setEnabled(False)
        self.export_btn.clicked.connect(self._on_export_clicked)
        btn_box.addWidget(self.export_btn)
        root.addLayout(btn_box)

        self.results_view = QtWidgets.QPlainTextEdit()
        self.results_view.setReadOnly(True)
        root.addWidget(self.results_view, 1)

    # --------------------------- actions --------------------------- #
    def _on_run_clicked(self) -> None:
        if self._source is None:
            QtWidgets.QMessageBox.warning(self, "No data", "Go back and choose a data source first.")
            return
        QtWidgets.QApplication.setOverrideCursor(QtCore.Qt.WaitCursor)
        try:
            if self._datasets is None:
                self._datasets = load_datasets(self._source)
            train, test = self._datasets
            config = build_config(self.current_form, n_labels=train.n_labels)
            report = RunReport(command="gui")
            report.config["source"] = self._source.describe()
            self.model, _ = run_pipeline(train, test, config, parse_t_values(self.current_form), report)
            self.report = report
        except (RembedError, OSError) as exc:
            QtWidgets.QApplication.restoreOverrideCursor()
            QtWidgets.QMessageBox.critical(self, "Run failed", str(exc))
            self.run_finished.emit("Last run failed")
            return
        QtWidgets.QApplication.restoreOverrideCursor()

        self.results_view.setPlainText(summarize_report(self.report))
        self.export_btn.setEnabled(True)
        p1 = self.report.metrics["precision_at"].get("1") if self.report.metrics else None
        self.run_finished.emit(f"Last run: P@1 = {p1:.4f}" if p1 is not None else "Last run finished")

    def _on_export_clicked(self) -> None:
        if self.model is None or self.report is None:
            return
        directory = QtWidgets.QFileDialog.getExistingDirectory(self, "Export model and report")
        if not directory:
            return
        try:
            paths = export_run(self.model, self.report, directory)
        except (RembedError, OSError) as exc:
            QtWidgets.QMessageBox.critical(self, "Export failed", str(exc))
            return
        QtWidgets.QMessageBox.information(
            self, "Export", f"Model written to {paths['model']}\nReport written to {paths['report']}")
