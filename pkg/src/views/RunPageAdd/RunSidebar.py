# 'src/views/RunPageAdd/RunSidebar.py'
"""Sidebar panel for the run page.
Shows the chosen data source, the last run status and a Back button.
"""

from PySide6 import QtWidgets

from src.views.RunPageAdd.logic.DataSource import DataSource


class RunSidebar(QtWidgets.QFrame):
    """Vertical panel docked on the left side of the run page."""

    def __init__(self, parent: QtWidgets.QWidget | None = None,
                 source: DataSource | None = None) -> None:
        super().__init__(parent)

        self.setFrameShape(QtWidgets.QFrame.StyledPanel)
        self.setFixedWidth(180)
        self._source = source
        self._init_ui()

    def _find_main_window(self):
        """Traverse up to find the MainWindow."""
        parent = self.parent()
        while parent is not None:
            if hasattr(parent, "goto_start"):
                return parent
            parent = parent.parent()
        return None

    def _init_ui(self) -> None:
        self.root = QtWidgets.QVBoxLayout(self)
        self.root.setContentsMargins(8, 8, 8, 8)
        self.root.setSpacing(10)

        self.back_btn = QtWidgets.QPushButton("← Back")
        self.back_btn.clicked.connect(self._on_back_clicked)
        self.root.addWidget(self.back_btn)

        self.source_label = QtWidgets.QLabel(
            f"Data: {self._source.describe()}" if self._source else "Data: none")
        self.source_label.setWordWrap(True)
        self.root.addWidget(self.source_label)

        self.status_label = QtWidgets.QLabel("Not run yet")
        self.status_label.setWordWrap(True)
        self.root.addWidget(self.status_label)

        self.root.addStretch(1)

    def _on_back_clicked(self) -> None:
        main = self._find_main_window()
        if main is not None:
            main.goto_start()

    def set_status(self, text: str) -> None:
        self.status_label.setText(text)
