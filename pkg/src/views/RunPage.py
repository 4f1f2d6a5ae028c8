"""Composite run page (RunSidebar + RunMainArea).
Acts as the second screen in the application flow.
"""

from PySide6 import QtWidgets

from src.views.RunPageAdd.RunSidebar import RunSidebar
from src.views.RunPageAdd.RunMainArea import RunMainArea


class RunPage(QtWidgets.QWidget):
    """High-level container that combines sidebar and main area."""

    def __init__(self, parent: QtWidgets.QWidget | None = None) -> None:
        super().__init__(parent)
        self._parent_main = parent
        self._init_ui()

    def _init_ui(self) -> None:
        root = QtWidgets.QHBoxLayout(self)
        root.setContentsMargins(0, 0, 0, 0)
        root.setSpacing(0)

        source = getattr(self._parent_main, "selected_source", None)
        self.sidebar = RunSidebar(self, source)
        root.addWidget(self.sidebar)

        self.main_area = RunMainArea(self, source)
        root.addWidget(self.main_area, 1)

        self.main_area.run_finished.connect(self.sidebar.set_status)
