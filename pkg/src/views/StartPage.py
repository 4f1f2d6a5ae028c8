# 'src/views/StartPage.py'
"""Landing page – choose a synthetic preset or a pair of dataset files, then go next."""

from typing import Any, Dict

from PySide6 import QtWidgets

from src.errors import ConfigError
from src.utils import ResourceManager
from src.views.RunPageAdd.logic.DataSource import DataSource


class StartPage(QtWidgets.QWidget):
    """First page of the app – pick the data, then go to the run page."""

    # ------------------------------------------------------------------ #

    def __init__(self, parent: QtWidgets.QWidget | None = None) -> None:  # noqa: D401
        super().__init__(parent)

        self._presets = self._load_presets()
        self.source_type: str = "preset"
        self.selected_preset: str | None = None

        self._init_ui()

    # ------------------------------ helpers --------------------------- #

    def _init_ui(self) -> None:
        """Create all widgets for the start page."""
        root = QtWidgets.QVBoxLayout(self)

        type_box = QtWidgets.QHBoxLayout()
        self.radio_preset = QtWidgets.QRadioButton("Synthetic preset")
        self.radio_files = QtWidgets.QRadioButton("Dataset files")
        self.radio_preset.setChecked(True)
        type_box.addWidget(self.radio_preset)
        type_box.addWidget(self.radio_files)
        root.addLayout(type_box)

        self.radio_preset.toggled.connect(lambda c: self._on_type_changed("preset") if c else None)
        self.radio_files.toggled.connect(lambda c: self._on_type_changed("files") if c else None)

        # preset list
        list_container = QtWidgets.QWidget()
        self._list_layout = QtWidgets.QVBoxLayout(list_container)
        self.preset_scroll = QtWidgets.QScrollArea()
        self.preset_scroll.setWidgetResizable(True)
        self.preset_scroll.setWidget(list_container)
        root.addWidget(self.preset_scroll, 1)

        # file pickers
        self.files_box = QtWidgets.QWidget()
        f = QtWidgets.QFormLayout(self.files_box)
        self.train_path_input = QtWidgets.QLineEdit()
        self.test_path_input = QtWidgets.QLineEdit()
        f.addRow("Training file:", self._with_browse(self.train_path_input))
        f.addRow("Test file:", self._with_browse(self.test_path_input))
        self.train_path_input.textChanged.connect(self._update_next_enabled)
        self.test_path_input.textChanged.connect(self._update_next_enabled)
        self.files_box.setVisible(False)
        root.addWidget(self.files_box)

        self.next_btn = QtWidgets.QPushButton("Next →")
        self.next_btn.setEnabled(False)
        self.next_btn.clicked.connect(self._on_next_clicked)
        root.addWidget(self.next_btn)

        # MUST be AFTER creating next_btn
        self._populate_preset_buttons()

    def _with_browse(self, line_edit: QtWidgets.QLineEdit) -> QtWidgets.QWidget:
        box = QtWidgets.QWidget()
        row = QtWidgets.QHBoxLayout(box)
        row.setContentsMargins(0, 0, 0, 0)
        row.addWidget(line_edit, 1)
        btn = QtWidgets.QPushButton("Browse…")
        btn.clicked.connect(lambda: self._browse_into(line_edit))
        row.addWidget(btn)
        return box

    # -------------------------- data loading -------------------------- #

    def _load_presets(self) -> Dict[str, Dict[str, Any]]:
        """Synthetic presets from *synthetic_presets.json*."""
        try:
            return ResourceManager.load_presets().get("synthetic", {})
        except ConfigError as exc:
            QtWidgets.QMessageBox.critical(self, "Error", str(exc))
            return {}

    # ---------------------- dynamic UI manipulation ------------------ #

    def _populate_preset_buttons(self) -> None:
        while (item := self._list_layout.takeAt(0)) and item.widget():
            item.widget().setParent(None)

        self._preset_button_group = QtWidgets.QButtonGroup(self)
        self._preset_button_group.setExclusive(True)
        self._preset_button_group.buttonClicked.connect(self._on_preset_selected)

        for name, preset in sorted(self._presets.items()):
            spec = preset.get("spec", {})
            btn = QtWidgets.QRadioButton(name)
            btn.setToolTip(f'{preset.get("description", "")}\n'
                           f'n={spec.get("n")} d={spec.get("d")} c={spec.get("c")} '
                           f'k_true={spec.get("k_true")} noise={spec.get("noise", 0.0)}')
            self._preset_button_group.addButton(btn)
            self._list_layout.addWidget(btn)
        self._list_layout.addStretch(1)

        self.next_btn.setEnabled(False)

    # ---------------------------- handlers --------------------------- #

    def _browse_into(self, line_edit: QtWidgets.QLineEdit) -> None:
        path, _ = QtWidgets.QFileDialog.getOpenFileName(
            self, "Choose dataset", "", "Text datasets (*.txt *.svm);;All files (*)")
        if path:
            line_edit.setText(path)

    def _on_type_changed(self, new_type: str) -> None:
        if new_type != self.source_type:
            self.source_type = new_type
            self.preset_scroll.setVisible(new_type == "preset")
            self.files_box.setVisible(new_type == "files")
            self._update_next_enabled()

    def _on_preset_selected(self, btn: QtWidgets.QAbstractButton) -> None:  # noqa: D401
        self.selected_preset = btn.text() if btn.text() in self._presets else None
        self._update_next_enabled()

    def _update_next_enabled(self) -> None:
        if self.source_type == "preset":
            self.next_btn.setEnabled(self.selected_preset is not None)
        else:
            self.next_btn.setEnabled(bool(self.train_path_input.text().strip()
                                          and self.test_path_input.text().strip()))

    def current_source(self) -> DataSource | None:
        if self.source_type == "preset":
            return DataSource(preset=self.selected_preset) if self.selected_preset else None
        train = self.train_path_input.text().strip()
        test = self.test_path_input.text().strip()
        return DataSource(train_path=train, test_path=test) if train and test else None

    def _on_next_clicked(self) -> None:
        """Store the selection on MainWindow and go to the run page."""
        source = self.current_source()
        if source is None:
            QtWidgets.QMessageBox.warning(self, "Nothing selected", "Choose a preset or both dataset files first!")
            return

        main = self.window()
        setattr(main, "selected_source", source)
        if hasattr(main, "goto_run"):
            main.goto_run()
