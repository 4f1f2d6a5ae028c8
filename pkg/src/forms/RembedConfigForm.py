# 'src/forms/RembedConfigForm.py'
"""PySide6 editor for RembedConfig – three tabs (Embedding | Solver | Evaluation).

Widget attribute names are what *FormProcessor* reads; keep them stable.
"""
from PySide6 import QtWidgets

from src.models.LabelEmbedding import DEFAULT_OVERSAMPLING, DEFAULT_POWER_ITERATIONS, RembedConfig
from src.models.SolverParams import DEFAULT_MAX_ITERATIONS, DEFAULT_REL_TOLERANCE


class RembedConfigForm(QtWidgets.QWidget):
    """Editor for the embedding, inner-solver and evaluation settings."""

    def __init__(self, parent=None, config: RembedConfig | None = None, t_values=(1, 3, 5)):
        super().__init__(parent)
        self._build_ui()
        self.t_values_input.setText(", ".join(str(t) for t in t_values))
        if config:
            self.load_from_config(config)

    # --------------------------- UI ---------------------------------- #
    def _build_ui(self):
        root = QtWidgets.QVBoxLayout(self)
        self.tabs = QtWidgets.QTabWidget()
        root.addWidget(self.tabs)

        # ------------- EMBEDDING ------------- #
        emb = QtWidgets.QWidget()
        e = QtWidgets.QFormLayout(emb)

        self.k_input = QtWidgets.QSpinBox()
        self.k_input.setRange(1, 100000)
        self.k_input.setValue(5)
        self.p_input = QtWidgets.QSpinBox()
        self.p_input.setRange(0, 100000)
        self.p_input.setValue(DEFAULT_OVERSAMPLING)
        self.q_input = QtWidgets.QSpinBox()
        self.q_input.setRange(1, 1000)
        self.q_input.setValue(DEFAULT_POWER_ITERATIONS)
        self.seed_input = QtWidgets.QLineEdit("0")
        self.normalize_checkbox = QtWidgets.QCheckBox("Unit-norm feature rows")
        self.label_pca_checkbox = QtWidgets.QCheckBox("Label PCA (ignore features)")

        e.addRow("Embedding dimension k:", self.k_input)
        e.addRow("Oversampling p:", self.p_input)
        e.addRow("Power iterations q:", self.q_input)
        e.addRow("Seed:", self.seed_input)
        e.addRow(self.normalize_checkbox)
        e.addRow(self.label_pca_checkbox)
        self.tabs.addTab(emb, "Embedding")

        # --------------- SOLVER -------------- #
        sol = QtWidgets.QWidget()
        s = QtWidgets.QFormLayout(sol)

        self.auto_ridge_checkbox = QtWidgets.QCheckBox("Derive ridge from data")
        self.auto_ridge_checkbox.setChecked(True)
        self.auto_ridge_checkbox.toggled.connect(self._toggle_ridge)
        self.ridge_input = QtWidgets.QLineEdit("0.001")
        self.ridge_input.setEnabled(False)
        self.tol_input = QtWidgets.QLineEdit(repr(DEFAULT_REL_TOLERANCE))
        self.max_iter_input = QtWidgets.QSpinBox()
        self.max_iter_input.setRange(1, 10 ** 7)
        self.max_iter_input.setValue(DEFAULT_MAX_ITERATIONS)

        s.addRow(self.auto_ridge_checkbox)
        s.addRow("Ridge λ:", self.ridge_input)
        s.addRow("Relative tolerance:", self.tol_input)
        s.addRow("Max iterations:", self.max_iter_input)
        self.tabs.addTab(sol, "Solver")

        # ------------- EVALUATION ------------ #
        ev = QtWidgets.QWidget()
        v = QtWidgets.QFormLayout(ev)
        self.t_values_input = QtWidgets.QLineEdit()
        v.addRow("precision@t for t (comma separated):", self.t_values_input)
        self.tabs.addTab(ev, "Evaluation")

    def _toggle_ridge(self, checked: bool) -> None:
        self.ridge_input.setEnabled(not checked)

    # ------------------------ instance → form ----------------------- #
    def load_from_config(self, config: RembedConfig) -> None:
        self.k_input.setValue(config.embedding_dim)
        self.p_input.setValue(config.oversampling)
        self.q_input.setValue(config.power_iterations)
        self.seed_input.setText(str(config.seed))
        self.normalize_checkbox.setChecked(config.normalize_features)
        self.label_pca_checkbox.setChecked(not config.projected)
        self.auto_ridge_checkbox.setChecked(config.solver.ridge is None)
        if config.solver.ridge is not None:
            self.ridge_input.setText(repr(config.solver.ridge))
        self.tol_input.setText(repr(config.solver.rel_tolerance))
        self.max_iter_input.setValue(config.solver.max_iterations)
