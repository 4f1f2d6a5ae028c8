"""Desktop-app logic, driven through stand-ins for the Qt widgets."""
import json
from types import SimpleNamespace

import numpy as np
import pytest

from src.errors import ConfigError
from src.formats.model_file import load_model
from src.models.LabelEmbedding import LabelEmbedding, RembedConfig
from src.models.LinearPredictor import LinearPredictor
from src.models.RunReport import RunReport
from src.views.RunPageAdd.logic.DataSource import DataSource, initial_config, load_datasets
from src.views.RunPageAdd.logic.Exporter import export_run
from src.views.RunPageAdd.logic.FormProcessor import build_config, parse_t_values
from src.views.RunPageAdd.logic.Summary import summarize_report


class SpinBox:
    def __init__(self, value):
        self._value = value

    def value(self):
        return self._value


class LineEdit:
    def __init__(self, text):
        self._text = text

    def text(self):
        return self._text


class CheckBox:
    def __init__(self, checked):
        self._checked = checked

    def isChecked(self):
        return self._checked


def make_form(**overrides):
    fields = dict(
        k_input=SpinBox(3), p_input=SpinBox(4), q_input=SpinBox(2),
        seed_input=LineEdit("11"), normalize_checkbox=CheckBox(False),
        label_pca_checkbox=CheckBox(False), auto_ridge_checkbox=CheckBox(True),
        ridge_input=LineEdit("0.5"), tol_input=LineEdit("1e-8"),
        max_iter_input=SpinBox(50), t_values_input=LineEdit("3, 1,3"),
    )
    fields.update(overrides)
    return SimpleNamespace(**fields)


def test_build_config_reads_every_widget():
    config = build_config(make_form(), n_labels=12)
    assert config == RembedConfig(embedding_dim=3, oversampling=4, power_iterations=2, seed=11,
                                  solver=config.solver)
    assert config.solver.ridge is None
    assert config.solver.rel_tolerance == 1e-8
    assert config.solver.max_iterations == 50


def test_manual_ridge_and_flags():
    form = make_form(auto_ridge_checkbox=CheckBox(False), label_pca_checkbox=CheckBox(True),
                     normalize_checkbox=CheckBox(True))
    config = build_config(form)
    assert config.solver.ridge == 0.5
    assert not config.projected
    assert config.normalize_features


@pytest.mark.parametrize("overrides", [
    dict(seed_input=LineEdit("abc")),
    dict(tol_input=LineEdit("2")),
    dict(auto_ridge_checkbox=CheckBox(False), ridge_input=LineEdit("-1")),
    dict(k_input=SpinBox(10)),
])
def test_bad_fields_raise_config_error(overrides):
    with pytest.raises(ConfigError):
        build_config(make_form(**overrides), n_labels=12)


def test_no_form():
    with pytest.raises(ConfigError):
        build_config(None)


def test_parse_t_values():
    assert parse_t_values(make_form()) == [1, 3]
    with pytest.raises(ConfigError):
        parse_t_values(make_form(t_values_input=LineEdit(" , ")))
    with pytest.raises(ConfigError):
        parse_t_values(make_form(t_values_input=LineEdit("0, 2")))


def test_preset_source():
    source = DataSource(preset="tiny")
    assert source.describe() == "preset 'tiny'"
    assert source.key == "tiny"
    config = initial_config(source)
    assert config.embedding_dim == 3 and config.oversampling == 4
    train, test = load_datasets(source)
    assert train.n_examples == 80 and test.n_examples == 20


def test_file_source_needs_both_files(tmp_path):
    source = DataSource(train_path=str(tmp_path / "a.txt"))
    assert initial_config(source) is None
    with pytest.raises(ConfigError):
        load_datasets(source)


def test_summary_and_export(tmp_path, rng):
    V, _ = np.linalg.qr(rng.standard_normal((5, 2)))
    embedding = LabelEmbedding(V=V, spectrum=np.array([3.0, 1.0]),
                               config=RembedConfig(embedding_dim=2, oversampling=1))
    model = LinearPredictor(W_e=rng.standard_normal((4, 2)), embedding=embedding, ridge_used=0.1)
    report = RunReport(command="gui", include_timings=False)
    report.spectrum = [3.0, 1.0]
    report.metrics = {"precision_at": {"1": 0.75}, "n_evaluated": 4, "n_skipped_empty": 1}

    text = summarize_report(report)
    assert "precision@1: 0.7500" in text
    assert "1 test rows without labels skipped" in text

    paths = export_run(model, report, tmp_path / "out")
    assert np.array_equal(load_model(paths["model"]).W_e, model.W_e)
    assert json.loads(paths["report"].read_text())["command"] == "gui"
