import json

import numpy as np
import pytest

from matsusy.core.errors import ConfigError
from matsusy.io.config_loader import ConfigLoader
from matsusy.io.exporter import CSVExporter, JSONExporter, TableExporter, get_exporter
from matsusy.utils.json_utils import JSONUtils
from matsusy.utils.logger import configure_logging, get_logger
from matsusy.utils.timer import Timer


class TestJSONUtils:

    def test_sanitize(self):
        data = {
            "a": np.float64(1.5),
            "b": np.arange(3),
            "c": 1 + 2j,
            "d": complex(3, 0),
            "e": float("inf"),
            "f": np.bool_(True),
            1: (np.int64(4),),
        }
        out = JSONUtils.sanitize(data)
        assert out == {"a": 1.5, "b": [0, 1, 2], "c": {"re": 1.0, "im": 2.0}, "d": 3.0, "e": "inf", "f": True, "1": [4]}

    def test_dumps_is_deterministic(self):
        data = {"z": 0.1, "a": [1e-12, 2.0]}
        assert JSONUtils.dumps(data) == JSONUtils.dumps(dict(data))
        assert json.loads(JSONUtils.dumps(data)) == data
        assert list(json.loads(JSONUtils.dumps(data))) == ["z", "a"]

    def test_format_float_round_trips(self):
        for x in (0.1, 1 / 3, 2.5e-17, 123456789.125):
            assert float(JSONUtils.format_float(x)) == x


class TestExporters:

    def test_csv(self):
        text = CSVExporter().render({"header": ["level", "value", "note"], "rows": [[0, 0.1, None], [1, 2.0, "x"]]})
        assert text == "level,value,note\n0,0.1,\n1,2.0,x\n"

    def test_csv_complex_cell(self):
        text = CSVExporter().render({"header": ["z"], "rows": [[np.complex128(2.5)]]})
        assert text.splitlines()[1] == "2.5"

    def test_table(self):
        text = TableExporter().render({"title": "t", "header": ["a", "bb"], "rows": [[1, "long cell"]]})
        lines = text.splitlines()
        assert lines[0] == "t"
        assert lines[1].startswith("a  bb")
        assert lines[3] == "1  long cell"

    def test_json_export(self, tmp_path):
        path = tmp_path / "out" / "report.json"
        assert JSONExporter().export({"x": np.float32(0.5)}, str(path))
        assert json.loads(path.read_text()) == {"x": 0.5}

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            get_exporter("xml")
        assert isinstance(get_exporter("structured-text"), JSONExporter)


class TestConfigLoader:

    def test_parse(self):
        text = "# comment\n\nfamily = W17\nomega=2.0\nmemory-limit-mb = 64\n"
        assert ConfigLoader.parse(text) == {"family": "W17", "omega": "2.0", "memory_limit_mb": "64"}

    def test_unknown_key_lists_accepted(self):
        with pytest.raises(ConfigError, match="accepted keys: family, omega"):
            ConfigLoader.parse("zeta = 1\n", allowed=["family", "omega"])

    def test_malformed_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            ConfigLoader.parse("family = W1\nomega\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            ConfigLoader.load(str(tmp_path / "nope.cfg"))

    def test_load(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("model = scarf\nkappa = -3\n", encoding="utf-8")
        assert ConfigLoader.load(str(path), ["model", "kappa"]) == {"model": "scarf", "kappa": "-3"}


class TestLoggingAndTimer:

    def test_log_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        configure_logging("DEBUG", str(log_file))
        try:
            get_logger("matsusy.core.spectral").debug("assembled 3 blocks")
            for handler in get_logger("matsusy").handlers:
                handler.flush()
            assert "assembled 3 blocks" in log_file.read_text(encoding="utf-8")
        finally:
            configure_logging("INFO", None)

    def test_foreign_name_is_nested(self):
        assert get_logger("tests.helper").name == "matsusy.tests.helper"

    def test_timer_laps_accumulate(self):
        timer = Timer("spectrum")
        with timer.lap("solve"):
            pass
        with timer.lap("solve"):
            pass
        with timer.lap("export"):
            pass
        out = timer.to_dict()
        assert list(out) == ["solve", "export", "total"]
        assert out["total"] >= out["solve"] >= 0.0
