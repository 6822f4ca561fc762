import pytest

import src.utils as utils
from config import Settings
from src.main import main
from src.utils.errors import InvalidArgumentError
from src.utils.parallel import block_ranges, map_blocks, resolve_workers


class TestSettings:
    def test_shipped_config_is_valid(self, monkeypatch):
        monkeypatch.delenv("RESONANCE_LAB_THREADS", raising=False)
        settings = Settings()
        assert settings.validate() == []
        assert 0 < settings.eta < 0.5
        assert 0 < settings.delta < 0.01

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("RESONANCE_LAB_THREADS", "6")
        assert Settings().workers == 6

    @pytest.mark.parametrize("raw", ["abc", "2.5", "four"])
    def test_non_integer_threads_is_a_problem(self, monkeypatch, raw):
        monkeypatch.setenv("RESONANCE_LAB_THREADS", raw)
        settings = Settings()
        assert settings.workers is None
        problems = settings.validate()
        assert len(problems) == 1
        assert "must be an integer" in problems[0] and repr(raw) in problems[0]

    def test_zero_threads_is_a_problem(self, monkeypatch):
        monkeypatch.setenv("RESONANCE_LAB_THREADS", "0")
        assert any(">= 1" in p for p in Settings().validate())

    def test_bad_yaml_workers(self, tmp_path, monkeypatch):
        monkeypatch.delenv("RESONANCE_LAB_THREADS", raising=False)
        cfg = tmp_path / "config.yaml"
        cfg.write_text("parallel:\n  workers: many\n")
        assert Settings(cfg).workers is None

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            Settings(tmp_path / "absent.yaml")

    def test_cli_exits_3_on_bad_threads(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RESONANCE_LAB_THREADS", "abc")
        assert main(["predict12", "--T", "1e9", "--N", "1e4", "--output", str(tmp_path / "x.json")]) == 3


class TestParallel:
    def test_resolve_workers_prefers_argument(self, monkeypatch):
        monkeypatch.setenv("RESONANCE_LAB_THREADS", "8")
        assert resolve_workers(2) == 2
        assert resolve_workers(None) == 8

    def test_resolve_workers_default(self, monkeypatch):
        monkeypatch.delenv("RESONANCE_LAB_THREADS", raising=False)
        assert resolve_workers(None, default=3) == 3

    def test_resolve_workers_rejects_garbage(self, monkeypatch):
        monkeypatch.setenv("RESONANCE_LAB_THREADS", "abc")
        with pytest.raises(InvalidArgumentError):
            resolve_workers(None)
        with pytest.raises(InvalidArgumentError):
            resolve_workers(0)

    def test_block_ranges(self):
        assert block_ranges(10, 4) == [(0, 4), (4, 8), (8, 10)]
        assert block_ranges(0, 4) == []
        with pytest.raises(InvalidArgumentError):
            block_ranges(10, 0)

    @pytest.mark.parametrize("workers", [1, 3, 8])
    def test_map_blocks_keeps_block_order(self, workers):
        assert map_blocks(lambda lo, hi: list(range(lo, hi)), 10, workers, 3) == [
            [0, 1, 2],
            [3, 4, 5],
            [6, 7, 8],
            [9],
        ]

    def test_public_surface(self):
        assert {"block_ranges", "map_blocks", "resolve_workers"} <= set(utils.__all__)
        assert not any(name.endswith("fsum") for name in dir(utils.parallel))
