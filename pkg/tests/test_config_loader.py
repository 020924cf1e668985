import pytest

from qgauss.bounds import BudgetGuard, NormCertifier
from qgauss.config import Config, load_layered_config, load_package_config
from qgauss.spectra import SweepOptions


def test_package_defaults_only():
    data, sources = load_layered_config()

    assert sources == ["package:defaults/config.yaml"]
    assert data["bounds"]["n_max"] == 64
    assert data["budget"]["max_level"] == 256
    assert data["spectra"]["level"] == 8


def test_overlay_is_deep_merged(tmp_path):
    overlay = tmp_path / "run.yaml"
    overlay.write_text("bounds:\n  n_max: 8\nbudget:\n  max_level: 32\n", encoding="utf-8")

    data, sources = load_layered_config(overlay)

    assert data["bounds"]["n_max"] == 8
    assert data["bounds"]["variant"] == "per_level"
    assert data["budget"]["max_level"] == 32
    assert data["budget"]["max_block_dim"] == 4096
    assert sources[-1] == str(overlay)

    config = Config.load(overlay)
    assert config.section("bounds")["n_max"] == 8
    assert config.sources == tuple(sources)


def test_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("QGAUSS_N_MAX", "2")

    config = load_package_config()

    assert config.section("bounds")["n_max"] == 64


def test_missing_overlay_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_layered_config(tmp_path / "absent.yaml")


def test_services_read_their_sections(tmp_path):
    overlay = tmp_path / "run.yaml"
    overlay.write_text(
        "bounds:\n  variant: aggregated\n  n_max: 4\nbudget:\n  max_block_dim: 10\n"
        "spectra:\n  level: 5\nruntime:\n  threads: 2\n",
        encoding="utf-8",
    )
    config = Config.load(overlay)

    certifier = NormCertifier.from_config(config.section("bounds"), config.section("budget"))
    options = SweepOptions.from_config(config.section("spectra"), config.section("runtime"))

    assert certifier.config.variant == "aggregated"
    assert certifier.config.n_max == 4
    assert certifier.guard.config.max_block_dim == 10
    assert certifier.guard.config.max_level == 256
    assert options.level == 5
    assert options.workers == 2
    assert BudgetGuard.from_config(None).config.max_level == 256
