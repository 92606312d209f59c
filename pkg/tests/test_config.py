import json

import pytest

from spectral_extremal.config import ENV_VAR, Bands, Config, load_config
from spectral_extremal.errors import InputError


def test_defaults():
    cfg = Config()
    assert cfg.oracle_cap(3) == 10 and cfg.oracle_cap(4) == 8 and cfg.oracle_cap(7) == 8
    assert cfg.bands.limit == 0.05


def test_file_and_env(tmp_path, monkeypatch):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"tol": 1e-11, "oracle_caps": {"3": 11}, "bands": {"limit": 0.1}}))
    cfg = load_config(p)
    assert cfg.tol == 1e-11 and cfg.oracle_cap(3) == 11 and cfg.oracle_cap(4) == 8
    assert cfg.bands.limit == 0.1 and cfg.bands.limsup == 0.05
    monkeypatch.setenv(ENV_VAR, str(p))
    assert load_config() == cfg
    monkeypatch.delenv(ENV_VAR)
    assert load_config() == Config()


def test_overrides():
    cfg = Config().with_overrides(tol=1e-10, max_iters=None)
    assert cfg.tol == 1e-10 and cfg.max_iters == Config().max_iters


@pytest.mark.parametrize(
    "data",
    [{"tol": 0}, {"tie_tol": -1}, {"oracle_caps": {"4": 3}}, {"bands": {"limit": 0}}, {"nope": 1}, {"bands": {"x": 1}}],
)
def test_invalid(data, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(InputError):
        load_config(p)


def test_unreadable(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(InputError):
        load_config(p)
    with pytest.raises(InputError):
        load_config(tmp_path / "missing.json")
    with pytest.raises(InputError):
        Config(bands=Bands(limit=-1))
