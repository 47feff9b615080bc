import pytest

from divfield import config
from divfield.elliptic import CurveQ


@pytest.fixture
def x0_11() -> CurveQ:
    return CurveQ.from_text("X0(11)")


@pytest.fixture
def x0p_37() -> CurveQ:
    return CurveQ.from_text("X0+(37)")


@pytest.fixture
def db_url(tmp_path) -> str:
    return f"sqlite:///{tmp_path / 'divfield.db'}"


@pytest.fixture(autouse=True)
def fixed_seed(monkeypatch):
    monkeypatch.setattr(config, "SEED", 11)
