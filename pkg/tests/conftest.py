import json
from importlib import resources
from pathlib import Path

import pytest

from spwkit.register import load_bundled_register


def data_path(name: str) -> Path:
    return Path(str(resources.files("spwkit") / "data" / name))


@pytest.fixture(scope="session")
def register():
    return load_bundled_register()


@pytest.fixture(scope="session")
def register_path():
    return data_path("register_42.csv")


@pytest.fixture(scope="session")
def scenario_s1_path():
    return data_path("scenario_s1.json")


@pytest.fixture(scope="session")
def scenario_s2_path():
    return data_path("scenario_s2.json")


@pytest.fixture()
def tmp_scenario(tmp_path, register_path):
    """Write a scenario document next to a register copy; returns its path."""

    def _write(doc: dict, register_text: str | None = None) -> Path:
        if register_text is None:
            register_text = register_path.read_text(encoding="utf-8")
        (tmp_path / "register.csv").write_text(register_text, encoding="utf-8")
        doc = dict(doc)
        doc.setdefault("register", "register.csv")
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write
