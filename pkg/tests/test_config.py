import pathlib

import pydantic
import pytest

from holoknot.config import EngineConfig, get_env, load_config
from holoknot.errors import InputError
from holoknot.testutils import modify_environ, write_text_file

# Clears HOLOKNOT_* variables set by whoever runs the tests.
CLEAN_ENVIRON: dict[str, None | str] = {
    "HOLOKNOT_" + name.upper(): None for name in EngineConfig.model_fields
}


def test_get_env() -> None:
    with modify_environ(HOLOKNOT_TEST_VALUE="abc", HOLOKNOT_MISSING=None):
        assert get_env("HOLOKNOT_TEST_VALUE") == "abc"
        assert get_env("HOLOKNOT_TEST_VALUE", "default") == "abc"
        assert get_env("HOLOKNOT_MISSING", "default") == "default"
        with pytest.raises(ValueError):
            get_env("HOLOKNOT_MISSING")
        with pytest.raises(ValueError):
            get_env("HOLOKNOT_MISSING", 3)  # type: ignore[arg-type]


def test_engine_config() -> None:
    config = EngineConfig()
    assert config.grid_size == 4096
    assert config.root_tolerance == 1e-10
    assert config.match_tolerance == 1e-8
    assert config.tangency_tolerance == 1e-9
    assert config.strand_cap == 6
    assert config.log_level == "INFO"
    assert EngineConfig(log_level="debug").log_level == "DEBUG"

    for bad_values in (
        dict(grid_size=32),
        dict(root_tolerance=0),
        dict(newton_max_iterations=0),
        dict(log_level="LOUD"),
        dict(no_such_field=1),
    ):
        with pytest.raises(pydantic.ValidationError):
            EngineConfig(**bad_values)
    with pytest.raises(pydantic.ValidationError):
        config.grid_size = 128  # type: ignore[misc]


def test_load_config_defaults() -> None:
    with modify_environ(**CLEAN_ENVIRON):
        assert load_config() == EngineConfig()


def test_load_config_precedence(tmp_path: pathlib.Path) -> None:
    environ = dict(
        CLEAN_ENVIRON,
        HOLOKNOT_GRID_SIZE="1024",
        HOLOKNOT_STRAND_CAP="4",
        HOLOKNOT_LOG_LEVEL="warning",
    )
    path = write_text_file(
        tmp_path,
        "config.json",
        '{"grid_size": 2048, "match_tolerance": 1e-7}',
    )
    with modify_environ(**environ):
        config = load_config()
        assert config.grid_size == 1024
        assert config.strand_cap == 4
        assert config.log_level == "WARNING"

        config = load_config(path)
        assert config.grid_size == 2048
        assert config.strand_cap == 4
        assert config.match_tolerance == 1e-7

        config = load_config(path, grid_size=512, strand_cap=None)
        assert config.grid_size == 512
        assert config.strand_cap == 4


def test_load_config_errors(tmp_path: pathlib.Path) -> None:
    with modify_environ(**dict(CLEAN_ENVIRON, HOLOKNOT_GRID_SIZE="many")):
        with pytest.raises(InputError):
            load_config()
    with modify_environ(**CLEAN_ENVIRON):
        with pytest.raises(InputError):
            load_config(grid_size=10)
        with pytest.raises(InputError):
            load_config(tmp_path / "missing.json")
        for name, text in (
            ("broken.json", '{"grid_size": '),
            ("list.json", "[1, 2]"),
            ("extra.json", '{"colour": "blue"}'),
        ):
            with pytest.raises(InputError):
                load_config(write_text_file(tmp_path, name, text))
