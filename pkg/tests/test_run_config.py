from pathlib import Path

import pytest

from cli.run_config import RunConfig, RunConfigValidator
from convopoly.errors import InvalidArgumentError


@pytest.fixture
def validator():
    return RunConfigValidator()


def test_corners_needs_d(validator):
    ok, error = validator.validate(RunConfig("corners"))
    assert not ok
    assert "--d" in error


def test_reconstruct_needs_lambdas(validator):
    ok, error = validator.validate(RunConfig("reconstruct", d=2, n=100))
    assert not ok
    assert "--lambdas" in error


def test_verify_needs_n(validator):
    ok, error = validator.validate(RunConfig("verify", d=2))
    assert not ok
    assert "--n" in error


def test_valid_verify(validator):
    cfg = RunConfig("verify", d=2, n_range=(5, 8), points=(2, 4))
    assert validator.validate(cfg) == (True, "")
    assert cfg.n_values == [5, 6, 7, 8]


def test_points_must_increase(validator):
    ok, error = validator.validate(RunConfig("project", points=(3, 2)))
    assert not ok
    assert "strictly increasing" in error


def test_verify_points_match_d(validator):
    ok, _ = validator.validate(RunConfig("verify", d=3, n=5, points=(1, 2)))
    assert not ok


@pytest.mark.parametrize(
    "cfg",
    [
        RunConfig("corners", d=0),
        RunConfig("corners", d=2, kind="product"),
        RunConfig("corners", d=2, fmt="xml"),
        RunConfig("corners", d=2, workers=0),
        RunConfig("verify", d=2, n_range=(8, 5)),
        RunConfig("decompose", d=2, n=0, elements=(1,)),
        RunConfig("project", points=(0, 1)),
        RunConfig("publish"),
    ],
)
def test_invalid_configs(validator, cfg):
    ok, error = validator.validate(cfg)
    assert not ok
    assert error


def test_validate_and_raise(validator):
    with pytest.raises(InvalidArgumentError):
        validator.validate_and_raise(RunConfig("decompose", d=2, n=5))
    validator.validate_and_raise(
        RunConfig("reconstruct", d=2, n=5, lambdas_path=Path("weights.json"))
    )
