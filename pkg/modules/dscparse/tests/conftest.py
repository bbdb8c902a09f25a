from pathlib import Path

from pytest import fixture


@fixture(scope="session")
def corpus() -> Path:
    return Path(__file__).parent / "corpus"
