import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "src" / "mofn" / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def ie_srl_text() -> str:
    return (FIXTURES / "ie_srl.rules").read_text()


@pytest.fixture(scope="session")
def ie_ar_text() -> str:
    return (FIXTURES / "ie_ar.rules").read_text()


@pytest.fixture(scope="session")
def postop_text() -> str:
    return (FIXTURES / "postop.rules").read_text()
