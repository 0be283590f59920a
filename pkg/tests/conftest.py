import pytest

from e7holo.build import build_workbench


@pytest.fixture(scope="session")
def wb():
    """The full E7 model, built once per test session."""
    return build_workbench("E7", mu_samples=20)


@pytest.fixture(scope="session")
def a1_wb():
    return build_workbench("A1", node=0, mu_samples=0)
