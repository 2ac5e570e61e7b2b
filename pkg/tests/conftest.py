import pytest
from importlib import resources


@pytest.fixture(scope="session")
def default_catalog_text() -> str:
    """The shipped catalog document, read directly from the package data."""
    return resources.files("esikit.data").joinpath("default_catalog.csv").read_text(
        encoding="utf-8"
    )
