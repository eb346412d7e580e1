import pytest

from catembed import companion


@pytest.fixture(scope="session")
def catalog():
    """All shipped catalog entries, fully re-verified at load."""
    return {e.entry_id: e for e in companion.catalog_all()}
