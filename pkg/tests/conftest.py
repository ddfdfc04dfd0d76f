import pytest

from hermlab.numlin import ToleranceContext
from hermlab.zoo import zoo_entry


@pytest.fixture(scope='session')
def ctx():
    return ToleranceContext()


@pytest.fixture(scope='session')
def zoo():
    """Zoo entries built once per session, by name."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = zoo_entry(name)
        return cache[name]
    return get


@pytest.fixture
def results_folder(tmp_path):
    folder = tmp_path / 'results'
    folder.mkdir()
    return str(folder)
