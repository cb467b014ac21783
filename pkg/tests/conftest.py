import sys
from pathlib import Path

import pytest

import meaningbound as mb
from meaningbound import _kernels

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=_kernels.available())
def kernel_backend(request):
    """Run the decorated test once per built kernel backend."""
    previous = _kernels.backend()
    _kernels.use(request.param)
    yield request.param
    _kernels.use(previous)


@pytest.fixture(scope="session")
def table_fixture_path() -> Path:
    return Path(str(mb.bundled_petfish_fixture()))


@pytest.fixture(scope="session")
def table_provider(table_fixture_path):
    return mb.FixtureProvider.from_path(table_fixture_path)


@pytest.fixture(scope="session")
def petfish_triple():
    return mb.ConceptTriple.from_texts("pet", "fish")


@pytest.fixture(scope="session")
def table_exemplars():
    words = ["guppy", "world", "spelling", "house", "goldfish", "hierarchy"]
    return [mb.TermPattern.parse(word) for word in words]


@pytest.fixture(scope="session")
def table_report(petfish_triple, table_exemplars, table_provider):
    config = mb.StudyConfig(n_www=table_provider.total_pages)
    return mb.run_study(petfish_triple, table_exemplars, table_provider, config)
