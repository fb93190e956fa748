import pytest

from divsel.data import generate_synthesized
from divsel.info import InfoCache


@pytest.fixture(scope="session")
def synth():
    return generate_synthesized(0)


@pytest.fixture(scope="session")
def synth_cache(synth):
    return InfoCache(synth)
