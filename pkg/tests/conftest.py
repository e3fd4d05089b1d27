import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ema.corpus import grammar_corpus, tm_corpus, tram_corpus


@pytest.fixture(scope="session")
def tms():
    return tm_corpus()


@pytest.fixture(scope="session")
def trams():
    return tram_corpus()


@pytest.fixture(scope="session")
def grammars():
    return grammar_corpus()
