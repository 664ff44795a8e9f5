import pytest
from hypothesis import settings

from linkhom.arith import T
from linkhom.chain import counterexample_chain

settings.register_profile("linkhom", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("linkhom")


@pytest.fixture
def t():
    return T


@pytest.fixture
def counterexample():
    return counterexample_chain()
