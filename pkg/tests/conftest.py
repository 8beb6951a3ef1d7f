import pytest
from hypothesis import settings, strategies as st

from omega_frag.algebra import syntactic_quotient
from omega_frag.buchi import regex_language
from omega_frag.words import UPWord

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

EXAMPLE = "([ab]*aa[ab]*)^w"


def words(alphabet="ab", max_size=6):
    return st.text(alphabet=alphabet, max_size=max_size)


def lassos(alphabet="ab", max_prefix=5, max_loop=4):
    return st.builds(UPWord, words(alphabet, max_prefix), words(alphabet, max_loop))


@pytest.fixture(scope="session")
def example_lang():
    return regex_language(EXAMPLE)


@pytest.fixture(scope="session")
def example_synt(example_lang):
    return syntactic_quotient(example_lang).language


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
