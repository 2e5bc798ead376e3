import pytest

from repknot.corpus import load_corpus
from repknot.diagram import parse
from repknot.presentation import wirtinger

CORPUS = dict(load_corpus()[0])

KNOTS = ["unknot", "3_1", "3_1_mirror", "4_1", "5_1", "5_2", "6_1", "7_4", "8_19"]
LINKS = ["hopf_positive", "hopf_negative", "whitehead", "L4a1"]

TREFOIL = "BR[2; 1,1,1]"
FIGURE_EIGHT = "BR[3; 1,-2,1,-2]"
T34 = "BR[3; 1,2,1,2,1,2,1,2]"
HOPF = "BR[2; 1,1]"


@pytest.fixture
def corpus():
    return CORPUS


def diagram_and_presentation(text):
    d = parse(text)
    return d, wirtinger(d)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
