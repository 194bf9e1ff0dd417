import pytest

from ewens_charpoly.weights import ThetaSequence

FAMILIES = {
    "ewens1": ThetaSequence.ewens(1.0),
    "ewens2": ThetaSequence.ewens(2.0),
    "ewens05": ThetaSequence.ewens(0.5),
    "scaled22": ThetaSequence.scaled(2.0, 2.0),
    "custom": ThetaSequence.custom([3.0, 0.5, 2.0], 1.5, 1.25),
}


@pytest.fixture(params=list(FAMILIES), ids=list(FAMILIES))
def family(request):
    return FAMILIES[request.param]


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line[1])
