import pytest

from variadic import kernel
from variadic.language import std_signature
from variadic.semantics import standard_model


@pytest.fixture(params=kernel.AVAILABLE)
def backend(request):
    """Run the test once per compiled-kernel backend."""
    before = kernel.backend()
    kernel.set_backend(request.param)
    yield request.param
    kernel.set_backend(before)


@pytest.fixture
def sig():
    return std_signature()


@pytest.fixture
def std():
    return standard_model()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)
