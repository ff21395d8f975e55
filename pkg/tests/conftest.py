import sys

import pytest

from qhverma._kernel import backends

KERNELS = backends()


@pytest.fixture(params=sorted(KERNELS))
def kernel(request):
    """Each available link-search backend in turn."""
    return KERNELS[request.param]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = module.summary_lines() if module else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
