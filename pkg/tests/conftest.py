import numpy as np
import pytest

from fusionframes import derive_stream, sym_eigen


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # load the compiled kernels once so per-test timing measures the
    # algorithms, not the JIT cache
    stream = derive_stream(0, 0)
    stream.raw(1)
    stream.uniforms(2)
    stream.normals(2)
    sym_eigen(np.eye(2))


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture
def criterion_log(request):
    """Collect per-criterion verdict lines for the terminal summary."""

    def log(line: str) -> None:
        request.config._criterion_lines.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
