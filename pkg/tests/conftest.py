import pytest

from paucity import kernels
from paucity.normalize import NonlinearSystem, SymmetricSystem, gen_theta_system

# criterion number -> outcome, filled by the acceptance module
_CRITERIA: dict[int, str] = {}
_TITLES = {
    1: "identity suite",
    2: "classification decomposition and trivial count",
    3: "divisor search equals brute force",
    4: "generated systems match the displayed ones",
    5: "non-linear suite",
    6: "paucity trend",
    7: "determinism across worker counts",
}


@pytest.fixture
def product_system():
    return SymmetricSystem(2, [[0, 1]])


@pytest.fixture
def s23_system():
    return SymmetricSystem(3, [[0, 1, 0], [0, 0, 1]])


@pytest.fixture
def gaussian_system():
    return gen_theta_system((1, 0, 1), 4)


@pytest.fixture
def nonlinear_system():
    # sigma_2 - sigma_1^2 and sigma_3
    return NonlinearSystem(3, (2, 3), (1, 1), (((1, (2,)),), ()))


@pytest.fixture(params=kernels.available())
def backend(request):
    return request.param


def pytest_runtest_logreport(report):
    crit = None
    for name, value in report.user_properties:
        if name == "criterion":
            crit = value
    if crit is None:
        return
    if report.when == "call":
        if report.passed and not hasattr(report, "wasxfail"):
            _CRITERIA.setdefault(crit, "PASS")
        else:
            _CRITERIA[crit] = "FAIL"
    elif report.failed or report.skipped:
        _CRITERIA[crit] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_TITLES):
        status = _CRITERIA.get(crit, "NOT RUN")
        terminalreporter.write_line(f"criterion {crit}: {status}  {_TITLES[crit]}")
