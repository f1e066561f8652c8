from fractions import Fraction

import pytest

from hodgemirror import closed, extension, picard_fuchs

ORDER = 12


@pytest.fixture(scope="session")
def quintic():
    return picard_fuchs.quintic_operator()


@pytest.fixture(scope="session")
def quintic_basis(quintic):
    return picard_fuchs.frobenius_mum_basis(quintic, ORDER)


@pytest.fixture(scope="session")
def quintic_closed(quintic, quintic_basis):
    return closed.closed_pipeline(quintic, 5, 50, -200, quintic_basis)


@pytest.fixture(scope="session")
def real_tau():
    return extension.real_quintic_tau(ORDER)


@pytest.fixture(scope="session")
def psi_h(real_tau, quintic_basis, quintic_closed):
    return extension.open_potential_q(real_tau, quintic_basis[0], quintic_closed.mirror)


@pytest.fixture(scope="session")
def superpotentials(psi_h):
    w_plus = extension.superpotential(1, 0, 0, 2, psi_h, 1)
    w_minus = extension.superpotential(1, -1, Fraction(1, 4), 2, psi_h, -1)
    return w_plus, w_minus


# ---- acceptance report -----------------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, title, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({detail})")
