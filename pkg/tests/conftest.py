import pytest

from diffuse_lab import ravel
from diffuse_lab import _peel_py
from diffuse_lab.qfield import nf_new
from diffuse_lab.weeks import build_appendix_group, weeks_groupdef


@pytest.fixture(scope="session")
def K():
    """Q(alpha) with alpha^3 + alpha - 1 = 0."""
    return nf_new([-1, 1, 0, 1])


@pytest.fixture(scope="session")
def W():
    """The Weeks trace field x^6 + 2x^4 - x^3 + 2x^2 + 1."""
    return nf_new([1, 0, 2, -1, 2, 0, 1])


@pytest.fixture(scope="session")
def appendix():
    return build_appendix_group()


@pytest.fixture(scope="session")
def weeks():
    return weeks_groupdef()


@pytest.fixture(params=["compiled", "python"])
def kernel(request, monkeypatch):
    """Run a test once per peeling kernel."""
    if request.param == "compiled":
        try:
            from diffuse_lab import _peel
        except ImportError:
            pytest.skip("compiled kernel not built")
        monkeypatch.setattr(ravel, "_kernel", _peel)
    else:
        monkeypatch.setattr(ravel, "_kernel", _peel_py)
    return request.param


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion (shown in the terminal summary)."""
    def record(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} | {detail}"
        request.config.stash.setdefault(ACCEPTANCE, {})[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
