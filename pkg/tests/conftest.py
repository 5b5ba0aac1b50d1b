import pytest

from terwcodes.matgroup import builtin_group, generate_group, mat
from terwcodes.scheme import build_scheme
from terwcodes.terwilliger import build_talgebra

_algebras = {}


@pytest.fixture(scope="session")
def trivial_group():
    return generate_group([mat(1, 0, 0, 1)], name="trivial")


def talgebra(name):
    """Full structure of T(G_name), computed once per session."""
    if name not in _algebras:
        _algebras[name] = build_talgebra(build_scheme(builtin_group(name)))
    return _algebras[name]


@pytest.fixture(scope="session")
def get_talgebra():
    return talgebra


ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
