from functools import lru_cache

from hypothesis import settings

from dirtile.coxeter import CoxeterParams
from dirtile.mgon import MGonCategory
from dirtile.patch import build_reflective

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@lru_cache(maxsize=None)
def reflective_patch(m: int, n: int, radius: int, code: tuple | None = None):
    category = MGonCategory(code) if code else None
    return build_reflective(CoxeterParams(m, n), category, radius)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
