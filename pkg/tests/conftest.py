import functools

import pytest
from hypothesis import settings

from pregroups import instances as inst
from pregroups.constructions import amalgam_pregroup, leary_stancu_pregroup, robinson_pregroup

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def built(name: str):
    """(data, pregroup) for a named instance, cached for the whole session."""
    maker = getattr(inst, name)
    d = maker()
    if name.startswith("ls_"):
        return d, leary_stancu_pregroup(d)
    if name.startswith("robinson_"):
        return d, robinson_pregroup(d)
    return d, amalgam_pregroup(d)


AMALGAMS = ["c4_amalgam_c2", "c2_free_c4", "c2_free_c3"]
LS = ["ls_c3_inversion", "ls_c4_square_identity", "ls_d8_outer", "ls_d8_klein_swap", "ls_c4_two_equal",
      "ls_c2_trivial_edge"]
ROBINSON = ["robinson_s3", "robinson_d8_a4"]
ALL = AMALGAMS + LS + ROBINSON


@pytest.fixture(params=ALL)
def any_built(request):
    return built(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
