import functools

import pytest

from solvlin import families

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def cached_group(key: str):
    """Groups shared across test modules, built once per session."""
    recipes = {
        "S3": families.symmetric(3),
        "S4": families.symmetric(4),
        "SL23": families.sl2(3),
        "GL22": families.gl(2, 2),
        "GL23": families.gl(2, 3),
        "Q8": families.q8_gf3(),
        "D8": families.d8_gf3(),
        "G24": families.gamma(2, 4),
        "G024": families.gamma0(2, 4),
        "G32": families.gamma(3, 2),
        "G25": families.gamma(2, 5),
        "Z11_5": families.metacyclic(11, 5),
        "Z31_5": families.metacyclic(31, 5),
        "Z7_3": families.metacyclic(7, 3),
        "AFF_G024": families.affine(families.gamma0(2, 4)),
        "WR": families.wreath_embed(families.gl(2, 2), [[1, 0]], 2, 2),
        "E3_648": families.extraspecial_rep(3, 1, 4, symplectic=True),
        "E5": families.extraspecial_rep(5, 1, 11, scalars=True, torus=True, fourier=True),
        "MIXED": families.direct_sum(families.sl2(3), families.gamma(2, 4)),
    }
    if key == "D10":
        return families.sp43_extraspecial_d10()[0].group()
    return recipes[key].group()


@pytest.fixture
def group():
    return cached_group


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
