import numpy as np
import pytest

from solvlin import families, qp
from solvlin.action import ModuleAction
from solvlin.errors import UsageError

SUMMARIES = [
    ("SL23", (2, 2, 8, 3, 3, 1)),
    ("G24", (1, 15, 15, 1, 16, 1)),
    ("G32", (1, 8, 8, 1, 9, 1)),
    ("G25", (1, 31, 31, 1, 32, 1)),
    ("GL23", (2, 2, 8, 6, 3, 1)),
    ("E3_648", (3, 3, 27, 24, 4, 1)),
    ("E5", (5, 10, 250, 8, 11, 1)),
    ("D10", (4, 2, 32, 10, 3, 1)),
]


def _tuple(D):
    s = D.summary()
    return (s["e"], s["U"], s["F"], s["A/F"], s["W"], s["b"])


@pytest.mark.parametrize("key,expected", SUMMARIES)
def test_decomposition_summary(group, key, expected):
    D = qp.decompose(ModuleAction(group(key)))
    assert _tuple(D) == expected
    assert all(D.checks.values()) and len(D.checks) == len(qp.STRUCTURE_CHECKS)


@pytest.mark.parametrize("key,expected", SUMMARIES)
def test_order_bound_holds_with_equality(group, key, expected):
    D = qp.decompose(ModuleAction(group(key)))
    assert qp.order_divides_bound(D)
    assert qp.order_bound(D) == D.G.order


@pytest.mark.parametrize("key", ["SL23", "G24", "E3_648", "E5", "D10", "GL23"])
def test_fixed_point_law_outside_A(group, key):
    D = qp.decompose(ModuleAction(group(key)))
    for pt in qp.fixed_point_data(D):
        s = pt["order"]
        n = D.dim_W * D.e * D.b
        assert n % s == 0
        assert pt["fixed"] == D.action.field.q ** (n // s)


def test_prime_structure(group):
    D = qp.decompose(ModuleAction(group("E3_648")))
    comp = [c for c in D.components if c.p == 3][0]
    assert comp.extraspecial and comp.e == 3
    assert D.e ** 2 == len(D.E) // len(D.Z)


def test_not_quasiprimitive(group):
    assert not qp.is_quasiprimitive(ModuleAction(group("WR")))
    G = families.extraspecial_rep(5, 1, 11, scalars=True, torus=True).group()
    assert not qp.is_quasiprimitive(ModuleAction(G))
    for key in ["SL23", "G24", "E5", "Q8"]:
        assert qp.is_quasiprimitive(ModuleAction(group(key)))


def test_reducible_module_rejected():
    G = families.direct_sum(families.sl2(3), families.sl2(3)).group()
    with pytest.raises(UsageError):
        qp.is_quasiprimitive(ModuleAction(G))


def test_homogeneity_of_restrictions():
    F = families.gf.field(3)
    I = np.eye(2, dtype=np.int64)
    assert qp.is_homogeneous(F, [I], 2)
    assert not qp.is_homogeneous(F, [np.diag([1, 2])], 2)
    assert qp.simple_factor_count(F, [np.diag([1, 2])], 2) == 2
