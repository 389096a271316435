import numpy as np
import pytest

from solvlin import families, gf, grp
from solvlin.errors import DomainError, UsageError

ORDERS = [
    ({"construct": "gamma", "q": 2, "n": 4}, 60),
    ({"construct": "gamma0", "q": 2, "n": 4}, 15),
    ({"construct": "gamma", "q": 3, "n": 2}, 16),
    ({"construct": "gamma", "q": 2, "n": 5}, 155),
    ({"construct": "semilinear", "q": 2, "n": 10, "cyclic": 33, "galois": 10}, 330),
    ({"construct": "gl", "n": 2, "q": 2}, 6),
    ({"construct": "gl", "n": 2, "q": 3}, 48),
    ({"construct": "sl2", "q": 3}, 24),
    ({"construct": "sl2", "q": 4}, 60),
    ({"construct": "sp", "dim": 2, "q": 2}, 6),
    ({"construct": "q8"}, 8),
    ({"construct": "d8"}, 8),
    ({"construct": "extraspecial", "p": 3, "m": 1, "r": 4}, 27),
    ({"construct": "extraspecial", "p": 5, "m": 1, "r": 11}, 125),
    ({"construct": "extraspecial", "p": 5, "m": 1, "r": 11, "scalars": True, "torus": True}, 1000),
    ({"construct": "extraspecial", "p": 3, "m": 2, "r": 7}, 243),
    ({"construct": "wreath", "h": {"construct": "gl", "n": 2, "q": 2}, "top": [[1, 0]], "degree": 2, "top_order": 2}, 72),
    ({"construct": "direct_sum", "parts": [{"construct": "sl2", "q": 3}, {"construct": "gamma", "q": 2, "n": 4}]}, 1440),
    ({"construct": "affine", "h": {"construct": "gamma0", "q": 2, "n": 4}}, 240),
    ({"construct": "metacyclic", "p": 11, "d": 5}, 55),
    ({"construct": "symmetric", "n": 4}, 24),
    ({"construct": "cyclic", "n": 9}, 9),
]


@pytest.mark.parametrize("recipe,order", ORDERS)
def test_closure_order(recipe, order):
    c = families.build(recipe)
    assert c.group().order == order


def test_fourier_and_phase_orders():
    assert families.extraspecial_rep(5, 1, 11, scalars=True, torus=True, fourier=True).group().order == 2000
    assert families.extraspecial_rep(3, 1, 4, symplectic=True).group().order == 648


def test_extraspecial_structure():
    G = families.extraspecial_rep(3, 1, 7).group()
    Z = grp.center(G)
    assert len(Z) == 3
    assert sorted(grp.derived_subgroup(G).tolist()) == sorted(Z.tolist())
    assert G.exponent == 3


def test_sp_generators_preserve_form():
    c = families.sp(4, 3)
    S = families.SymplecticSpace(c.field, 4, c.meta["gram"])
    assert all(families.is_symplectic(m, S) for m in c.matrices())
    assert not families.is_symplectic(np.diag([2, 1, 1, 1]), S)


def test_isotropy_types():
    F = gf.field(3)
    S = families.SymplecticSpace.standard(F, 4)
    e = np.eye(4, dtype=np.int64)
    assert families.isotropy_type(e[[0, 1]], S) == "nonsingular"
    assert families.isotropy_type(e[[0, 2]], S) == "totally_isotropic"
    assert families.isotropy_type(e[[0, 1, 2]], S) == "mixed"


def test_mixed_direct_sum_has_two_fields():
    c = families.direct_sum(families.sl2(3), families.gamma(2, 4))
    assert [F.p for F, _ in c.rep.blocks] == [3, 2]
    with pytest.raises(UsageError):
        _ = c.field


def test_invalid_parameters():
    with pytest.raises(DomainError):
        families.extraspecial_rep(5, 1, 7)
    with pytest.raises(DomainError):
        families.semilinear(2, 4, cyclic=7)
    with pytest.raises(DomainError):
        families.metacyclic(11, 3)
    with pytest.raises(UsageError):
        families.build({"construct": "nonsense"})


def test_sp43_normalizer_route():
    c, info = families.sp43_extraspecial_d10()
    assert info == {"sp_order": 51840, "normalizer_order": 1920, "order": 320}
    G = c.group()
    S = families.SymplecticSpace(c.field, 4, c.meta["gram"])
    assert all(families.is_symplectic(m, S) for m in c.matrices())
    assert grp.is_solvable(G)
