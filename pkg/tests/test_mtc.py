from __future__ import annotations

import math

import numpy as np
import pytest

from quons.mtc import (MtcData, ShapeMismatchError, UnsupportedParameterError, builtin, fibonacci,
                       fusion_dim_hom_unit, ising, pointed_z, su2_level, verify_modular_data,
                       verlinde_diagonalization, verlinde_tensor)

PHI = (1 + math.sqrt(5)) / 2


def test_fibonacci_dimensions():
    m = fibonacci()
    assert m.rank == 2
    assert m.d[1] == pytest.approx(1.6180339887, abs=1e-10)
    assert m.mu == pytest.approx(3.6180339887, abs=1e-10)
    assert m.delta == pytest.approx(1.9021130326, abs=1e-10)


def test_ising_dimensions():
    m = ising()
    assert m.rank == 3
    assert m.delta == pytest.approx(2.0)
    assert m.d[m.index("sigma")] == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("factory", [lambda: pointed_z(2), lambda: su2_level(1)])
def test_rank_two_s_matrix(factory):
    m = factory()
    assert np.allclose(m.S, np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    assert verify_modular_data(m).passed


def test_fibonacci_passes_tightly():
    rep = verify_modular_data(fibonacci())
    assert rep.passed
    assert rep.max_error < 1e-12


def test_perturbed_ising_fails():
    m = ising()
    S = m.S.copy()
    s = m.index("sigma")
    S[s, s] = 0.1
    bad = MtcData(m.name, m.labels, m.N, m.dual, S)
    rep = verify_modular_data(bad)
    assert not rep.passed
    failed = {c.check_id for c in rep.failures()}
    assert "S-unitary" in failed
    assert "verlinde-integrality" in failed


@pytest.mark.parametrize("word,expected", [((), 1), (("tau", "tau", "tau"), 1), (("tau",), 0),
                                           (("tau", "tau"), 1)])
def test_hom_dim_fibonacci(word, expected):
    assert fusion_dim_hom_unit(fibonacci(), word) == expected


def test_hom_dim_ising_odd_sigma():
    assert fusion_dim_hom_unit(ising(), ("sigma", "sigma", "sigma")) == 0
    assert fusion_dim_hom_unit(ising(), ("sigma",) * 4) == 2


@pytest.mark.parametrize("name", ["fibonacci", "ising", "z3", "su2_4"])
def test_verlinde_tensor_recovers_fusion(name):
    m = builtin(name)
    assert np.allclose(verlinde_tensor(m), m.N, atol=1e-10)
    assert verlinde_diagonalization(m) < 1e-10


@pytest.mark.parametrize("k", range(1, 7))
def test_su2_dimensions_are_q_integers(k):
    m = su2_level(k)
    q = math.pi / (k + 2)
    expected = [math.sin((j + 1) * q) / math.sin(q) for j in range(k + 1)]
    assert np.allclose(m.d, expected)


def test_pointed_z4_dual():
    assert pointed_z(4).dual == (0, 3, 2, 1)


@pytest.mark.parametrize("bad", ["su2_0", "z1", "nonsense"])
def test_builtin_rejects(bad):
    with pytest.raises((KeyError, UnsupportedParameterError, ValueError)):
        builtin(bad)


def test_shape_mismatch():
    m = fibonacci()
    with pytest.raises(ShapeMismatchError):
        MtcData("x", m.labels, m.N[:, :, :1], m.dual, m.S).check_shapes()
