import numpy as np
import pytest

import schur_dilate as sd


def random_contraction(rng, rows, cols, norm):
    g = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return norm * g / np.linalg.norm(g, 2)


def test_julia_is_unitary():
    rng = np.random.default_rng(1)
    t = random_contraction(rng, 3, 2, 0.9)
    j = sd.julia(t)
    assert j.shape == (5, 5)
    assert np.linalg.norm(j.conj().T @ j - np.eye(5)) < 1e-12
    d_t, d_ts = sd.defects(t)
    assert np.linalg.norm(t @ d_t - d_ts @ t) < 1e-12


def test_parametrize_round_trips():
    rng = np.random.default_rng(2)
    row = random_contraction(rng, 2, 5, 1.0)
    p = sd.row_parametrize(row, [2, 3])
    assert p.orientation == "row" and len(p.gammas) == 2
    assert np.linalg.norm(sd.reconstruct(p) - row) < 1e-10
    col = random_contraction(rng, 4, 2, 0.7)
    assert np.linalg.norm(sd.reconstruct(sd.col_parametrize(col, [1, 3])) - col) < 1e-10
    mat = random_contraction(rng, 4, 3, 0.8)
    mp = sd.matrix_parametrize(mat, [2, 2], [1, 2])
    assert np.linalg.norm(sd.matrix_reconstruct(mp) - mat) < 1e-10
    b = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    a = b @ b.conj().T
    pp = sd.psd_parametrize(a, [2, 1, 1])
    assert np.linalg.norm(sd.psd_reconstruct(pp) - a) < 1e-9
    assert all(np.linalg.norm(g, 2) <= 1 + 1e-9 for g in pp.gammas[0][1:])


def test_errors_carry_kind():
    with pytest.raises(sd.SchurDilateError) as info:
        sd.row_parametrize(2 * np.eye(2), [1, 1])
    assert info.value.kind == "NotContraction"


def test_trine_povm_dilation():
    vs = [np.sqrt(2 / 3) * np.array([np.cos(a), np.sin(a)]) for a in 2 * np.pi * np.arange(3) / 3]
    d = sd.povm_dilate(vs)
    assert d.kind == "povm" and d.size == 5
    report = sd.povm_verify(d, vs)
    assert report["passed"] and report["compression"] < 1e-10


def test_amplitude_damping_channel():
    k = [np.array([[1, 0], [0, 0.8]]), np.array([[0, 0.6], [0, 0]])]
    d = sd.channel_dilate(k)
    rho = np.array([[0.3, 0.2j], [-0.2j, 0.7]])
    assert np.linalg.norm(sd.channel_simulate(d, rho) - sd.apply_kraus(k, rho)) < 1e-12
    with pytest.raises(sd.SchurDilateError):
        sd.channel_dilate([np.diag([1.0, 0.5])])


def test_witness_harness():
    assert "choi3" in sd.builtin_witness_names()
    a, k = sd.gen_family("toeplitz2", seed=5)
    assert sd.witness_check("transpose", a, k)[0]
    passed, min_eig = sd.witness_check("transpose", sd.bell_projector(), 2)
    assert not passed and abs(min_eig + 0.5) < 1e-10
    assert not sd.witness_check("choi3", sd.horodecki_state(3.5), 3)[0]
