import json
import math

import numpy as np
import pytest

import weyl_scope as ws


def test_triple_and_green():
    tr = ws.random_triple(6, 2, 7)
    assert tr.T.shape == (6, 8)
    assert tr.green_defect() < 1e-12
    rng = np.random.default_rng(0)
    u = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    assert ws.green_residual(tr, u, v) < 1e-12
    back = ws.triple_from_json(tr.to_json())
    assert np.array_equal(back.T, tr.T)


def test_m_function_and_krein():
    tr = ws.random_triple(8, 2, 11)
    b = ws.Extension(tr, np.zeros((2, 2), dtype=complex))
    c = ws.Extension(tr, np.eye(2, dtype=complex))
    m1 = b.m_function(1.0 + 5.0j)
    m2 = b.m_via_resolvent(1.0 + 5.0j, -2.0 - 6.0j)
    assert np.max(np.abs(m1 - m2)) < 1e-9
    assert ws.krein_residual(b, c, 0.5 + 4.0j) < 1e-9


def test_errors_carry_codes():
    bad = json.loads(ws.random_triple(3, 1, 1).to_json())
    bad["schema"] = "other"
    with pytest.raises(ws.WeylError) as info:
        ws.triple_from_json(bad)
    assert info.value.code == "ConfigInvalid"
    with pytest.raises(ws.WeylError) as info:
        ws.hl_m_matrix({"u": 0.0}, 0.0)
    assert info.value.code == "AtEigenvalue"


def test_models():
    assert ws.fo_m(1 + 1j) == 0
    m = ws.hl_m_matrix({"u": 0.0}, -1.0)
    assert abs(m[0, 0] + 1 / math.tanh(1.0)) < 1e-6
    z = ws.hl_eigenvalues({"u": 5.0}, (0.5, 50.0, -1.0, 1.0))
    assert np.allclose(z, [math.pi**2, 4 * math.pi**2], atol=1e-8)
    fr = {"phi": {"poles": [[0, -1]], "residues": [1]}, "psi": {"poles": [[1, -2]], "residues": [1]}, "B": 0.5}
    assert abs(ws.fr_m(fr, 0.3 + 1j) - 1 / (math.pi * 1j - 0.5)) < 1e-9
    assert "u" in ws.hl_step_model()


def test_run_is_deterministic():
    code, text = ws.run("check", {"triples": [{"random": {"m": 4, "h": 1}}]})
    assert code == 0
    assert json.loads(text)["all_pass"]
    assert ws.run("check", {"triples": [{"random": {"m": 4, "h": 1}}]})[1] == text
