import json

import numpy as np
import pytest

from lckpot import jets
from lckpot.forms import HermitianForm, NumericError
from lckpot.grammar import parse_field
from lckpot.positivity import CriticalPointError, check_psh, levi_check, min_eigenvalue, verify_regular_value
from lckpot.sampling import ball


def test_min_eigenvalue_symmetrizes():
    H = np.array([[1.0, 2.0], [0.0, 1.0]])
    assert min_eigenvalue(H) == pytest.approx(0.0, abs=1e-15)
    assert min_eigenvalue(np.eye(3)) == 1.0


def test_non_finite_forms_raise():
    with pytest.raises(NumericError):
        min_eigenvalue(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_verdicts():
    S = ball(2, 1.0, 2000)
    assert check_psh(jets.norm_sq(), None, S).verdict == "strict"
    assert check_psh(parse_field("Re(z1*z2)", 2), None, S).verdict == "psd"
    r = check_psh(-jets.norm_sq(), None, S)
    assert r.verdict == "fail" and r.failures == 2000
    assert r.min_eigenvalue_overall == pytest.approx(-1.0)


def test_strict_margin_and_tolerance():
    S = ball(2, 1.0, 500)
    f = 1e-7 * jets.norm_sq()
    assert check_psh(f, None, S).verdict == "strict"
    assert check_psh(f, None, S, strict_margin=1e-6).verdict == "psd"
    g = -1e-10 * jets.norm_sq()
    assert check_psh(g, None, S).psd
    assert not check_psh(g, None, S, tol=1e-12).psd


def test_merge_is_associative():
    f = parse_field("|z1|^2 - 0.5*|z2|^2 + Re(z1^2)", 2)
    Z = ball(2, 1.0, 3000).sample()
    parts = [check_psh(f, None, Z[i : i + 1000]) for i in (0, 1000, 2000)]
    a = parts[0].merge(parts[1]).merge(parts[2])
    b = parts[0].merge(parts[1].merge(parts[2]))
    whole = check_psh(f, None, Z, batch_size=700)
    for r in (a, b):
        assert r.to_dict() == whole.to_dict()


def test_report_serializes():
    r = check_psh(jets.norm_sq(), None, ball(2, 1.0, 10))
    d = json.loads(json.dumps(r.to_dict()))
    assert d["verdict"] == "strict" and d["points_checked"] == 10


def test_levi_sphere_flat_ellipsoid():
    e1 = np.array([1.0, 0.0])
    r = levi_check(jets.norm_sq(), e1)
    assert r.strictly_pseudoconvex and r.min_eigenvalue == pytest.approx(1.0)
    flat = levi_check(parse_field("Re(z1)", 2), np.zeros(2))
    assert not flat.strictly_pseudoconvex and flat.min_eigenvalue == pytest.approx(0.0, abs=1e-15)
    ell = levi_check(parse_field("|z1|^2 + 2*|z2|^2", 2), e1)
    assert ell.min_eigenvalue == pytest.approx(2.0)


def test_levi_basis_is_tangent():
    f = parse_field("|z1|^2 + 2*|z2|^2 + Re(z1*z2)", 2)
    p = np.array([0.6 + 0.2j, -0.3j])
    r = levi_check(f, p)
    g = f.jet(p).grad_z
    V = r.complex_tangent_basis
    assert np.max(np.abs(g @ V)) < 1e-10
    np.testing.assert_allclose(V.conj().T @ V, np.eye(V.shape[1]), atol=1e-12)


def test_levi_is_invariant_under_increasing_reparametrization():
    # level sets of exp(|z|^2) equal those of |z|^2; Levi forms differ by g'(phi)
    p = np.array([1.0, 0.0])
    a = levi_check(jets.norm_sq(), p).min_eigenvalue
    b = levi_check(jets.exp(jets.norm_sq()), p).min_eigenvalue
    assert b == pytest.approx(np.e * a)


def test_levi_critical_point():
    with pytest.raises(CriticalPointError):
        levi_check(jets.norm_sq(), np.zeros(2))


def test_regular_value():
    S = ball(2, 2.0, 5000)
    Z = S.sample()
    sphere = Z[:500] / np.linalg.norm(Z[:500], axis=1)[:, None]
    S = S.with_extra(sphere)
    good = verify_regular_value(jets.norm_sq(), 1.0, S)
    assert good.passed and good.level_set_nonempty
    bad = verify_regular_value(jets.power(jets.norm_sq() - 1.0, 2.0), 0.0, S)
    assert not bad.passed and bad.min_grad_in_band < 1e-6
    empty = verify_regular_value(jets.norm_sq(), 100.0, S)
    assert empty.passed and not empty.level_set_nonempty
    with pytest.raises(ValueError):
        verify_regular_value(jets.norm_sq(), 1.0, S, band=0.0)
