import numpy as np
import pytest

from lckpot import jets
from lckpot.grammar import parse_field, parse_holo
from lckpot.hopf import WeightMismatchError, standard_potential, vuletescu_potential
from lckpot.jets import finite_diff_jet2
from lckpot.twisted import (
    AutomorphicField,
    check_automorphy,
    check_lee,
    lck_form_field,
    lift_to_cover,
    twisted_hessian,
    twisted_hessian_batch,
)


def test_twisted_hessian_of_constant_is_identity(model):
    H = twisted_hessian(standard_potential(model), model.lee, np.array([1.0, 0.0]))
    np.testing.assert_allclose(H.matrix, np.eye(2), atol=1e-15)


def test_untwisted_is_plain_hessian():
    f = parse_field("|z1|^2 + Re(z1*z2)", 2)
    H = twisted_hessian(f, None, np.array([0.3, 0.4]))
    np.testing.assert_allclose(H.matrix, [[1, 0], [0, 0]], atol=1e-15)


def test_matches_oracle_on_lift(model):
    phi = parse_field("1 + 3*Re(z1*z2)/|z|^2 + |z1|^2/|z|^2", 2)
    Z = model.annulus(50).sample()
    T = twisted_hessian_batch(phi, model.lee, Z)
    lift = lift_to_cover(phi, model.lee).field
    F = finite_diff_jet2(lift, Z, 1e-4)
    ref = F.hess_mixed / np.sum(np.abs(Z) ** 2, axis=1)[:, None, None]
    assert np.max(np.abs(T - ref)) < 1e-6


def test_exp_rho_default_path(model):
    from lckpot.twisted import LeeData

    lee = LeeData(model.rho, model.lee.monodromy_shift)
    phi = parse_field("2 + Re(z1^2)/|z|^2", 2)
    Z = model.annulus(100).sample()
    a = twisted_hessian_batch(phi, lee, Z)
    b = twisted_hessian_batch(phi, model.lee, Z)
    assert np.max(np.abs(a - b)) < 1e-13
    assert lift_to_cover(phi, lee).field(Z) == pytest.approx(lift_to_cover(phi, model.lee).field(Z))


def test_twisted_hessian_is_dilation_invariant(model):
    phi = vuletescu_potential(model, parse_holo("z1*z2", 2), 3.0)
    Z = model.annulus(200).sample()
    a = twisted_hessian_batch(phi, model.lee, Z)
    b = twisted_hessian_batch(phi, model.lee, model.lam * Z)
    # forms descend to the quotient: T(lam z) = T(z) / lam^2 as matrices
    assert np.max(np.abs(a - model.lam**2 * b)) < 1e-12


def test_automorphy_of_lifts(model):
    for A in (0.0, 3.0, -7.0):
        phi = vuletescu_potential(model, parse_holo("z1*z2", 2), A)
        rep = check_automorphy(lift_to_cover(phi, model.lee), model, 1000)
        assert rep.passed, rep
    assert check_lee(model.lee, model, 1000).passed


def test_automorphy_detects_wrong_weight(model):
    bad = AutomorphicField(jets.norm_sq() + jets.constant(1.0), 1.0)
    assert not check_automorphy(bad, model, 200).passed


def test_non_homogeneous_section_rejected(model):
    with pytest.raises(WeightMismatchError):
        vuletescu_potential(model, parse_holo("z1*z2 + z1", 2), 1.0)


def test_lck_form_field(model):
    form = lck_form_field(standard_potential(model), model.lee)
    H = form(np.array([0.0, 2.0]))
    np.testing.assert_allclose(H.matrix, np.eye(2) / 4, atol=1e-15)
