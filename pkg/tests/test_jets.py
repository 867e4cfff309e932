import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lckpot import jets
from lckpot.grammar import parse_field
from lckpot.holo import HoloPoly, coordinate
from lckpot.jets import DomainError, eval_jet2, finite_diff_jet2
from lckpot.sampling import annulus
from lckpot.suites import builtin_fields, oracle_agreement
from lckpot import HopfModel


def test_log_norm_hessian_at_unit_vector():
    J = eval_jet2(jets.log(jets.norm_sq()), np.array([1.0, 0.0]))
    np.testing.assert_allclose(J.hess_mixed, np.diag([0.0, 1.0]), atol=1e-15)
    F = finite_diff_jet2(jets.log(jets.norm_sq()), np.array([1.0, 0.0]), 1e-5)
    assert np.max(np.abs(F.hess_mixed - J.hess_mixed)) < 1e-8


def test_product_matches_oracle():
    f = parse_field("|z1|^2 * |z2|^2", 2)
    p = np.array([1.0, 1.0])
    J = eval_jet2(f, p)
    np.testing.assert_allclose(J.hess_mixed, [[1, 1], [1, 1]], atol=1e-14)
    F = finite_diff_jet2(f, p, 1e-4)
    assert np.max(np.abs(F.hess_mixed - J.hess_mixed)) < 1e-8


def test_norm_sq_jet_is_exact():
    Z = annulus(3, 2.0, 50).sample()
    J = jets.norm_sq().jet(Z)
    np.testing.assert_allclose(J.value, np.sum(np.abs(Z) ** 2, axis=1))
    np.testing.assert_allclose(J.grad_z, np.conj(Z))
    assert np.all(J.hess_mixed == np.eye(3))
    assert np.all(J.hess_holo == 0)


@pytest.mark.parametrize("name,f", builtin_fields(HopfModel(2, 2.0)), ids=lambda x: x if isinstance(x, str) else "")
def test_builtin_fields_agree_with_oracle(name, f):
    Z = annulus(2, 2.0, 100, seed=3).sample()
    res = oracle_agreement(f, Z, [1e-3, 1e-4])
    assert res["pass"], res


def test_error_decays_quadratically():
    f = parse_field("-log(10 - |z|^2) + Re(z1^3*z2)", 2)
    Z = annulus(2, 2.0, 100, seed=4).sample()
    A = eval_jet2(f, Z)
    errs = []
    for h in (4e-3, 2e-3, 1e-3):
        F = finite_diff_jet2(f, Z, h)
        errs.append(np.max(np.abs(F.hess_mixed - A.hess_mixed)))
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    np.testing.assert_allclose(ratios, 4.0, rtol=0.05)


def test_hermitian_and_real_hessian_symmetry():
    f = parse_field("exp(Re(z1*z2)) + |z1^2 - i*z2|^2 - log(5 - |z|^2)", 2)
    Z = annulus(2, 2.0, 200, seed=5).sample()
    J = f.jet(Z)
    H = J.hess_mixed
    assert np.max(np.abs(H - np.conj(np.swapaxes(H, 1, 2)))) < 1e-12
    S = J.hess_holo
    assert np.max(np.abs(S - np.swapaxes(S, 1, 2))) < 1e-12
    R = J[0].real_hessian
    assert np.allclose(R, R.T)


def test_pluriharmonic_has_zero_mixed_hessian():
    Q = coordinate(2, 0) ** 3 * coordinate(2, 1) + 2j * coordinate(2, 1) ** 2
    Z = annulus(2, 2.0, 100).sample()
    for f in (jets.re(Q), jets.im(Q)):
        assert np.max(np.abs(f.jet(Z).hess_mixed)) < 1e-12


def test_value_only_path_matches_jet():
    f = parse_field("sqrt(|z1^2|^2 + |z1*z2|^2 + |z2^2|^2) / |z|^2", 2)
    Z = annulus(2, 2.0, 100).sample()
    np.testing.assert_allclose(f(Z), f.jet(Z).value, rtol=1e-15)


def test_extended_precision_input_is_kept():
    f = jets.log(jets.norm_sq())
    Z = np.array([[1.0, 0.5]], dtype=np.clongdouble)
    assert f(Z).dtype == np.longdouble


def test_domain_errors():
    f = jets.log(jets.norm_sq())
    with pytest.raises(DomainError) as e:
        f.jet(np.zeros(2))
    assert "|z|^2" in str(e.value)
    assert not f.domain(np.zeros((1, 2)))[0]
    g = jets.log(1.0 - jets.norm_sq())
    with pytest.raises(DomainError):
        finite_diff_jet2(g, np.array([1.0 - 1e-6, 0.0]), 1e-3)
    with pytest.raises(ValueError):
        finite_diff_jet2(g, np.array([0.1, 0.0]), 0.0)


def test_sqrt_and_power_domains():
    with pytest.raises(DomainError):
        jets.sqrt(jets.constant(-1.0)).jet(np.ones(2))
    assert np.isfinite(jets.power(jets.norm_sq(), 1.5).jet(np.ones(2)).value).all()


fields = st.sampled_from(
    ["|z|^2", "Re(z1*z2)", "|z1 + 2*z2|^2", "exp(Re(z1)/2)", "log(|z|^2)", "1/(1 + |z1|^2)"]
)


@settings(max_examples=25, deadline=None)
@given(a=fields, b=fields, op=st.sampled_from(["+", "*", "-", "/"]), c=st.floats(0.1, 3.0))
def test_algebraic_combinations_agree_with_oracle(a, b, op, c):
    expr = f"({a}) {op} ({c} + |z2|^2)" if op == "/" else f"({a}) {op} {c}*({b})"
    f = parse_field(expr, 2)
    Z = annulus(2, 2.0, 100, seed=9).sample()
    res = oracle_agreement(f, Z, [1e-3, 1e-4])
    assert res["pass"], (expr, res)


@settings(max_examples=25, deadline=None)
@given(coefs=st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=3, max_size=3))
def test_holo_poly_gradients(coefs):
    Q = HoloPoly(2, {(2, 0): coefs[0], (1, 1): coefs[1], (0, 3): coefs[2]})
    f = jets.abs_sq(Q)
    Z = annulus(2, 2.0, 100, seed=2).sample()
    assert oracle_agreement(f, Z, [1e-3, 1e-4])["pass"]
