import numpy as np
import pytest

from lckpot import jets
from lckpot.gluing import (
    GlueContractError,
    GlueSpec,
    check_glue_hypotheses,
    glue,
    lie_derivative,
    locate_surface,
    outward_normal,
    verify_glue,
)
from lckpot.grammar import parse_field
from lckpot.hopf import section_potential
from lckpot.sampling import ball


def ball_spec(phi, psi, eps=0.1):
    return GlueSpec(phi, psi, None, eps, ball(2, 2.0, 4000))


def test_outward_normal_and_lie_derivative():
    p = np.array([1.0 + 1.0j, 0.0])
    X = outward_normal(jets.norm_sq(), p)
    np.testing.assert_allclose(X, p / np.linalg.norm(p))
    # d/dr |z|^2 = 2r
    assert lie_derivative(jets.norm_sq(), p, X) == pytest.approx(2 * np.sqrt(2))
    with pytest.raises(ValueError):
        outward_normal(jets.norm_sq(), np.zeros(2))


def test_locate_surface_lands_on_level_set():
    d = jets.norm_sq() - 1.0
    S = locate_surface(d, ball(2, 2.0, 500))
    assert len(S) > 100
    np.testing.assert_allclose(np.linalg.norm(S, axis=1), 1.0, atol=1e-12)


def test_hypotheses_pass_and_fail():
    good = ball_spec(2 * jets.norm_sq() - 1.0, jets.norm_sq())
    rep = check_glue_hypotheses(good)
    assert rep.passed and rep.min_margin == pytest.approx(2.0, rel=1e-9)
    bad = ball_spec(jets.norm_sq(), 2 * jets.norm_sq() - 1.0)
    rep = check_glue_hypotheses(bad)
    assert not rep.passed and rep.min_margin == pytest.approx(-2.0, rel=1e-9)
    with pytest.raises(GlueContractError) as e:
        glue(bad)
    assert e.value.report is rep or not e.value.report.passed
    glue(bad, override=True)


def test_degenerate_and_empty_boundary():
    f = jets.norm_sq()
    deg = check_glue_hypotheses(ball_spec(f, f + 0.0))
    assert deg.degenerate and not deg.passed
    empty = check_glue_hypotheses(ball_spec(f + 10.0, f))
    assert empty.empty_boundary and empty.passed


def test_region_fidelity_and_psd_on_ball():
    phi = parse_field("2*|z|^2 - 1 + Re(z1*z2)", 2)
    psi = parse_field("|z|^2 + 0.5*|z1|^2", 2)
    spec = ball_spec(phi, psi, 0.2)
    g = glue(spec)
    rep = verify_glue(g, spec)
    assert rep.fidelity_plus == 0.0 and rep.fidelity_minus == 0.0
    assert rep.points_plus > 0 and rep.points_minus > 0
    assert rep.glued.psd and rep.expected_strict and rep.glued.strict
    assert rep.passed


def test_hopf_demo(model):
    phi = parse_field("1 + 3*Re(z1*z2)/|z|^2", 2)
    psi = 0.1 * section_potential(model)
    spec = GlueSpec(phi, psi, model.lee, 0.02, model.annulus(5000))
    assert check_glue_hypotheses(spec).passed
    rep = verify_glue(glue(spec), spec)
    assert max(rep.fidelity_plus, rep.fidelity_minus) <= 1e-13
    assert rep.glued.verdict == "strict" and rep.passed


def test_weak_input_downgrades_to_psd(model):
    phi = parse_field("1 + 3*Re(z1*z2)/|z|^2", 2)
    weak = parse_field("|z1|^2/|z|^2", 2)
    spec = GlueSpec(phi, weak, model.lee, 0.02, model.annulus(5000))
    rep = verify_glue(glue(spec, override=True), spec)
    assert rep.psi_report.verdict == "psd"
    assert rep.verdict == "psd" and rep.passed
    assert 0 < rep.strict_failures_total == rep.strict_failures_in_psi_region
