import numpy as np
import pytest

from lckpot import jets
from lckpot.grammar import parse_field, parse_holo
from lckpot.hopf import (
    HopfModel,
    MonomialSection,
    PipelineError,
    PositivizeParams,
    PreconditionError,
    degree2_sections,
    find_sign_change,
    neglog_transform,
    partition_positive,
    positivize,
    section_potential,
    standard_potential,
    vuletescu_potential,
)
from lckpot.positivity import check_psh
from lckpot.twisted import check_automorphy, lift_to_cover


def test_model_basics(model):
    assert model.chi == 4.0 and model.lck_rank == 1
    Z = model.annulus(1000).sample()
    r = np.linalg.norm(Z, axis=1)
    assert r.min() >= 1.0 and r.max() < 2.0
    with pytest.raises(ValueError):
        HopfModel(2, 1.0)


def test_vuletescu_counterexample(model):
    phi = vuletescu_potential(model, parse_holo("z1*z2", 2), 3.0)
    s = find_sign_change(phi, model.annulus(10000))
    assert s.negative_value <= -0.4 and s.positive_value > 0
    # the infimum is 1 - A/2 at |z1| = |z2| with opposite phases
    assert s.negative_value == pytest.approx(-0.5, abs=1e-2)
    assert check_psh(phi, model.lee, model.annulus(2000)).strict


def test_standard_potential_is_strict(model):
    rep = check_psh(standard_potential(model), model.lee, model.annulus(2000))
    assert rep.min_eigenvalue_overall == pytest.approx(0.25, rel=1e-2)


def test_neglog_precondition(model):
    with pytest.raises(PreconditionError) as e:
        neglog_transform(jets.norm_sq() - 2.0, model.annulus(1000))
    assert e.value.witness is not None
    psi = neglog_transform(-jets.norm_sq(), model.annulus(100))
    Z = model.annulus(100).sample()
    assert np.max(np.abs(psi(2 * Z) - psi(Z) + np.log(4.0))) < 1e-12


def test_sections(model):
    secs = degree2_sections(2)
    assert sorted(s.alpha for s in secs) == [(0, 2), (1, 1), (2, 0)]
    psi = section_potential(model)
    rep = check_automorphy(lift_to_cover(psi, model.lee), model, 500)
    assert rep.passed
    assert check_psh(psi, model.lee, model.annulus(2000)).strict
    with pytest.raises(PreconditionError) as e:
        section_potential(model, [MonomialSection((2, 0)), MonomialSection((1, 1))])
    np.testing.assert_allclose(e.value.witness, [0, 1])


def test_partition_positive(model):
    a = [parse_field("1 + |z1|^2", 2), parse_field("|z2|^2", 2)]
    A = parse_field("3 + |z|^2", 2)
    bs = partition_positive(a, A, model.annulus(200))
    Z = model.annulus(200).sample()
    total = sum(ai(Z) * bi(Z) for ai, bi in zip(a, bs))
    np.testing.assert_allclose(total, A(Z))
    with pytest.raises(PreconditionError):
        partition_positive([parse_field("Re(z1)", 2)], A, model.annulus(200))


def test_positivize(model):
    phi = vuletescu_potential(model, parse_holo("z1*z2", 2), 3.0)
    S = model.annulus(20000, seed=1)
    res = positivize(phi, model, PositivizeParams(), S)
    Z = S.sample()
    v = res.field(Z)
    assert v.min() >= 1e-3
    assert check_psh(res.field, model.lee, Z, strict_margin=1e-6).strict
    keep = phi(Z) - res.section(Z) >= 0.02
    assert np.max(np.abs(v[keep] - phi(Z[keep]))) <= 1e-13
    assert [s["stage"] for s in res.stages][-1] == "strictify"


def test_positivize_short_circuit_and_failures(model):
    S = model.annulus(3000)
    res = positivize(standard_potential(model), model, sampler=S)
    assert res.short_circuit and res.field is not None
    with pytest.raises(PipelineError) as e:
        positivize(-standard_potential(model), model, sampler=S)
    assert e.value.stage == "positive-witness"
    weak = parse_field("1 + 3*Re(z1*z2)/|z|^2 - |z1|^2/|z|^2", 2)
    with pytest.raises(PipelineError) as e:
        positivize(weak, model, sampler=S)
    assert e.value.stage == "twisted-psh"
    with pytest.raises(PipelineError) as e:
        positivize(vuletescu_potential(model, parse_holo("z1*z2", 2), 3.0), model, PositivizeParams(c=5.0), S)
    assert e.value.stage == "regular-value"
