import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lckpot import jets
from lckpot.grammar import ExpressionError, parse_field, parse_holo

Z = np.array([[1.0 + 0.5j, -0.3 + 0.2j], [0.2 - 1.0j, 0.7j]])


@pytest.mark.parametrize(
    "expr,ref",
    [
        ("|z|^2", lambda z: np.sum(np.abs(z) ** 2, axis=1)),
        ("log(|z|^2)", lambda z: np.log(np.sum(np.abs(z) ** 2, axis=1))),
        ("Re(z1*z2)", lambda z: np.real(z[:, 0] * z[:, 1])),
        ("Im(i*z1^2)", lambda z: np.real(z[:, 0] ** 2)),
        ("|z1 - 2*z2|", lambda z: np.abs(z[:, 0] - 2 * z[:, 1])),
        ("|z|", lambda z: np.linalg.norm(z, axis=1)),
        ("1 + 3*Re(z1*z2)/|z|^2", lambda z: 1 + 3 * np.real(z[:, 0] * z[:, 1]) / np.sum(np.abs(z) ** 2, axis=1)),
        ("-log(10 - |z|^2)", lambda z: -np.log(10 - np.sum(np.abs(z) ** 2, axis=1))),
        ("exp(-|z1|^2) * 2^3", lambda z: 8 * np.exp(-np.abs(z[:, 0]) ** 2)),
        ("sqrt(|z1^2|^2 + |z2^2|^2)", lambda z: np.sqrt(np.abs(z[:, 0]) ** 4 + np.abs(z[:, 1]) ** 4)),
        ("(|z|^2)^1.5 - pi", lambda z: np.sum(np.abs(z) ** 2, axis=1) ** 1.5 - np.pi),
        ("2", lambda z: np.full(len(z), 2.0)),
    ],
)
def test_expressions_evaluate(expr, ref):
    np.testing.assert_allclose(parse_field(expr, 2)(Z), ref(Z), rtol=1e-14)


@pytest.mark.parametrize(
    "expr,col,msg",
    [
        ("Re(", 4, "unexpected"),
        ("z1 + ", 6, "unexpected"),
        ("Re(z1) + z2", 8, "cannot mix"),
        ("log(z1)", 1, "real field"),
        ("z1*z2", 1, "holomorphic"),
        ("|z|^2 $ 1", 7, "unexpected character"),
        ("Re(z3)", 4, "out of range"),
        ("foo(1)", 1, "unknown name"),
        ("|z|^2 / 0", 7, "division by zero"),
        ("z + 1", 3, "bare z"),
        ("|z|^(Re(z1))", 4, "exponent"),
        ("", 1, "empty"),
    ],
)
def test_errors_carry_position(expr, col, msg):
    with pytest.raises(ExpressionError) as e:
        parse_field(expr, 2)
    assert e.value.line == 1 and e.value.column == col, str(e.value)
    assert msg in str(e.value)


def test_multiline_position():
    with pytest.raises(ExpressionError) as e:
        parse_field("|z|^2 +\n  Re(", 2)
    assert (e.value.line, e.value.column) == (2, 6)


def test_parse_holo():
    Q = parse_holo("z1*z2 + i*z1^2", 2)
    assert Q.is_homogeneous(2)
    np.testing.assert_allclose(Q.value(Z), Z[:, 0] * Z[:, 1] + 1j * Z[:, 0] ** 2)
    with pytest.raises(ExpressionError):
        parse_holo("|z|^2", 2)


@given(c=st.floats(-1e6, 1e6, allow_nan=False), d=st.floats(0.5, 10))
def test_numeric_constants_roundtrip(c, d):
    f = parse_field(f"{c!r} + {d!r}*|z1|^2", 2)
    np.testing.assert_allclose(f(Z), c + d * np.abs(Z[:, 0]) ** 2, rtol=1e-12, atol=1e-9)


def test_parsed_field_is_jet_field():
    f = parse_field("|z1|^2 + 2*|z2|^2", 2)
    assert isinstance(f, jets.ScalarField)
    np.testing.assert_allclose(f.jet(Z).hess_mixed[0], np.diag([1.0, 2.0]))
