import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcomplex.catalog import curl, ddt, div, grad
from symcomplex.core import I, Q, QQi
from symcomplex.homology import build_potential
from symcomplex.torus import (FieldFormatError, FourierField, SolvabilityError, apply_operator, kernel_projection,
                              load_field, random_real_field, roundtrip_check, solve_potential_torus)

HALF = Q(1, 2)


def sine():
    # sin(2 pi t) = (e^{2 pi i t} - e^{-2 pi i t}) / 2i
    return FourierField(1, 1, 0, {(1,): [-HALF * I], (-1,): [HALF * I]})


def test_derivative_of_sine():
    v = sine()
    assert v.is_real() and v.is_mean_zero()
    w = apply_operator(ddt(), v)
    assert w.scale == 1
    assert w.coeffs == {(1,): (-HALF * I,), (-1,): (-HALF * I,)}
    # stored c with scale 1 means (2 pi i) c = pi at both frequencies: 2 pi cos(2 pi t)
    assert (2 * I) * w.coeffs[(1,)][0] == 1
    assert w.is_real()


def test_zero_field_and_curl_of_gradient():
    z = FourierField.zero(2, 1)
    assert apply_operator(grad(2, 1), z).is_zero()
    w = FourierField(2, 1, 0, {(1, 2): [HALF], (-1, -2): [HALF], (3, -1): [I], (-3, 1): [-I]})
    assert apply_operator(curl(2, 1), apply_operator(grad(2, 1), w)).is_zero()


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        apply_operator(grad(2, 1), FourierField(2, 2, 0, {}))
    with pytest.raises(ValueError):
        FourierField(2, 2, 0, {(1,): [1, 2]})


def test_divergence_free_projection():
    v = FourierField(2, 2, 0, {(1, 1): [1, 0]})
    p = kernel_projection(div(2), v)
    assert p.coeffs == {(1, 1): (HALF, -HALF)}
    assert apply_operator(div(2), p).is_zero()
    assert kernel_projection(div(2), p) == p


def test_projection_fixes_kernel_and_needs_mean_zero():
    g = apply_operator(grad(2, 1), FourierField(2, 1, 0, {(2, 1): [1], (-2, -1): [1]}))
    assert kernel_projection(curl(2, 1), g) == g
    with pytest.raises(ValueError):
        kernel_projection(div(2), FourierField(2, 2, 0, {(0, 0): [1, 0]}))


@pytest.mark.parametrize("seed", range(5))
def test_projection_idempotent(seed):
    v = random_real_field(3, 3, 10, 5, seed)
    p = kernel_projection(div(3), v)
    assert kernel_projection(div(3), p) == p
    assert apply_operator(div(3), p).is_zero()
    assert p.is_real()


def test_solve_examples():
    w = FourierField(2, 1, 0, {(1, 0): [HALF], (-1, 0): [HALF]})
    v = apply_operator(grad(2, 1), w)
    u = solve_potential_torus(grad(2, 1), v)
    assert u == w and u.scale == 0
    assert solve_potential_torus(grad(2, 1), FourierField.zero(2, 2)).is_zero()
    with pytest.raises(SolvabilityError) as exc:
        solve_potential_torus(grad(2, 1), FourierField(2, 2, 0, {(1, 0): [0, 1]}))
    assert exc.value.m == (1, 0)


def test_solve_checks_kernel_when_asked():
    v = FourierField(2, 2, 0, {(1, 0): [0, 1], (-1, 0): [0, 1]})
    with pytest.raises(ValueError):
        solve_potential_torus(grad(2, 1), v, curl(2, 1))


def test_constant_polar_mode():
    b = build_potential(div(3), 1).B
    m = (2, -1, 3)
    # P in ker A(m): orthogonal to m
    p = FourierField(3, 3, 0, {m: [1, 2, 0]})
    u = solve_potential_torus(b, p)
    assert b.evaluate(m) @ list(u.coeffs[m]) == [1, 2, 0]


@pytest.mark.parametrize("seed", range(10))
def test_roundtrip_pairs(seed):
    pairs = [(curl(2, 1), grad(2, 1), 2, 2), (div(3), build_potential(div(3), 1).B, 3, 3)]
    for a, b, d, n in pairs:
        v = random_real_field(d, n, 15, 10, seed)
        rep = roundtrip_check(a, b, v)
        assert rep.ok and rep.real_preserved
        assert rep.potential.is_mean_zero()
        assert rep.reconstructed.scale == v.scale


def test_hermitian_flag_tracks_scale():
    # i*sin-like data: real only when the scale is odd
    v = FourierField(1, 1, 1, {(1,): [HALF], (-1,): [-HALF]})
    assert v.is_real()
    assert not FourierField(1, 1, 0, {(1,): [HALF], (-1,): [-HALF]}).is_real()


def test_linearity():
    gen = random.Random(3)
    v = random_real_field(2, 2, 5, 4, 1, gen)
    w = random_real_field(2, 2, 5, 4, 2, gen)
    c = QQi(Q(2, 3), -1)
    a = curl(2, 1)
    assert apply_operator(a, v.scale_by(c) + w) == apply_operator(a, v).scale_by(c) + apply_operator(a, w)
    pv, pw = kernel_projection(a, v), kernel_projection(a, w)
    b = grad(2, 1)
    lhs = solve_potential_torus(b, pv.scale_by(c) + pw)
    rhs = solve_potential_torus(b, pv).scale_by(c) + solve_potential_torus(b, pw)
    assert lhs == rhs


def test_scale_alignment():
    v = FourierField(2, 1, 3, {(1, 0): [1]})
    assert (v + FourierField.zero(2, 1)).scale == 3
    with pytest.raises(ValueError):
        v + FourierField(2, 1, 0, {(1, 0): [1]})
    assert FourierField.zero(2, 1, 5) == FourierField.zero(2, 1, 0)


def test_text_and_json_formats():
    v = FourierField(2, 2, 1, {(1, -1): [HALF, I], (-1, 1): [-HALF, I]})
    text = v.to_text()
    assert text.splitlines()[0] == "scale 1"
    assert "1 -1 | 1/2 0 0 1" in text
    assert load_field(text) == v
    import json
    assert load_field(json.dumps(v.to_json())) == v
    with pytest.raises(FieldFormatError):
        load_field("1 0 | 1\n")
    with pytest.raises(FieldFormatError):
        load_field("1 0 1 0\n")
    with pytest.raises(FieldFormatError):
        load_field("1 0 | 1 0\n1 0 | 2 0\n")


freq = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any)
coef = st.builds(lambda a, b: QQi(a, b), st.integers(-5, 5), st.integers(-5, 5))


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(freq, st.tuples(coef, coef), max_size=6))
def test_curl_grad_roundtrip_property(modes):
    v = FourierField(2, 2, 0, modes)
    rep = roundtrip_check(curl(2, 1), grad(2, 1), v)
    assert rep.ok
