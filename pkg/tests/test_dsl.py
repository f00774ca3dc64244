import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcomplex.catalog import (CATALOG, CatalogError, catalog, cauchy_riemann, div, from_spec, grad, laplacian,
                                parse_spec, pi_surrogate, sqrt2_surrogate, sym_grad)
from symcomplex.core import I, Poly, Q, Symbol, variables
from symcomplex.dsl import ParseError, format_operator, parse_operator, parse_to_json, tokenize

GOLDEN = Path(__file__).parent / "golden"
CASES = sorted(p.stem for p in GOLDEN.glob("*.op"))
y1, y2 = variables(2)


def test_corpus_size():
    assert len(CASES) == 20
    valid = [c for c in CASES if "error" not in json.loads((GOLDEN / f"{c}.json").read_text())]
    assert 5 <= len(valid) < 20


@pytest.mark.parametrize("case", CASES)
def test_golden(case):
    text = (GOLDEN / f"{case}.op").read_text()
    expected = (GOLDEN / f"{case}.json").read_text()
    assert parse_to_json(text) == expected
    assert parse_to_json(text) == parse_to_json(text)


EXPECTED_SYMBOLS = {
    "01_cauchy_riemann": cauchy_riemann(),
    "02_grad3": grad(3, 1),
    "03_div3": div(3),
    "04_multiline": Symbol([[-y2, y1]], 2),
    "05_laplacian": laplacian(2),
    "06_rational": Symbol([[Q(1, 2) * y1 - Q(3, 4) * y2, Q(1, 3) * y1 + Q(1, 3) * y2]], 2),
    "07_pi_surrogate": pi_surrogate(),
    "08_sqrt2": sqrt2_surrogate(),
    "09_expand": Symbol([[-4 * y1 * y2]], 2),
    "10_sym_grad": sym_grad(),
    "11_zero_entries": Symbol([[y1, 0 * y1], [0 * y1, y2]], 2),
}


@pytest.mark.parametrize("case", sorted(EXPECTED_SYMBOLS))
def test_valid_cases_match_hand_symbols(case):
    spec = parse_operator((GOLDEN / f"{case}.op").read_text())
    assert spec.symbol == EXPECTED_SYMBOLS[case]


def test_spec_examples():
    s = parse_operator("operator cr { dim 2; shape 2x2; [ [x1, -x2], [x2, x1] ] }")
    assert s.name == "cr" and s.symbol == cauchy_riemann()
    with pytest.raises(ParseError) as exc:
        parse_operator("operator bad { dim 2; shape 1x1; [ [x1 + x1^2] ] }")
    assert exc.value.kind == "homogeneity" and "(1,1)" in exc.value.message
    assert parse_operator("operator grad { dim 3; shape 3x1; [ [x1], [x2], [x3] ] }").symbol == grad(3, 1)


def test_complex_entries():
    s = parse_operator("operator c { dim 2; shape 1x1; [ [x1 + i*x2] ] }", complex_=True)
    assert s.symbol.entries[0][0] == y1 + I * y2


def test_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_operator("operator x {\n dim 2;\n shape 1x1;\n [ [x1 +] ]\n}")
    assert (exc.value.line, exc.value.col) == (4, 9)
    with pytest.raises(ParseError) as exc:
        parse_operator("operator x { dim 0; shape 1x1; [[x1]] }")
    assert exc.value.col == 18
    with pytest.raises(ParseError):
        parse_operator("operator x { dim 1; shape 1x1; [[x1]] } extra")
    with pytest.raises(ParseError):
        parse_operator("operator x { dim 1; shape 1x1; [[x1/0]] }")


def test_tokenizer_positions():
    toks = tokenize("operator\n  a")
    assert [(t.text, t.line, t.col) for t in toks[:2]] == [("operator", 1, 1), ("a", 2, 3)]


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_round_trip(name):
    a = catalog(name)
    assert parse_operator(format_operator(a, name)).symbol == a


def test_round_trip_complex():
    text = "operator z { dim 2; shape 1x2; [[(1/2 - 3*i)*x1^2 - i*x2^2, -x1*x2/3]] }"
    s = parse_operator(text, True)
    assert parse_operator(format_operator(s), True).symbol == s.symbol


coeffs = st.integers(-20, 20)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), coeffs, st.integers(1, 7)), min_size=1, max_size=4))
def test_round_trip_property(terms):
    p = Poly(2, {(e, 3 - e): Q(n, d) for e, n, d in terms})
    sym = Symbol([[p, -p], [2 * p, Poly.zero(2)]], 2)
    assert parse_operator(format_operator(sym)).symbol == sym


def test_catalog_examples():
    g = catalog("grad", d=3, m=2)
    assert g.shape == (6, 2)
    assert catalog("sym_grad", d=3).shape == (6, 3)
    sv = catalog("st_venant")
    assert sv.shape == (6, 6) and sv.degree == 2
    assert parse_spec("grad:d=3,m=2") == ("grad", {"d": 3, "m": 2})
    assert from_spec("div:d=2") == div(2)
    with pytest.raises(CatalogError):
        catalog("nope")
    with pytest.raises(CatalogError):
        catalog("grad", q=1)
    with pytest.raises(CatalogError):
        catalog("grad", d=0)
    with pytest.raises(CatalogError):
        parse_spec("grad:d=x")


def test_grad_columns_are_tensor_products():
    x = variables(3)
    g = catalog("grad", d=3, m=2)
    for j in range(2):
        col = [g.entries[i][j] for i in range(6)]
        expected = [x[q] if i == j else Poly.zero(3) for i in range(2) for q in range(3)]
        assert col == expected


def test_sym_grad_columns():
    x = variables(3)
    e = sym_grad()
    idx = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    for i in range(3):
        for row, (a, b) in enumerate(idx):
            if i in (a, b):
                j = b if a == i else a
                assert e.entries[row][i] == (1 + (a == b)) * x[j]
            else:
                assert e.entries[row][i].is_zero()


def test_catalog_companions_are_exact():
    from symcomplex.catalog import COMPANIONS
    from symcomplex.core import sample_points
    from symcomplex.homology import verify_exact_pair
    for spec, companion in COMPANIONS.items():
        if companion is None:
            continue
        a, q = from_spec(spec), from_spec(companion)
        assert verify_exact_pair(a, q, sample_points(a.nvars, 100, seed=0)).ok, spec
