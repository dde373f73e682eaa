import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewjacobi.forms_io import (
    FormInvariantError,
    FormSchemaError,
    dumps_form,
    form_from_dict,
    load_form,
    loads_form,
    save_form,
)
from skewjacobi.isomorphism import ThetaComponents
from skewjacobi.jacobi_skew import SkewJacobiExpansion
from skewjacobi.metaplectic import VectorValuedExpansion
from skewjacobi.samples import random_plus_form, random_skew_jacobi
from skewjacobi.scalar_maass import ScalarMaassExpansion
from skewjacobi.spaces import Space

CORPUS = sorted(p for p in resources.files("skewjacobi").joinpath("data/forms").iterdir() if p.name.endswith(".json"))


def test_corpus_has_twelve_files():
    assert len(CORPUS) == 12


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_roundtrip_byte_identical(path, tmp_path):
    text = path.read_text()
    form = load_form(path)
    out = tmp_path / "x.json"
    save_form(form, out)
    assert out.read_text() == text


def test_empty_coeffs_is_zero_form():
    phi = loads_form('{"kind": "jacobi_skew", "weight_twice": 6, "index_m": 1, "coeffs": []}')
    assert isinstance(phi, SkewJacobiExpansion) and phi.is_zero()
    f = loads_form('{"kind": "scalar", "weight_twice": 5, "level": 4, "coeffs": []}')
    assert isinstance(f, ScalarMaassExpansion) and f(1j) == 0


def test_duplicate_key_reports_path():
    data = {
        "kind": "jacobi_skew",
        "weight_twice": 6,
        "index_m": 1,
        "coeffs": [
            {"part": "plus", "key": [0, 0], "value": [1, 0]},
            {"part": "plus", "key": [0, 0], "value": [2, 0]},
        ],
    }
    with pytest.raises(FormInvariantError, match=r"/coeffs/1.*\[0, 0\]"):
        form_from_dict(data)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"kind": "bogus", "weight_twice": 1, "coeffs": []}',
        '{"kind": "scalar", "weight_twice": 5, "coeffs": []}',
        '{"kind": "jacobi_skew", "weight_twice": 6, "coeffs": []}',
        '{"kind": "jacobi_skew", "weight_twice": 6, "index_m": 1, "coeffs": [{"part": "plus", "key": [0], "value": [1, 0]}]}',
        '{"kind": "jacobi_skew", "weight_twice": 6, "index_m": 1, "coeffs": [{"part": "plus", "key": [0, 0], "value": [1]}]}',
        '{"kind": "jacobi_skew", "weight_twice": 6, "index_m": 1, "coeffs": [{"part": "plus", "key": [0, 0], "value": [NaN, 0]}]}',
        '{"kind": "scalar", "weight_twice": 5, "level": 4, "coeffs": [], "extra": 1}',
    ],
)
def test_schema_errors(text):
    with pytest.raises(FormSchemaError):
        loads_form(text)


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "jacobi_skew", "weight_twice": 6, "index_m": 1, "coeffs": [{"part": "plus", "key": [2, 0], "value": [1, 0]}]},
        {"kind": "jacobi_skew", "weight_twice": 5, "index_m": 1, "coeffs": []},
        {"kind": "jacobi_skew", "weight_twice": 6, "index_m": 1, "coeffs": [{"part": "zero", "key": [4, 0], "value": [1, 0]}]},
        {"kind": "vector_valued", "weight_twice": 1, "index_m": 1, "coeffs": [{"part": "plus", "key": [3, 1], "value": [1, 0]}]},
        {"kind": "theta_components", "weight_twice": 6, "index_m": 1, "coeffs": [{"part": "plus", "key": [0, 2], "value": [1, 0]}]},
        {"kind": "scalar", "weight_twice": 5, "level": 4, "coeffs": [{"part": "minus", "key": [0], "value": [1, 0]}]},
        {"kind": "scalar", "weight_twice": 5, "level": 4, "coeffs": [{"part": "zero", "key": [2], "value": [1, 0]}]},
    ],
)
def test_invariant_errors(data):
    with pytest.raises(FormInvariantError):
        form_from_dict(data)


def test_vector_and_theta_kinds_load():
    vec = loads_form(
        '{"kind": "vector_valued", "weight_twice": 1, "index_m": 1, "dual": true,'
        ' "coeffs": [{"part": "plus", "key": [3, 1], "value": [1, 0]}]}'
    )
    assert isinstance(vec, VectorValuedExpansion) and vec.context.dual
    comps = loads_form(
        '{"kind": "theta_components", "weight_twice": 6, "index_m": 1, "mode": "g",'
        ' "coeffs": [{"part": "plus", "key": [1, 1], "value": [1, 0]}]}'
    )
    assert isinstance(comps, ThetaComponents) and comps.mode == "g"


@given(st.integers(0, 10**6), st.sampled_from(list(Space)))
def test_random_tables_roundtrip(seed, space):
    rng = np.random.default_rng(seed)
    for form in (random_skew_jacobi(rng, 5, 3, space), random_plus_form(rng, 5, 3, space)):
        text = dumps_form(form)
        back = loads_form(text)
        assert back == form
        assert dumps_form(back) == text


def test_canonical_text_is_sorted_and_signless_zero():
    form = SkewJacobiExpansion(3, 1, plus={(1, 1): complex(0.1, -0.0), (0, 0): 2})
    text = dumps_form(form)
    assert "-0," not in text and "-0]" not in text
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert [r["key"] for r in data["coeffs"]] == [[0, 0], [1, 1]]
    assert "0.10000000000000001" in text
