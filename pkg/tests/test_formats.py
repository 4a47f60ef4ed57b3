import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asdforge.characters import all_characters, quadratic_char, trivial_char
from asdforge.exactnum import InputError
from asdforge.formats import (
    char_from_json,
    char_to_json,
    load_char,
    load_newform,
    newform_from_csv,
    newform_from_json,
    newform_to_json,
    parse_char_shorthand,
    qexp_from_json,
    qexp_to_json,
    read_json,
    sequence_from_json,
    sequence_to_json,
    write_json,
)
from asdforge.newform import delta_prime_coeffs, delta_spec, extend_coefficients
from asdforge.qseries import QExp
from strategies import cyclo_elems, rational_series


def through_text(obj):
    return json.loads(json.dumps(obj))


@settings(max_examples=60)
@given(rational_series(trunc=25))
def test_rational_qexp_round_trip(f):
    g = qexp_from_json(through_text(qexp_to_json(f)))
    assert g == f and g.coeffs == f.coeffs


@settings(max_examples=40)
@given(st.sampled_from([3, 4, 5, 12]).flatmap(
    lambda L: st.lists(cyclo_elems(L), min_size=1, max_size=6).map(lambda cs: (L, cs))))
def test_cyclotomic_qexp_round_trip(data):
    L, cs = data
    f = QExp(4, 3, len(cs), dict(enumerate(cs, start=1)), order=L)
    g = qexp_from_json(through_text(qexp_to_json(f)))
    assert g == f


def test_qexp_json_shape():
    f = QExp.from_list([1, -24, 252], weight=12)
    obj = qexp_to_json(f)
    assert obj == {"weight": 12, "width": 1, "field": {"kind": "rational"}, "trunc": 3,
                   "coefficients": {"1": "1", "2": "-24", "3": "252"}}


@pytest.mark.parametrize("bad", [
    {},
    {"weight": 12, "width": 1, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {"1": 1}},
    {"weight": 12, "width": 1, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {"x": "1"}},
    {"weight": 12, "width": 1, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {"4": "1"}},
    {"weight": 12, "width": 1, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {"1": "1/0"}},
    {"weight": 12, "width": 1, "field": {"kind": "real"}, "trunc": 3, "coefficients": {}},
    {"weight": "12", "width": 1, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {}},
    {"weight": 12, "width": 0, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {}},
    {"weight": 12, "width": 1, "field": {"kind": "rational"}, "trunc": 3, "coefficients": {}, "x": 1},
    [1, 2, 3],
])
def test_qexp_rejects_malformed(bad):
    with pytest.raises(InputError):
        qexp_from_json(bad)


@pytest.mark.parametrize("K", [1, 4, 5, 7, 8, 12, 15])
def test_char_round_trip(K):
    for chi in all_characters(K):
        assert char_from_json(through_text(char_to_json(chi))) == chi


def test_char_shorthand():
    assert parse_char_shorthand("quadratic:5") == quadratic_char(5)
    assert parse_char_shorthand("trivial:4") == trivial_char(4)
    assert load_char("quadratic:3") == quadratic_char(3)
    for bad in ("quadratic:x", "cubic:7", "trivial:0", "quadratic:9"):
        with pytest.raises(InputError):
            parse_char_shorthand(bad)


def test_newform_json_round_trip(delta):
    spec = delta_spec(delta_prime_coeffs(delta.truncate(100)))
    back = newform_from_json(through_text(newform_to_json(spec)))
    assert back == spec


def test_newform_csv(tmp_path, delta):
    spec = delta_spec(delta_prime_coeffs(delta.truncate(30)))
    rows = ["p,b_p", "# tau at primes"] + [f"{p},{b}" for p, b in spec.prime_coeffs.items()]
    side = {"weight": 12, "level": 1, "character": "trivial:1"}
    assert newform_from_csv("\n".join(rows), side) == spec
    (tmp_path / "d.csv").write_text("\n".join(rows))
    (tmp_path / "d.json").write_text(json.dumps(side))
    assert load_newform(tmp_path / "d.csv") == spec
    with pytest.raises(InputError):
        newform_from_csv("2,-24\n2,-24", side)
    with pytest.raises(InputError):
        newform_from_csv("2,-24,1", side)
    with pytest.raises(InputError):
        newform_from_csv("2,1/2", side)
    with pytest.raises(InputError):
        load_newform(tmp_path / "missing.csv")


def test_sequence_round_trip(delta):
    spec = delta_spec(delta_prime_coeffs(delta.truncate(100)))
    b = extend_coefficients(spec, 100)
    assert sequence_from_json(through_text(sequence_to_json(b, spec))) == b
    with pytest.raises(InputError):
        sequence_from_json({"weight": 12, "level": 1, "nmax": 3, "coefficients": ["1"]})


def test_write_and_read_json(tmp_path):
    path = tmp_path / "x.json"
    text = write_json({"a": "1/3"}, path)
    assert path.read_text() == text and read_json(path) == {"a": "1/3"}
    path.write_text("{not json")
    with pytest.raises(InputError):
        read_json(path)
