import json
from fractions import Fraction

import numpy as np
import pytest

from fcsets import errors
from fcsets.modelfile import (
    BUNDLED,
    bundled_models,
    bundled_text,
    load_bundled,
    load_model,
    parse_model,
    serialize_model,
)

MINIMAL = {"format_version": 1, "name": "z2bare", "n": 2,
           "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 1, 0, 1]]}


def text(**overrides):
    data = dict(MINIMAL)
    data.update(overrides)
    return json.dumps(data, indent=2)


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip(name):
    raw = bundled_text(name)
    model = parse_model(raw)
    out = serialize_model(model)
    assert out == raw
    assert parse_model(out) == model


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_models_validate(name):
    ring = load_bundled(name).to_ring()
    assert ring.name == name


def test_bundled_inventory():
    models = {m.name: m for m in bundled_models()}
    assert set(models) == set(BUNDLED)
    assert models["trivial"].n == 1
    assert models["toric"].n == 4 and models["double_s3_like"].n == 8
    assert models["rep_s3"].smatrix is None and models["rep_s3"].weights is None
    assert models["ising"].weights == (Fraction(0), Fraction(1, 2), Fraction(1, 16))
    assert models["toric"].weights == (0, 0, 0, Fraction(1, 2))


def test_ising_entry_count():
    m = load_bundled("ising")
    assert m.n == 3
    assert len(m.fusion) == 7
    assert len({(p, q) for p, q, _, _ in m.fusion}) == 6


def test_entries_normalised_and_symmetric():
    m = parse_model(text(fusion=[[0, 0, 0, 1], [1, 0, 1, 1], [1, 1, 0, 1]]))
    assert (0, 1, 1, 1) in m.fusion
    N = m.fusion_tensor()
    assert N[1, 0, 1] == N[0, 1, 1] == 1


def test_duplicate_entry():
    with pytest.raises(errors.DuplicateEntry, match=r"fusion\[3\]"):
        parse_model(text(fusion=MINIMAL["fusion"] + [[1, 0, 1, 1]]))
    with pytest.raises(errors.DuplicateEntry):
        parse_model(text(labels=["a", "a"]))


@pytest.mark.parametrize("override, exc, where", [
    ({"fusion": [[0, 0, 2, 1]]}, errors.ModelRangeError, r"fusion\[0\]"),
    ({"fusion": [[0, 0, 0, 0]]}, errors.ModelRangeError, r"fusion\[0\]"),
    ({"fusion": [[0, 0, 0]]}, errors.ModelSyntaxError, r"fusion\[0\]"),
    ({"n": 0}, errors.ModelRangeError, "field n"),
    ({"n": "two"}, errors.ModelSyntaxError, "field n"),
    ({"labels": ["a"]}, errors.ModelRangeError, "labels"),
    ({"weights": ["1/x", "0"]}, errors.ModelSyntaxError, r"weights\[0\]"),
    ({"smatrix": [[[1, 0], [1, 0]], [[1, 0], "x"]]}, errors.ModelSyntaxError, r"smatrix\[1\]\[1\]"),
    ({"format_version": 2}, errors.ModelSyntaxError, "format_version"),
    ({"colour": "red"}, errors.ModelSyntaxError, "unknown key"),
])
def test_errors_carry_context(override, exc, where):
    with pytest.raises(exc, match=where) as info:
        parse_model(text(**override))
    assert "line" in str(info.value) or "field" in str(info.value)


def test_error_line_numbers():
    raw = text(colour="red")
    line = raw.splitlines().index('  "colour": "red"') + 1
    with pytest.raises(errors.ModelSyntaxError, match=f"line {line},"):
        parse_model(raw)


def test_json_syntax_error():
    with pytest.raises(errors.ModelSyntaxError, match="line 1"):
        parse_model("{ not json")
    with pytest.raises(errors.ModelSyntaxError):
        parse_model("[1, 2]")
    with pytest.raises(errors.ModelSyntaxError, match="missing"):
        parse_model(json.dumps({"format_version": 1, "name": "x", "n": 1}))


def test_unit_violation_passes_parse_fails_validation():
    bad = text(fusion=MINIMAL["fusion"] + [[0, 1, 0, 1]])
    model = parse_model(bad)
    with pytest.raises(errors.UnitViolation):
        model.to_ring()


def test_weights_formats():
    m = parse_model(text(weights=[0, "1/4"]))
    assert m.weights == (0, Fraction(1, 4))


def test_load_model_from_path(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(text())
    assert load_model(str(path)).name == "z2bare"
    assert load_model("ising").n == 3
    with pytest.raises(OSError):
        load_model(str(tmp_path / "missing.json"))
    with pytest.raises(KeyError):
        bundled_text("nope")


def test_serialised_smatrix_is_exact():
    m = load_bundled("ising")
    S = np.array(m.smatrix)
    assert S[2, 2] == 0 and S[0, 2] == pytest.approx(2**-0.5, abs=1e-15)
