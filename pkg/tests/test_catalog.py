import json

import pytest

from engelrad.catalog import builtin_group, builtin_lie, export, export_text, from_dict, ingest, lie_to_dict
from engelrad.errors import BadParams, SchemaError, ValidationError
from engelrad.exactfield import GF

LIE_MODELS = ["sl2", "gl2", "b2", "heis3", "n3", "sl3", "jacobson:5", "jacobson:7", "witt:5", "witt:7", "sl2+b2",
              "abelian:3"]
GROUP_MODELS = ["sym:4", "alt:5", "dihedral:6", "cyclic:5", "q8", "sl2:3", "psl2:7", "psl3:3", "sym:3*q8", "a5wr2",
                "sz:8"]


def _jacobson_as_written(p: int = 5) -> dict:
    """Jacobson's table with e_i on the right of the e- and f-relations."""
    rows = [{"i": 0, "j": 1, "c": [{"k": 0, "v": "1"}]}]
    for i in range(1, p + 1):
        rows.append({"i": 0, "j": i + 1, "c": [{"k": (i + 2 if i < p else 2), "v": "1"}]})
        if (i - 1) % p:
            rows.append({"i": 1, "j": i + 1, "c": [{"k": i + 1, "v": str(i - 1)}]})
    return {"field": {"kind": "prime-field", "p": p}, "dim": p + 2,
            "basis": ["e", "f"] + [f"e_{i}" for i in range(1, p + 1)], "table": rows}


def test_builtin_lie_examples():
    assert builtin_lie("sl2").dim == 3
    assert builtin_lie("jacobson:5").dim == 7
    assert builtin_lie("witt:7").dim == 7
    assert builtin_lie("sl2", field=GF(7)).field.characteristic == 7
    with pytest.raises(BadParams):
        builtin_lie("jacobson:6")
    with pytest.raises(BadParams):
        builtin_lie("nope")


def test_builtin_group_orders():
    assert builtin_group("alt:5").order == 60
    assert builtin_group("psl3:3").order == 5616
    assert builtin_group("sz:8").order == 29120
    assert builtin_group("dihedral:6").order == 12
    assert builtin_group("sym:3*q8").order == 48


@pytest.mark.parametrize("name", LIE_MODELS)
def test_lie_round_trip(name, tmp_path):
    L = builtin_lie(name)
    path = tmp_path / "model.json"
    export(L, path)
    M = ingest(path)
    assert M.table() == L.table() and M.names == L.names and M.field == L.field
    assert export_text(M) == path.read_text()


@pytest.mark.parametrize("name", GROUP_MODELS)
def test_group_round_trip(name, tmp_path):
    G = builtin_group(name)
    path = tmp_path / "group.json"
    export(G, path)
    H = ingest(path)
    assert H.order == G.order and H.invariant() == G.invariant()
    assert export_text(H) == path.read_text()


def test_sl2_file_equals_builtin(tmp_path):
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(lie_to_dict(builtin_lie("sl2"))))
    assert ingest(path) == builtin_lie("sl2")


def test_jacobi_violation_names_triple(tmp_path):
    path = tmp_path / "jac.json"
    path.write_text(json.dumps(_jacobson_as_written()))
    with pytest.raises(ValidationError) as exc:
        ingest(path)
    i, j, k = exc.value.triple
    assert 0 <= i < j < k < 7
    assert f"({i}, {j}, {k})" in str(exc.value)


def test_group_file(tmp_path):
    path = tmp_path / "s4.json"
    path.write_text(json.dumps({"representation": "permutation", "degree": 4,
                                "generators": ["(1 2)", "(1 2 3 4)"]}))
    assert ingest(path).order == 24


@pytest.mark.parametrize("data, where", [
    ({"representation": "permutation", "generators": "(1 2)"}, "$.generators"),
    ({"representation": "permutation", "degree": 3, "generators": ["(1 5)"]}, "$.generators[0]"),
    ({"representation": "matrix", "generators": []}, "$.field"),
    ({"field": {"kind": "rationals"}, "dim": 2, "basis": ["a"], "table": []}, "$.basis"),
    ({"field": {"kind": "rationals"}, "dim": 2, "basis": ["a", "b"],
      "table": [{"i": 1, "j": 0, "c": []}]}, "$.table[0]"),
    ({"something": 1}, "$"),
])
def test_bad_files_report_location(data, where):
    with pytest.raises((SchemaError, ValidationError)) as exc:
        from_dict(data)
    assert str(exc.value).startswith(where)


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        ingest(path)
