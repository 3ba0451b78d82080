import json

import pytest
from click.testing import CliRunner

from coiso import catalog, io
from coiso.cli import main
from coiso.errors import ParseError, ValidationError


def test_parse_scalars():
    assert io.parse_scalar(3, "x") == 3
    assert io.parse_scalar("-2/6", "x") * 3 == -1
    for bad in ("0.5", 0.5, True, "1/0", "x", None):
        with pytest.raises(ParseError):
            io.parse_scalar(bad, "x")


def test_round_trip(bundled):
    for A in bundled.values():
        doc = json.loads(io.emit_algebra(A))
        assert io.algebra_from_document(doc) == A


def test_bundled_fixtures_match_catalog(bundled):
    for name, A in bundled.items():
        assert io.parse_algebra(f"{name}.json") == A


def test_parse_errors(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    with pytest.raises(ParseError):
        io.parse_algebra(empty)
    doc = io.algebra_to_document(catalog.point3())
    doc["mu_tot"][0][3] = "0.5"
    dec = tmp_path / "dec.json"
    dec.write_text(json.dumps(doc))
    with pytest.raises(ParseError) as info:
        io.parse_algebra(dec)
    assert "mu_tot[0][3]" in str(info.value)
    broken = tmp_path / "broken.json"
    broken.write_text('{"dim_tot": 1,\n "dim_n": }')
    with pytest.raises(ParseError) as info:
        io.parse_algebra(broken)
    assert "line 2" in str(info.value)
    doc = io.algebra_to_document(catalog.point3())
    doc["mu_tot"][0][0] = 7
    bad_index = tmp_path / "idx.json"
    bad_index.write_text(json.dumps(doc))
    with pytest.raises(ParseError):
        io.parse_algebra(bad_index)


def test_validation_error(tmp_path):
    doc = io.algebra_to_document(catalog.point3())
    doc["a0_basis"] = [["1", "1"]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(ValidationError):
        io.parse_algebra(p)
    r = run("validate", str(p))
    assert r.exit_code == 1 and "IdealViolation" in r.output
    assert run("reduce", str(p)).exit_code == 2


def test_deformation_documents():
    defm = io.parse_deformation("dual-def.json")
    assert defm.order == 4 and defm.first_failure() is None
    doc = io.deformation_to_document(defm, "dual.json")
    again = io.deformation_from_document(doc, io.bundled_path("dual.json").parent)
    assert again.mu == defm.mu
    with pytest.raises(ValidationError):
        io.parse_deformation("dual-def.json", catalog.point3())


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_cli_exit_codes(tmp_path):
    assert run("validate", "point3.json").exit_code == 0
    assert run("reduce", "point3.json").exit_code == 0
    assert run("center", "upper.json").exit_code == 0
    assert run("derivations", "dual-triple.json").exit_code == 0
    r = run("deform", "check", "dual.json", "dual-def.json")
    assert r.exit_code == 0 and "MC holds to order 4" in r.output
    r = run("deform", "equiv", "dual.json", "dual-def.json", "dual-undeformed.json", "--order", "2")
    assert r.exit_code == 1
    assert run("deform", "extend", "dual.json", "dual-def.json", "--to-order", "6").exit_code == 0
    assert run("deform", "extend", "square-zero.json", "square-zero-def.json", "--to-order", "2").exit_code == 1
    assert run("dgla", "validate", "dual.json").exit_code == 0
    assert run("compare-reduction", "upper.json", "--degree", "1").exit_code == 0
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run("validate", str(empty)).exit_code == 2
    assert run("validate", str(tmp_path / "missing-file.json")).exit_code == 2


def test_cli_cohomology_json():
    r = run("--json", "cohomology", "point3.json", "--max-degree", "2")
    assert r.exit_code == 0
    rows = json.loads(r.output)["cohomology"]
    assert [row["degree"] for row in rows] == [0, 1, 2]
    assert all(set(row) == {"degree", "dim_tot", "dim_n", "dim_zero"} for row in rows)
    assert (rows[0]["dim_tot"], rows[0]["dim_n"], rows[0]["dim_zero"]) == (3, 2, 1)


def test_cli_degree_cap():
    assert run("--cap", "10", "cohomology", "generic.json", "--max-degree", "3").exit_code == 2


def test_cli_is_deterministic():
    args = ["--json", "--seed", "7", "deform", "check", "dual.json", "dual-def.json"]
    assert run(*args).output == run(*args).output
