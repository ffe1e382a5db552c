import json
import pathlib

import pytest

from cyclic_ainfty.specfile import (
    SpecFileError,
    algebra_to_json,
    load_algebra_file,
    parse_algebra,
)

SAMPLES = pathlib.Path(__file__).resolve().parent.parent / "samples"


def test_round_trip_on_bundled_samples():
    for name in ("frobenius_dga.json", "contractible.json", "dzero_frobenius.json",
                 "mixed6.json", "five_dim.json"):
        doc = json.loads((SAMPLES / name).read_text())
        inp = parse_algebra(doc)
        again = parse_algebra(algebra_to_json(inp))
        assert again.V == inp.V
        assert again.B.matrix == inp.B.matrix
        assert again.B.parity == inp.B.parity and again.B.symmetry == inp.B.symmetry
        assert again.operations == inp.operations
        assert again.hodge == inp.hodge
        assert (again.cutoff, again.require_harmonious, again.seed) == \
            (inp.cutoff, inp.require_harmonious, inp.seed)


def base_doc():
    return {
        "basis": [{"name": "a", "parity": 0}, {"name": "b", "parity": 1}],
        "differential": [["0", "1"], ["0", "0"]],
        "form": {"parity": 1, "symmetry": 1, "matrix": [["0", "1"], ["1", "0"]]},
    }


def test_parse_minimal_document():
    inp = parse_algebra(base_doc())
    assert inp.V.dim == 2
    assert inp.default_cutoff() == 2


def test_bad_scalar_names_the_field():
    doc = base_doc()
    doc["differential"][0][1] = "1/0"
    with pytest.raises(SpecFileError, match=r"differential\[0\]\[1\].*zero denominator"):
        parse_algebra(doc)


def test_bad_basis_parity():
    doc = base_doc()
    doc["basis"][1]["parity"] = 2
    with pytest.raises(SpecFileError, match=r"basis\[1\]\.parity"):
        parse_algebra(doc)


def test_duplicate_basis_names():
    doc = base_doc()
    doc["basis"][1]["name"] = "a"
    with pytest.raises(SpecFileError, match="unique"):
        parse_algebra(doc)


def test_unknown_top_level_field():
    doc = base_doc()
    doc["extra"] = 1
    with pytest.raises(SpecFileError, match="unknown fields"):
        parse_algebra(doc)


def test_operation_entry_out_of_range():
    doc = base_doc()
    doc["operations"] = [{"n": 2, "entries": [{"in": [0, 5], "out": 0, "c": "1"}]}]
    with pytest.raises(SpecFileError, match=r"operations\[0\]\.entries\[0\]\.in"):
        parse_algebra(doc)


def test_operation_parity_violation_is_reported():
    doc = base_doc()
    # shifted parities are (1, 0): an odd entry (0,0) -> out must be odd, so
    # out = 1 (shifted parity 0) violates
    doc["operations"] = [{"n": 2, "entries": [{"in": [0, 0], "out": 1, "c": "1"}]}]
    with pytest.raises(SpecFileError, match="operations"):
        parse_algebra(doc)


def test_nonsquare_differential():
    doc = base_doc()
    doc["differential"] = [["0", "1"]]
    with pytest.raises(SpecFileError, match="differential"):
        parse_algebra(doc)


def test_non_square_zero_differential_rejected():
    doc = base_doc()
    doc["differential"] = [["0", "0"], ["1", "0"]]  # d a = b, d b = 0: fine
    parse_algebra(doc)
    doc["differential"] = [["1", "0"], ["0", "0"]]  # even entry on odd map
    with pytest.raises(SpecFileError, match="differential"):
        parse_algebra(doc)


def test_options_validation():
    doc = base_doc()
    doc["options"] = {"cutoff": 1}
    with pytest.raises(SpecFileError, match=r"options\.cutoff"):
        parse_algebra(doc)
    doc["options"] = {"cutoff": 4, "require_harmonious": False, "seed": 9}
    inp = parse_algebra(doc)
    assert (inp.cutoff, inp.require_harmonious, inp.seed) == (4, False, 9)
    assert inp.default_cutoff() == 4


def test_default_cutoff_is_highest_arity_plus_one_capped():
    doc = base_doc()
    doc["operations"] = [{"n": 2, "entries": []}, {"n": 5, "entries": []}]
    assert parse_algebra(doc).default_cutoff() == 6
    doc["operations"] = [{"n": 6, "entries": []}]
    assert parse_algebra(doc).default_cutoff() == 6


def test_structure_cutoff_below_present_arity():
    doc = base_doc()
    doc["operations"] = [{"n": 3, "entries": []}]
    inp = parse_algebra(doc)
    with pytest.raises(SpecFileError, match=r"options\.cutoff"):
        inp.structure(2)


def test_load_missing_file(tmp_path):
    with pytest.raises(SpecFileError, match="cannot read"):
        load_algebra_file(str(tmp_path / "nope.json"))


def test_load_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SpecFileError, match="invalid JSON"):
        load_algebra_file(str(p))
