import json

import pytest

from biliaison.cli import EXIT_NOT_CURVE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, main
from biliaison.idealfile import ParseError, bundled, bundled_names, parse_ideal_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None


def test_ideal_file_format():
    f = parse_ideal_text("# comment\nX*Z  # trailing\n\nY*T\nfactors: X^2*Y = (X)^2 (Y)\n")
    assert [str(g) for g in f.generators] == ["X*Z", "Y*T"]
    (facs,) = f.factorizations.values()
    assert [(str(h), m) for h, m in facs] == [("X", 2), ("Y", 1)]
    with pytest.raises(ParseError):
        parse_ideal_text("X\nfactors: X^2 = (X)")
    with pytest.raises(ParseError):
        parse_ideal_text("# nothing\n")


def test_bundled_files():
    assert {"line", "skew_lines", "ci22", "twisted_cubic", "raised", "plane"} <= set(bundled_names())
    assert len(bundled("skew_lines").generators) == 4


def test_curve_info_skew(capsys):
    code, r = run_json(capsys, "curve-info", "skew_lines")
    assert code == EXIT_OK
    assert (r["degree"], r["genus"], r["s0"], r["e"], r["rao_dims"], r["alpha"]) == (2, -1, 2, -2, {"0": 1}, -2)


def test_curve_info_ci22(capsys):
    code, r = run_json(capsys, "curve-info", "ci22")
    assert (r["degree"], r["genus"], r["rao_dims"], r["alpha"]) == (4, 1, {}, 0)


def test_curve_info_from_path(capsys, tmp_path):
    path = tmp_path / "c.ideal"
    path.write_text("X\nY\n")
    code, r = run_json(capsys, "curve-info", str(path))
    assert code == EXIT_OK and r["degree"] == 1


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "curve-info", "plane")[0] == EXIT_NOT_CURVE
    bad = tmp_path / "bad.ideal"
    bad.write_text("X*\n")
    assert run(capsys, "gb", str(bad))[0] == EXIT_PARSE
    assert run(capsys, "gb", "skew_lines", "--prime", "32001")[0] == EXIT_PRECONDITION
    assert run(capsys, "gb", "no_such_file")[0] == EXIT_PRECONDITION
    assert run(capsys, "biliaison", "skew_lines", "--surface", "X^2+Y^2", "--mult", "X")[0] == EXIT_PRECONDITION
    assert run(capsys, "koszul", "--type", "1,x,2,2")[0] == EXIT_PARSE
    assert run(capsys, "koszul", "--type", "2,1,1,1")[0] == EXIT_PRECONDITION


def test_biliaison_example(capsys):
    code, r = run_json(capsys, "biliaison", "skew_lines", "--surface", "X*Z-Y*T",
                       "--mult", "X")
    assert code == EXIT_OK
    assert r["curve"]["degree"] == 4 and r["curve"]["rao_dims"] == {"1": 1}
    assert r["checks"] == {"degree": True, "rao_shift": True}


def test_descending_biliaison(capsys):
    code, r = run_json(capsys, "biliaison", "raised", "--surface", "X*Z-Y*T", "--height", "-1")
    assert r["curve"]["rao_dims"] == {"0": 1}


def test_obstruct_raised(capsys):
    code, r = run_json(capsys, "obstruct", "raised", "--h", "-1", "--surface", "X*Z-Y*T")
    assert code == EXIT_OK
    (entry,) = r["entries"]
    assert entry["verdict"] == "injective_exists" and "witness" in entry
    code, r = run_json(capsys, "obstruct", "raised", "--h", "-1", "--surface", "X*Z-Y*T", "--no-witness")
    assert "witness" not in r["entries"][0]


def test_link(capsys):
    code, r = run_json(capsys, "link", "skew_lines", "--f", "X*Z-Y*T", "--g", "X^2*Z+Y^2*T+X*Y*T")
    assert r["degrees"] == [2, 3] and r["curve"]["degree"] == 4 and all(r["checks"].values())


def test_koszul_and_verify_min(capsys):
    code, r = run_json(capsys, "koszul", "--type", "1,1,1,2", "--seed", "4")
    assert r["curve"]["s0"] == r["predicted"]["s0"] and r["curve"]["e"] == r["predicted"]["e"]
    code, r = run_json(capsys, "verify-min", "--koszul", "1,1,2,2")
    assert code == EXIT_OK and r["verdict"] == "PASS"
    code, r = run_json(capsys, "verify-min", "twisted_cubic")
    assert code == EXIT_PRECONDITION


def test_gb_resolve_hilbert(capsys):
    _, r = run_json(capsys, "gb", "twisted_cubic")
    assert len(r["groebner"]) == 3
    _, r = run_json(capsys, "resolve", "twisted_cubic")
    assert r["ranks"] == [1, 3, 2] and r["projective_dimension"] == 2
    _, r = run_json(capsys, "hilbert", "twisted_cubic", "--window", "0:3")
    assert r["hilbert_function"] == {"0": 1, "1": 4, "2": 7, "3": 10}
    assert r["hilbert_polynomial"] == "3*n + 1"


def test_json_is_byte_deterministic(capsys):
    a = run(capsys, "obstruct", "raised", "--json", "--seed", "3")[1]
    b = run(capsys, "obstruct", "raised", "--json", "--seed", "3")[1]
    assert a == b


def test_text_and_json_same_numbers(capsys):
    _, text, _ = run(capsys, "curve-info", "skew_lines", "--window", "0:2")
    _, r = run_json(capsys, "curve-info", "skew_lines", "--window", "0:2")
    assert "degree: 2" in text and "genus: -1" in text and "alpha: -2" in text
    assert "h1_structure: {0: 0, 1: 0, 2: 0}" in text
    assert r["h1_structure"] == {"0": 0, "1": 0, "2": 0}
