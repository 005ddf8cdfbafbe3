import io
import json

import pytest

from dtfour.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_partition_count():
    assert run(["partitions", "--dim", "4", "--size", "5", "--count"]) == (0, "59\n")
    assert run(["partitions", "--dim", "3", "--size", "4"]) == (0, "13\n")


def test_partition_list_json():
    code, text = run(["partitions", "--dim", "4", "--size", "2", "--list", "--json"])
    doc = json.loads(text)
    assert code == 0 and doc["count"] == 4 and len(doc["partitions"]) == 4
    assert [[[2]]] in doc["partitions"]


def test_zc4_both_json():
    code, text = run(["--jobs", "1", "zc4", "--nmax", "2", "--s2", "2", "--s3", "3", "--m", "1",
                      "--mode", "both", "--json"])
    doc = json.loads(text)
    assert code == 0 and doc["match"] is True
    assert doc["coefficient_match"] == [True, True, True]
    assert doc["sign_rule"]["identifier"] in doc["sign_rule"]["survivors"]
    # re-serializing parsed output reproduces it byte for byte
    assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == text


def test_zc4_human_and_json_agree():
    base = ["--jobs", "1", "zc4", "--nmax", "3", "--s2", "13/47", "--s3", "29/61", "--m", "31/53"]
    code_h, human = run(base)
    code_j, text = run(base + ["--json"])
    assert code_h == code_j == 0
    assert "match: true" in human and json.loads(text)["match"] is True


def test_zc4_no_insertion_signs():
    base = ["--jobs", "1", "zc4", "--nmax", "2", "--s2", "13/47", "--s3", "29/61", "--no-insertion", "--json"]
    code, text = run(base)
    assert code == 1 and json.loads(text)["coefficient_match"] == [True, False, True]
    code, text = run(base + ["--no-insertion-sign", "derived"])
    assert code == 0 and json.loads(text)["match"] is True


def test_zc4_csv():
    code, text = run(["zc4", "--nmax", "1", "--s2", "13/47", "--s3", "29/61", "--m", "31/53",
                      "--mode", "closed", "--csv"])
    lines = text.strip().splitlines()
    assert code == 0 and lines[0] == "n,coeff_num,coeff_den" and lines[1] == "0,1,1"
    assert ";" in lines[2]


def test_local_curve_split():
    code, text = run(["local-curve", "--g", "0", "--l1", "-1", "--l2", "-1", "--l3", "0", "--l", "0",
                      "--nmax", "4", "--s2", "13/47", "--s3", "29/61", "--m", "31/53",
                      "--split", "0,-1,0,0,0", "--json"])
    doc = json.loads(text)
    assert code == 0 and doc["split"]["gluing"] is True and doc["r"] == 0


def test_residue():
    code, text = run(["residue", "--nmax", "4", "--s2", "13/47", "--s3", "29/61", "--m", "2", "--json"])
    doc = json.loads(text)
    assert code == 0 and doc["match"] and doc["w_infinity_from_f_inf0"]
    assert doc["f_inf0"]["coeffs"][1] == "-2"


def test_parse_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["zc4", "--nmax", "2", "--s2", "x", "--s3", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["partitions", "--dim", "5", "--size", "2"])
    assert exc.value.code == 2


def test_abort_exits_3(capsys):
    code, _ = run(["local-curve", "--g", "0", "--l1", "-5", "--l2", "0", "--l3", "0", "--l", "0",
                   "--nmax", "2", "--s2", "13/47", "--s3", "29/61", "--m", "1"])
    assert code == 3
    diag = json.loads(capsys.readouterr().err)
    assert diag["error"] == "InvalidTopologicalData"
    # a context with a zero weight among the fixed-point characters
    code, _ = run(["--jobs", "1", "zc4", "--nmax", "3", "--s2", "1", "--s3", "1", "--m", "1"])
    assert code == 3
    code, _ = run(["zc4", "--nmax", "1", "--s2", "2", "--s3", "3", "--strict"])
    assert code == 3


def test_verify_exit_codes():
    code, text = run(["--jobs", "1", "verify", "--suite", "all", "--nmax", "4", "--trials", "3", "--seed", "1"])
    assert code == 0 and text.strip().endswith("all: PASS")
    code, text = run(["--jobs", "1", "verify", "--suite", "c4", "--nmax", "3", "--trials", "2", "--seed", "1",
                      "--perturb", "sign", "--json"])
    assert code == 1 and json.loads(text)["verdict"] == "FAIL"
    code, text = run(["verify", "--suite", "local-curve", "--nmax", "2", "--trials", "2", "--junit"])
    assert code == 0 and text.startswith("<testsuite")
