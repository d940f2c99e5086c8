import json

import pytest

from affcell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_kl(capsys):
    code, js, _ = run(capsys, "kl", "--n", "4", "--y", "s2", "--w", "s2*s1*s3*s2")
    assert code == 0 and js["P"] == "1 + q" and js["mu"] == 1


def test_mul_both_bases(capsys):
    code, js, _ = run(capsys, "mul", "--n", "2", "--basis", "T", "s1", "s1")
    assert code == 0 and js["json"]["basis"] == "T"
    code, js, _ = run(capsys, "mul", "--n", "2", "s1", "s1")
    assert code == 0 and len(js["json"]["terms"]) == 1


def test_star_and_orbit(capsys):
    code, js, _ = run(capsys, "star", "--n", "3", "--w", "s1", "--i", "1")
    assert code == 0 and js["star"] == [2, 3, 1] and js["length_change"] == 1
    code, js, _ = run(capsys, "orbit", "--n", "3", "--w", "s1", "--bound", "4")
    assert code == 0 and js["size"] == len(js["members"]) >= 3


def test_check_star(capsys):
    code, js, _ = run(capsys, "check-star", "--n", "3", "--u", "s1", "--v", "s1", "--i", "1", "--bound", "5")
    assert code == 0 and js["violations"] == []


def test_lattice_and_gamma(capsys):
    code, js, _ = run(capsys, "lattice", "--lambda", "2", "--x", "[[1,0]]")
    assert code == 0 and js["window"] == [4, 1] and js["length"] == 2
    code, js, _ = run(capsys, "gamma", "--lambda", "2", "--x", "[[1,0]]", "--gen", "1,1")
    assert code == 0 and len(js["pieri"]) == 2 == len(js["gamma_tilde"])


def test_schur_mul_and_idempotent(capsys):
    code, js, _ = run(capsys, "schur-mul", "--n", "2", "1|1|s1", "1|1|s1")
    assert code == 0 and js["json"]["terms"][0]["window"] == [2, 1]
    code, js, _ = run(capsys, "idempotent", "--n", "3", "--P", "s1,s2")
    assert code == 0 and js["ok"]


def test_cell_gen(capsys):
    code, js, _ = run(capsys, "cell-gen", "--lambda", "2", "--bound", "4")
    assert code == 0 and js["violations"] == []


def test_verify_single_suite(capsys):
    code, js, err = run(capsys, "verify", "--n", "2", "--suite", "lattice")
    assert code == 0 and js["reports"][0]["suite"] == "lattice"
    assert "violations" in err


def test_errors_exit_2(capsys):
    code, js, err = run(capsys, "kl", "--n", "2", "--y", "w[1,3]", "--w", "s1")
    assert code == 2 and js is None
    assert json.loads(err)["error"]
    code, _, err = run(capsys, "schur-mul", "--n", "2", "1||s0", "||s1")
    assert code == 2


def test_bad_usage_exits():
    with pytest.raises(SystemExit):
        main(["nope"])
