import json

import pytest

from dgagroups.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, SCHEMA, main
from dgagroups.formats import format_gtab
from dgagroups.groups import cyclic, direct_product, quaternion


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path, groups):
    (tmp_path / "k3.edges").write_text("a b\nb c\nc a\n")
    (tmp_path / "dup.edges").write_text("a b\nb a\na b\nb c\n")
    (tmp_path / "p3.edges").write_text("a b\nb c\n")
    (tmp_path / "split.edges").write_text("a b\nc d\n")
    (tmp_path / "empty.edges").write_text("# nothing\n")
    for name in ("Z4", "Z2xZ2", "S3", "Z6"):
        (tmp_path / f"{name}.gtab").write_text(format_gtab(groups[name]))
    (tmp_path / "big.gtab").write_text(format_gtab(direct_product(quaternion(), cyclic(2))))
    return tmp_path


def test_encode_and_verify(capsys, files):
    code, rep = run(capsys, "encode", str(files / "k3.edges"), str(files / "k3.dga"))
    assert code == EXIT_OK and rep["result"]["generators"] == 12
    assert rep["schema"] == SCHEMA and rep["status"] == "pass"
    assert set(rep["config"]) >= {"seed", "nmax", "aut_cap", "iso_cap", "rigidity_cap"}
    code, rep = run(capsys, "verify", str(files / "k3.dga"))
    assert code == EXIT_OK and all(e["status"] == "pass" for e in rep["entries"])


def test_encode_errors_and_dedup(capsys, files):
    code, rep = run(capsys, "encode", str(files / "empty.edges"), str(files / "x.dga"))
    assert code == EXIT_INPUT and rep["error"]["kind"] == "parse"
    code, rep = run(capsys, "encode", str(files / "dup.edges"), str(files / "dup.dga"))
    assert code == EXIT_OK and rep["result"]["edges"] == 2
    code, rep = run(capsys, "encode", str(files / "split.edges"), str(files / "split.dga"))
    assert code == EXIT_OK and rep["result"]["warnings"] and not rep["result"]["connected"]
    code, rep = run(capsys, "encode", str(files / "missing.edges"), str(files / "x.dga"))
    assert code == EXIT_INPUT


def test_verify_failures(capsys, files):
    run(capsys, "encode", str(files / "k3.edges"), str(files / "k3.dga"))
    text = (files / "k3.dga").read_text()
    (files / "bad.dga").write_text(text.replace(" + x1^6 y2 y3", ""))
    code, rep = run(capsys, "verify", str(files / "bad.dga"))
    assert code == EXIT_FAIL
    bad = [e for e in rep["entries"] if e["status"] == "fail"]
    assert bad[0]["name"] == "d^2(z)" and bad[0]["residual"] != "0"
    (files / "ugly.dga").write_text(text.replace("d y1 = x1^3 x2", "d y1 = x1^3 ^ x2"))
    code, rep = run(capsys, "verify", str(files / "ugly.dga"))
    assert code == EXIT_INPUT


def test_distinguish(capsys, files):
    code, rep = run(capsys, "distinguish", str(files / "Z4.gtab"), str(files / "Z2xZ2.gtab"), "--full")
    assert code == EXIT_OK
    assert rep["result"]["verdict"] == "non-isomorphic" and rep["result"]["agreement"] is True
    code, rep = run(capsys, "distinguish", str(files / "S3.gtab"), str(files / "S3.gtab"))
    assert code == EXIT_OK and rep["result"]["verdict"] == "isomorphic"
    code, rep = run(capsys, "distinguish", str(files / "Z4.gtab"), str(files / "Z6.gtab"), "--oracle-only")
    assert code == EXIT_OK and rep["result"]["oracle"] == "non-isomorphic"


def test_distinguish_cap(capsys, files):
    code, rep = run(capsys, "distinguish", str(files / "big.gtab"), str(files / "big.gtab"))
    assert code == EXIT_CAP and rep["error"]["stage"] == "solve_rigidity"


def test_distinguish_invalid_table(capsys, files):
    (files / "bad.gtab").write_text("2\n0 1\n1 1\n")
    code, rep = run(capsys, "distinguish", str(files / "bad.gtab"), str(files / "Z4.gtab"))
    assert code == EXIT_INPUT


def test_deterministic_output(capsys, files):
    argv = ["distinguish", str(files / "Z4.gtab"), str(files / "Z2xZ2.gtab"), "--no-timing", "--seed", "3"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert json.loads(first)["config"]["seed"] == 3


def test_graph_aut_lift_rigidity(capsys, files):
    code, rep = run(capsys, "graph-aut", str(files / "k3.edges"))
    assert code == EXIT_OK and rep["result"]["count"] == 6
    code, rep = run(capsys, "lift", str(files / "k3.edges"), "a=b", "b=c", "c=a")
    assert code == EXIT_OK and rep["result"]["verified"]
    code, rep = run(capsys, "lift", str(files / "p3.edges"), "a=b", "b=a")
    assert code == EXIT_FAIL and rep["entries"][0]["name"] == "commutes(zv:a)"
    code, rep = run(capsys, "lift", str(files / "p3.edges"), "a=q")
    assert code == EXIT_INPUT
    code, rep = run(capsys, "rigidity", str(files / "p3.edges"))
    assert code == EXIT_OK and rep["result"]["solution_count"] == 2


def test_realize(capsys, files):
    code, rep = run(capsys, "realize", str(files / "Z4.gtab"), "--out", str(files / "z4.edges"))
    assert code == EXIT_OK and rep["result"]["vertices"] == 136
    assert (files / "z4.edges").read_text().startswith("vertex g0\n")


def test_selftest(capsys):
    code, rep = run(capsys, "selftest", "--samples", "50", "--seed", "5")
    assert code == EXIT_OK and rep["status"] == "pass"


def test_bad_arguments(capsys):
    assert main(["frobnicate"]) == EXIT_INPUT
    capsys.readouterr()
