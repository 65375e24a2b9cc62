import json
import subprocess
import sys

import pytest

from permfix import cli
from permfix.audit import AuditReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_enumerate_l25(capsys):
    code, doc = run_json(capsys, "enumerate", "--group", "L2(5)", "--k", "2")
    assert code == cli.EXIT_OK
    assert doc["command"] == "enumerate" and doc["parameters"] == {"k": 2}
    assert [(r["stabilizer_order"], r["degree"]) for r in doc["results"]] == \
        [(2, 30), (3, 20), (5, 12), (6, 10), (10, 6), (12, 5)]
    assert set(doc) == {"engine", "seed", "command", "subject", "parameters", "results"}


def test_json_is_byte_identical(capsys):
    a = run(capsys, "enumerate", "--group", "L2(7)", "--k", "2", "--json")[1]
    b = run(capsys, "enumerate", "--group", "L2(7)", "--k", "2", "--json", "--threads", "1")[1]
    assert a == b


def test_human_output(capsys):
    code, out, _ = run(capsys, "enumerate", "--group", "C6", "--k", "2")
    assert code == 0 and "no actions" in out
    code, out, _ = run(capsys, "fixity", "--group", "S4")
    assert code == 0 and "k = 2" in out


def test_fixity_coset(capsys):
    code, doc = run_json(capsys, "fixity", "--group", "L2(9)", "--stab-order", "5")
    assert code == 0
    assert doc["parameters"]["degree"] == 72 and doc["results"]["k"] == 2


def test_fixity_stab_index(capsys):
    code, doc = run_json(capsys, "fixity", "--group", "L2(7)", "--stab-index", "2")
    assert code == 0 and doc["parameters"]["stabilizer_order"] == 3


def test_kernel_exit(capsys):
    code, doc = run_json(capsys, "fixity", "--group", "S4", "--stab-order", "12")
    assert code == cli.EXIT_KERNEL and doc["kernel_order"] == 12


def test_resource_exit(capsys):
    code, doc = run_json(capsys, "enumerate", "--group", "L3(4)", "--k", "2")
    assert code == cli.EXIT_RESOURCE and "extended" in doc["error"]


@pytest.mark.parametrize("argv", [
    ("enumerate", "--group", "bogus", "--k", "2"),
    ("fixity", "--group", "S4", "--stab-order", "5"),
    ("fixity", "--group", "S4", "--stab-index", "99"),
    ("audit", "--group", "S4", "--lemma", "nope"),
    ("fixity", "--group", "S4", "--action", "weird"),
])
def test_input_exit(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == cli.EXIT_INPUT and doc["exit_code"] == 3


def test_precondition_exit(capsys):
    code, _ = run_json(capsys, "audit", "--group", "S4", "--lemma", "l216")
    assert code == cli.EXIT_PRECONDITION
    code, _ = run_json(capsys, "audit", "--group", "D8", "--lemma", "centre")
    assert code == cli.EXIT_PRECONDITION


def test_audit_pass(capsys):
    code, doc = run_json(capsys, "audit", "--group", "g96_70", "--lemma", "l216", "--stab-order", "3")
    assert code == 0 and all(c["status"] != "fail" for c in doc["results"]["checks"])


def test_audit_fail_exit(capsys, monkeypatch):
    def failing(A, lemma):
        r = AuditReport("x", lemma, [])
        r.add("always false", False)
        return r
    monkeypatch.setattr(cli, "run_audit", failing)
    code, out, _ = run(capsys, "audit", "--group", "S4", "--lemma", "normaliser")
    assert code == cli.EXIT_AUDIT and "fail" in out


def test_tom_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "tom", "--group", "L2(7)", "--json")
    assert code == 0
    p = tmp_path / "l27.tom.json"
    p.write_text(out)
    _, direct = run_json(capsys, "enumerate", "--group", "L2(7)", "--k", "2")
    _, ingested = run_json(capsys, "enumerate", "--group", str(p), "--k", "2")
    assert ingested["results"] == direct["results"]


def test_malformed_tom_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"classes": [{"order": 2, "class_size": 1}], "marks": [[1]]}')
    code, _ = run_json(capsys, "enumerate", "--group", str(p), "--k", "2")
    assert code == cli.EXIT_INPUT
    p.write_text("{oops")
    code, _ = run_json(capsys, "enumerate", "--group", str(p), "--k", "2")
    assert code == cli.EXIT_INPUT


def test_group_file(capsys, tmp_path):
    p = tmp_path / "s4.json"
    p.write_text(json.dumps({"degree": 4, "generators": [[1, 2, 3, 0], [1, 0, 2, 3]]}))
    code, doc = run_json(capsys, "fixity", "--group", str(p))
    assert code == 0 and doc["results"]["k"] == 2


def test_seed_recorded(capsys):
    _, doc = run_json(capsys, "fixity", "--group", "S4", "--seed", "7")
    assert doc["seed"] == 7


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "permfix", "enumerate", "--group", "L2(5)", "--k", "2", "--json"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    assert len(json.loads(r.stdout)["results"]) == 6
