import json
import subprocess
import sys

import pytest

from hopf2 import bundle as bd
from hopf2 import cli


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr().out


def _drop_timing(payload):
    return {k: v for k, v in payload.items() if k != "timing"}


def test_gen_and_check_quasigroup(tmp_path, capsys):
    path = tmp_path / "g3.json"
    assert run(capsys, "gen", "cayley", 3, "--out", path)[0] == cli.EXIT_OK
    code, out = run(capsys, "check", "quasigroup", path, "--json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["nucleus"] == ["e[a=000,i=0]", "e[a=000,i=1]"]
    assert payload["associative"] is False


def test_hopf2_round_trip_matches_in_memory_report(tmp_path, capsys, bundles):
    path = tmp_path / "h.json"
    assert run(capsys, "gen", "hopf2", 1, "--out", path)[0] == cli.EXIT_OK
    code, out = run(capsys, "check", "hopf2", path, "--json")
    assert code == cli.EXIT_OK
    _, direct, _ = cli.verify_bundle(bundles(1))
    assert _drop_timing(json.loads(out)) == _drop_timing(json.loads(json.dumps(direct)))


def test_check_hopf2_is_json(tmp_path, capsys):
    path = tmp_path / "h.json"
    run(capsys, "build-hopf2", "--n", 2, "--out", path)
    code, out = run(capsys, "check-hopf2", path)
    payload = json.loads(out)
    assert code == cli.EXIT_OK
    assert payload["strict"] is True
    assert all(payload[f"axiom_{k}"] == "pass" for k in bd.AXIOM_GROUPS)


@pytest.mark.parametrize("kind", ["hopf", "pair", "algebroid"])
def test_gen_check_other_kinds(tmp_path, capsys, kind):
    path = tmp_path / f"{kind}.json"
    assert run(capsys, "gen", kind, 2, "--out", path)[0] == cli.EXIT_OK
    assert run(capsys, "check", kind, path)[0] == cli.EXIT_OK


def test_two_group_from_quaternions(tmp_path, capsys):
    path = tmp_path / "x.json"
    assert run(capsys, "gen", "two-group", 2, "--out", path)[0] == cli.EXIT_OK
    assert run(capsys, "check", "two-group", path)[0] == cli.EXIT_OK


def test_two_group_of_octonion_loop_is_refused(capsys):
    assert run(capsys, "gen", "two-group", 3)[0] == cli.EXIT_FAIL


def test_quotient_command(tmp_path, capsys):
    path = tmp_path / "g3.json"
    run(capsys, "gen", "cayley", 3, "--out", path)
    code, out = run(capsys, "quotient", path, "--json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert (payload["nucleus_hopf_dim"], payload["ideal_dim"]) == (2, 14)
    assert payload["quotient"]["dim"] == 2


def test_pair_by_n(capsys):
    assert run(capsys, "pair", "--n", 3)[0] == cli.EXIT_OK


def test_size_limits_exit_2(capsys):
    assert run(capsys, "gen", "hopf2", 9)[0] == cli.EXIT_LIMIT
    assert run(capsys, "gen", "cayley", 5)[0] == cli.EXIT_LIMIT
    assert run(capsys, "report-all", 4)[0] == cli.EXIT_LIMIT


def test_malformed_input_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", "quasigroup", bad)[0] == cli.EXIT_PARSE
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"kind": "hopf2"}))
    assert run(capsys, "check", "quasigroup", wrong)[0] == cli.EXIT_PARSE


def test_invalid_latin_square_fails_check(tmp_path, capsys):
    path = tmp_path / "q.json"
    run(capsys, "gen", "cayley", 3, "--out", path)
    doc = json.loads(path.read_text())
    doc["table"][1][2] = doc["table"][1][3]
    path.write_text(json.dumps(doc))
    assert run(capsys, "check", "quasigroup", path)[0] == cli.EXIT_FAIL


def test_missing_file_exit_1(tmp_path, capsys):
    assert run(capsys, "check", "hopf", tmp_path / "nope.json")[0] == cli.EXIT_FAIL


def test_report_all_one(capsys):
    code, out = run(capsys, "report-all", 1, "--json")
    assert code == cli.EXIT_OK
    results = json.loads(out)["results"]
    assert all(r["pass"] for r in results)


def test_report_all_jobs_deterministic(capsys):
    strip = lambda rs: [(r["criterion"], r["n"], r["pass"], json.dumps(r["detail"], sort_keys=True))
                        for r in rs]
    _, serial = run(capsys, "report-all", 1, "--json")
    _, parallel = run(capsys, "report-all", 1, "--json", "--jobs", 2)
    assert strip(json.loads(serial)["results"]) == strip(json.loads(parallel)["results"])


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hopf2", "gen", "quasigroup", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["kind"] == "quasigroup"


def test_check_hopf2_on_g3_bundle(tmp_path, capsys):
    path = tmp_path / "h3.json"
    assert run(capsys, "gen", "hopf2", 3, "--out", path)[0] == cli.EXIT_OK
    code, out = run(capsys, "check", "hopf2", path, "--json")
    assert code == cli.EXIT_OK
    assert json.loads(out)["strict"] is False
