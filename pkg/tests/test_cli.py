import io
import json
import subprocess
import sys

import pytest

from descartes_atlas.atlas import NONREALIZABLE, default_atlas
from descartes_atlas.cli import EXIT_DOMAIN, EXIT_OK, EXIT_VIOLATION, _scalar, run
from descartes_atlas.library import C, g1


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--output", "json")
    return code, (json.loads(out) if out else None), err


def test_status_example():
    code, data, _ = call_json("status", "--runs", "1,3,1", "--pos", "0", "--neg", "2")
    assert code == EXIT_OK
    assert data["schema"] == "v1" and data["status"] == NONREALIZABLE and data["citation"]


def test_status_by_raw_pattern():
    code, data, _ = call_json("status", "--pattern", "+---+", "--pos", "0", "--neg", "2")
    assert code == EXIT_OK and data["status"] == NONREALIZABLE


def test_classify_g1():
    code, data, _ = call_json("classify", "--poly", json.dumps(g1().to_json()))
    assert code == EXIT_OK
    assert (data["pos"], data["neg"], data["pairs"]) == (0, 3, 3)
    assert data["runs"] == [1, 7, 2]


def test_couples_degree_one():
    code, data, _ = call_json("couples", "--degree", "1")
    assert code == EXIT_OK and data["count"] == 2
    code, data, _ = call_json("couples", "--degree", "4", "--by-orbit")
    assert code == EXIT_OK and all(o["size"] in (2, 4) for o in data["orbits"])


def test_canonical():
    code, data, _ = call_json("canonical", "--pattern", "+--+-+++-")
    assert code == EXIT_OK
    assert data["canonical_order"] == data["moduli_order"] == "PNNPPPNP"


def test_realize_paths():
    code, data, _ = call_json("realize", "--runs", "1,7,2", "--pos", "0", "--neg", "3")
    assert code == EXIT_OK and data["found"] and data["classification"]["neg"] == 3
    code, data, _ = call_json("realize", "--runs", "2,7,1", "--pos", "0", "--neg", "3")
    assert code == EXIT_OK and data["found"]
    code, data, _ = call_json("realize", "--runs", "1,3,1", "--pos", "0", "--neg", "2")
    assert code == EXIT_DOMAIN and data["found"] is False


@pytest.mark.parametrize("argv", [
    ("status", "--runs", "1,3,1", "--pos", "1", "--neg", "2"),
    ("status", "--runs", "1,x"),
    ("classify", "--poly", "[1.5, 2]"),
    ("classify", "--poly", "not json"),
    ("couples", "--degree", "2", "--bogus"),
    ("probe", "theorem1", "--d", "9", "--n", "3", "--q", "5", "--samples", "1"),
    ("probe", "hfamily", "--family", "4", "--samples", "1"),
    ("probe", "identities", "--which", "Nope"),
    ("frobnicate",),
])
def test_domain_errors_exit_one(argv):
    code, out, err = call(*argv)
    assert code == EXIT_DOMAIN and err.startswith("error:") and out == ""


def test_probe_commands_succeed_and_are_deterministic():
    for argv in (("probe", "theorem1", "--samples", "20", "--seed", "3"),
                 ("probe", "hfamily", "--family", "2,2,1", "--samples", "30"),
                 ("probe", "identities", "--which", "PsiAllOnes"),
                 ("probe", "search", "--runs", "1,3,1", "--pos", "0", "--neg", "0", "--budget", "3000")):
        a, b = call(*argv, "--output", "json"), call(*argv, "--output", "json")
        assert a[0] == EXIT_OK and a == b


def test_probe_search_nonrealizable_not_found():
    code, data, _ = call_json("probe", "search", "--runs", "1,3,1", "--pos", "0", "--neg", "2", "--budget", "3000")
    assert code == EXIT_OK and data["found"] is False


def test_table_and_json_carry_the_same_data():
    argv = ("status", "--runs", "1,4,4,1", "--pos", "1", "--neg", "6")
    _, data, _ = call_json(*argv)
    _, table, _ = call(*argv)
    lines = table.splitlines()
    for k, v in data.items():
        assert any(line.split(None, 1) == [k, _scalar(v)] for line in lines), k


def test_atlas_check_fault_injection(tmp_path, monkeypatch):
    A = default_atlas()
    doc = A.to_json()
    code, data, _ = call_json("atlas", "check", "--no-replay")
    assert code == EXIT_OK and data["ok"]
    target = C([1, 5, 1], 0, 2).canonical()
    hit = [row for row in doc["entries"] if C(row["runs"], row["pos"], row["neg"]) == target]
    assert len(hit) == 1
    hit[0]["status"] = "Realizable"
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv("DESCARTES_ATLAS_PATH", str(path))
    code, data, _ = call_json("atlas", "check", "--no-replay")
    assert code == EXIT_VIOLATION and len(data["violations"]) == 1


def test_atlas_dump_round_trips():
    code, data, _ = call_json("atlas", "dump")
    assert code == EXIT_OK and len(data["entries"]) == len(default_atlas().rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "descartes_atlas", "couples", "--degree", "1", "--output", "json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 2
