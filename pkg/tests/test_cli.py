import json
import subprocess
import sys

import pytest

from nilsym import characteristic_sequence, decide_symplectic, nilindex
from nilsym.catalog import list_entries
from nilsym.cli import main
from nilsym.fileformat import parse_algebra


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def emit(capsys, tmp_path, name):
    rc, out, _ = run(capsys, "catalog", "emit", name)
    assert rc == 0
    path = tmp_path / f"{name}.txt"
    path.write_text(out)
    return str(path)


def strip_timings(text):
    doc = json.loads(text)
    doc.pop("timings")
    return doc


class TestCommands:
    def test_symplectic_k8(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "k8")
        rc, out, _ = run(capsys, "symplectic", f, "--json")
        doc = json.loads(out)
        assert rc == 0
        assert doc["decision"] == "not_symplectic"
        assert doc["certificate"] == "pfaffian-identically-zero"
        assert doc["closed_space_dim"] == 15
        assert "witness" not in doc

    def test_symplectic_h82_rigid(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "h82_rigid")
        rc, out, _ = run(capsys, "symplectic", f, "--json")
        doc = json.loads(out)
        assert rc == 0 and doc["decision"] == "symplectic"
        assert doc["certificate"] == "witness-verified"
        assert all(isinstance(c, str) for _, _, c in doc["witness"])

    def test_report_keys(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "g32")
        _, out, _ = run(capsys, "symplectic", f, "--json")
        doc = json.loads(out)
        for key in ("tool_version", "command", "input_digest", "algebra", "timings"):
            assert key in doc

    def test_cartan_class(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "k8")
        rc, out, _ = run(capsys, "cartan-class", f, "--form", "3:1")
        assert rc == 0 and out.strip() == "7"

    def test_zero_form_is_usage_error(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "k8")
        rc, _, _ = run(capsys, "cartan-class", f, "--form", "3:0")
        assert rc == 1

    def test_check(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "g24")
        rc, out, _ = run(capsys, "check", f)
        assert rc == 0 and out.startswith("ok")

    def test_info(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "g32")
        rc, out, _ = run(capsys, "info", f, "--json", "--seed", "3")
        doc = json.loads(out)
        assert doc["charseq"] == [2, 2, 2, 1, 1]
        assert doc["lower_central_dims"] == [8, 3, 0]
        assert doc["generators"] == 5

    def test_cohomology(self, capsys, tmp_path):
        p = tmp_path / "h3.txt"
        p.write_text("dim 3\n[1,2] = 3:1\n")
        rc, out, _ = run(capsys, "cohomology", str(p))
        assert out.split() == ["1", "2", "2", "1"]

    def test_contract(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "filiform6")
        rc, out, _ = run(capsys, "contract", f, "--weights", "1,1,1,1,1,2", "--form", "1-6:1,2-5:2,3-4:-1", "--json")
        doc = json.loads(out)
        assert rc == 0
        assert doc["limit"].endswith("[1,5] = 6:1\n[2,4] = 6:1\n")
        assert doc["transport"]["transports"] is False

    def test_contract_no_limit(self, capsys, tmp_path):
        p = tmp_path / "h3.txt"
        p.write_text("dim 3\n[1,2] = 3:1\n")
        rc, _, err = run(capsys, "contract", str(p), "--weights", "0,0,1")
        assert rc == 1 and "diverge" in err

    def test_deform(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "g32")
        good = tmp_path / "good.txt"
        good.write_text("dim 8\n[2,4] = 8:1\n[2,6] = 5:1\n")
        rc, out, _ = run(capsys, "deform", f, "--cocycle", str(good), "--t", "1")
        assert rc == 0 and "[2,4] = 8:1" in out
        bad = tmp_path / "bad.txt"
        bad.write_text("dim 8\n[2,4] = 2:1\n")
        rc, out, _ = run(capsys, "deform", f, "--cocycle", str(bad), "--t", "1", "--json")
        assert rc == 2 and json.loads(out)["t1_ok"] is False

    def test_double_extend(self, capsys, tmp_path):
        a2 = tmp_path / "a2.txt"
        a2.write_text("dim 2\n")
        D = tmp_path / "D.txt"
        D.write_text("0 0\n0 0\n")
        rc, out, _ = run(capsys, "double-extend", str(a2), "--form", "1-2:1", "--derivation", str(D), "--json")
        doc = json.loads(out)
        assert rc == 0 and doc["result"].startswith("dim 4")
        assert doc["form"] == [[1, 2, "1"], [3, 4, "1"]]

    def test_catalog_list_and_show(self, capsys):
        rc, out, _ = run(capsys, "catalog", "list")
        assert rc == 0 and len(out.splitlines()) == len(list_entries())
        rc, out, _ = run(capsys, "catalog", "show", "n6_20_1", "--json")
        assert json.loads(out)["field_note"] == "real-form"

    def test_catalog_unknown(self, capsys):
        rc, _, _ = run(capsys, "catalog", "show", "nope")
        assert rc == 1


class TestExitCodes:
    def test_unknown_command(self, capsys):
        rc, _, err = run(capsys, "bogus")
        assert rc == 1 and "usage" in err

    def test_unknown_flag(self, capsys, tmp_path):
        f = emit(capsys, tmp_path, "g32")
        assert run(capsys, "symplectic", f, "--nope")[0] == 1

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "check", str(tmp_path / "missing"))[0] == 1

    def test_parse_error(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("dim 3\n[2,1] = 3:1\n")
        rc, _, err = run(capsys, "check", str(p))
        assert rc == 2 and "line 2" in err

    def test_jacobi_error(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("dim 3\n[1,2] = 1:1\n[1,3] = 3:1\n")
        assert run(capsys, "symplectic", str(p))[0] == 2

    def test_no_command(self, capsys):
        assert run(capsys)[0] == 1


class TestInvariants:
    @pytest.mark.parametrize("cmd", [["symplectic"], ["info"], ["cohomology"], ["cartan-class", "--form", "1:1"]])
    def test_deterministic(self, capsys, tmp_path, cmd):
        f = emit(capsys, tmp_path, "h82_rigid")
        argv = [cmd[0], f, *cmd[1:], "--json"]
        a = run(capsys, *argv)[1]
        b = run(capsys, *argv)[1]
        assert strip_timings(a) == strip_timings(b)

    def test_seed_env(self, capsys, tmp_path, monkeypatch):
        f = emit(capsys, tmp_path, "g32")
        monkeypatch.setenv("NILSYM_SEED", "5")
        doc = json.loads(run(capsys, "symplectic", f, "--json")[1])
        assert doc["seed"] == 5

    @pytest.mark.parametrize("entry", list_entries(), ids=lambda e: e.name)
    def test_round_trip(self, capsys, tmp_path, entry):
        path = emit(capsys, tmp_path, entry.name)
        L = parse_algebra(open(path).read())
        assert L == entry.algebra.renamed(entry.name)
        x = entry.expected
        if x.charseq is not None:
            assert characteristic_sequence(L) == x.charseq
        assert nilindex(L) == x.nilindex
        if x.symplectic != "unknown":
            assert decide_symplectic(L).decision == (x.symplectic == "yes")

    def test_console_script(self, tmp_path):
        out = subprocess.run([sys.executable, "-m", "nilsym.cli", "catalog", "emit", "k8"],
                             capture_output=True, text=True, check=True)
        assert out.stdout.startswith("algebra k8\ndim 8\n")
