from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from cubicpoints import ParameterPath, fermat_cubic, hesse_cubic
from cubicpoints.cli import main
from cubicpoints.serialize import (
    canonical_dumps,
    cubic_from_obj,
    cubic_to_obj,
    path_to_obj,
    points_from_obj,
)


@pytest.fixture
def fermat_file(tmp_path):
    p = tmp_path / "fermat.json"
    p.write_text(canonical_dumps(cubic_to_obj(fermat_cubic())), encoding="utf-8")
    return str(p)


@pytest.fixture
def singular_file(tmp_path):
    p = tmp_path / "singular.json"
    p.write_text(canonical_dumps(cubic_to_obj(hesse_cubic(-3.0))), encoding="utf-8")
    return str(p)


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestSerializeRoundTrips:
    def test_cubic_json_is_byte_stable(self):
        f = fermat_cubic()
        text = canonical_dumps(cubic_to_obj(f))
        again = canonical_dumps(cubic_to_obj(cubic_from_obj(json.loads(text))))
        assert text == again

    def test_canonical_dumps_is_sorted_and_terminated(self):
        s = canonical_dumps({"b": 1, "a": [2, 3]})
        assert s.index('"a"') < s.index('"b"')
        assert s.endswith("\n")


class TestPointCommands:
    def test_inflections_json(self, capsys, fermat_file):
        rc, out, _ = run_cli(capsys, "inflections", "--curve", fermat_file)
        assert rc == 0
        obj = json.loads(out)
        pts = points_from_obj(obj)
        assert len(pts) == 9
        # output text is already in canonical form
        assert out == canonical_dumps(obj)

    def test_inflections_csv(self, capsys, fermat_file):
        rc, out, _ = run_cli(capsys, "--format", "csv", "inflections", "--curve", fermat_file)
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x_re,x_im,y_re,y_im,z_re,z_im"
        assert len(lines) == 10

    def test_type3k_counts(self, capsys, fermat_file):
        rc, out, _ = run_cli(capsys, "type3k", "--curve", fermat_file, "-k", "2")
        assert rc == 0
        assert len(json.loads(out)["xyz"]) == 27

    def test_torsion_counts(self, capsys, fermat_file):
        rc, out, _ = run_cli(capsys, "torsion", "--curve", fermat_file, "-m", "2")
        assert rc == 0
        assert len(json.loads(out)["xyz"]) == 4

    def test_identity_index_is_validated(self, capsys, fermat_file):
        rc, _, err = run_cli(
            capsys, "type3k", "--curve", fermat_file, "-k", "1", "--identity-index", "99"
        )
        assert rc == 2
        assert "identity index" in err


class TestArithmeticCommands:
    def test_counts(self, capsys):
        rc, out, _ = run_cli(capsys, "counts", "--max-k", "4")
        assert rc == 0
        assert json.loads(out)["counts"] == {"3": 9, "6": 27, "9": 72, "12": 108}

    def test_j2_csv(self, capsys):
        rc, out, _ = run_cli(capsys, "--format", "csv", "j2", "--max-k", "4")
        assert rc == 0
        assert out.splitlines() == ["k,j2", "1,1", "2,3", "3,8", "4,12"]

    def test_sizes(self, capsys):
        rc, out, _ = run_cli(capsys, "sizes", "--bound", "180")
        assert rc == 0
        obj = json.loads(out)
        assert obj["sizes"] == [9, 27, 36, 72, 81, 99, 108, 117, 135, 144, 180]
        assert obj["witnesses"]["36"] == [1, 2]

    def test_verdicts(self, capsys):
        rc, out, _ = run_cli(capsys, "verdict", "18")
        assert rc == 0
        assert json.loads(out)["status"] == "open"
        rc, out, _ = run_cli(capsys, "verdict", "14")
        assert rc == 0
        assert json.loads(out)["status"] == "obstructed"
        rc, out, _ = run_cli(capsys, "verdict", "72")
        assert json.loads(out)["witness"] == [3]

    def test_verdict_rejects_csv(self, capsys):
        rc, _, err = run_cli(capsys, "--format", "csv", "verdict", "9")
        assert rc == 2
        assert "JSON" in err


class TestCurveCommands:
    def test_smooth_on_fermat(self, capsys, fermat_file):
        rc, out, _ = run_cli(capsys, "smooth", "--curve", fermat_file)
        assert rc == 0
        obj = json.loads(out)
        assert obj["smooth"] is True
        assert abs(obj["margin"] - 3.0) < 1e-9
        assert obj["witness"] is None

    def test_smooth_reports_witness(self, capsys, singular_file):
        rc, out, _ = run_cli(capsys, "smooth", "--curve", singular_file)
        assert rc == 0
        obj = json.loads(out)
        assert obj["smooth"] is False
        assert obj["witness"] is not None

    def test_hesse_of_fermat(self, capsys, fermat_file):
        rc, out, _ = run_cli(capsys, "hesse", "--curve", fermat_file)
        assert rc == 0
        lam = json.loads(out)["lambda"]
        assert abs(complex(lam[0], lam[1])) < 1e-8

    def test_inflections_of_singular_curve_exit_three(self, capsys, singular_file):
        rc, _, err = run_cli(capsys, "inflections", "--curve", singular_file)
        assert rc == 3
        assert "singular" in err.lower()


class TestTrackCommand:
    def test_constant_loop(self, capsys, tmp_path):
        f = fermat_cubic()
        path = ParameterPath([f, f], steps=4)
        pf = tmp_path / "loop.json"
        pf.write_text(canonical_dumps(path_to_obj(path)), encoding="utf-8")
        rc, out, _ = run_cli(capsys, "track", "--path", str(pf))
        assert rc == 0
        obj = json.loads(out)
        assert obj["closed"] is True
        assert obj["permutation"] == list(range(9))
        assert obj["cycle_type"] == [1] * 9

    def test_discriminant_crossing_exit_three(self, capsys, tmp_path):
        path = ParameterPath([hesse_cubic(0.0), hesse_cubic(-6.0)], steps=8)
        pf = tmp_path / "bad.json"
        pf.write_text(canonical_dumps(path_to_obj(path)), encoding="utf-8")
        rc, _, err = run_cli(capsys, "track", "--path", str(pf))
        assert rc == 3
        assert "discriminant" in err


class TestInputHandling:
    def test_missing_file(self, capsys):
        rc, _, err = run_cli(capsys, "inflections", "--curve", "/nonexistent.json")
        assert rc == 2
        assert "cannot read" in err

    def test_malformed_json(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json", encoding="utf-8")
        rc, _, err = run_cli(capsys, "inflections", "--curve", str(p))
        assert rc == 2

    def test_wrong_schema(self, capsys, tmp_path):
        p = tmp_path / "odd.json"
        p.write_text('{"weird": 1}', encoding="utf-8")
        rc, _, _ = run_cli(capsys, "inflections", "--curve", str(p))
        assert rc == 2

    def test_unknown_subcommand(self, capsys):
        rc, _, _ = run_cli(capsys, "frobnicate")
        assert rc == 2

    def test_bad_tolerance(self, capsys, fermat_file):
        rc, _, err = run_cli(
            capsys, "--tol-match", "2.0", "inflections", "--curve", fermat_file
        )
        assert rc == 2
        assert "tol-match" in err

    def test_out_writes_identical_bytes(self, capsys, tmp_path, fermat_file):
        rc, out, _ = run_cli(capsys, "verdict", "9")
        assert rc == 0
        dest = tmp_path / "verdict.json"
        rc2, out2, _ = run_cli(capsys, "--out", str(dest), "verdict", "9")
        assert rc2 == 0
        assert out2 == ""
        assert dest.read_text(encoding="utf-8") == out

    def test_unwritable_out(self, capsys):
        rc, _, err = run_cli(capsys, "--out", "/nonexistent-dir/x.json", "verdict", "9")
        assert rc == 2
        assert "cannot write" in err


class TestSelftest:
    def test_battery_passes(self, capsys):
        rc, out, _ = run_cli(capsys, "selftest")
        assert rc == 0
        assert "8/8 checks passed" in out
        assert "FAIL" not in out

    def test_console_script_is_installed(self):
        exe = shutil.which("cubicpoints")
        if exe is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run(
            [exe, "j2", "--max-k", "3"], capture_output=True, text=True, timeout=120
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["j2"]["3"] == 8
