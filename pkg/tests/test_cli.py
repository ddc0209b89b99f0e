import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from zetaid import identity_catalog as ic
from zetaid.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


class TestVerify:
    def test_single(self):
        code, text = run("verify", "--id", "s5.Rz")
        assert code == EXIT_OK
        assert "PASS s5.Rz" in text and "quadrature-verified" in text
        err = float(text.split("abs_err = ")[1].split()[0])
        assert err < 1e-8

    def test_continuation_label(self):
        code, text = run("verify", "--id", "s4.Diff1")
        assert code == EXIT_OK
        assert "consistency-verified" in text and ic.AC_NOTE in text

    def test_unknown_id(self):
        code, text = run("verify", "--id", "s5.Rzz")
        assert code == EXIT_USAGE
        assert "nearest ids" in text and "s5.Rz" in text

    def test_convergent_class(self):
        code, text = run("--jobs", "4", "verify", "--all", "--class", "convergent")
        assert code == EXIT_OK
        assert text.strip().endswith(f"{len(ic.list_identities('convergent'))}/"
                                     f"{len(ic.list_identities('convergent'))} passed")

    def test_failure_exit_code(self):
        code, text = run("verify", "--id", "s5.Limw0M")
        assert code == EXIT_FAIL and "FAIL s5.Limw0M" in text

    def test_json_byte_identical(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p, jobs in zip(paths, ("1", "3")):
            run("--jobs", jobs, "verify", "--all", "--class", "moment", "--json", str(p))
        assert paths[0].read_bytes() == paths[1].read_bytes()
        doc = json.loads(paths[0].read_text())
        assert doc["schema_version"] == ic.SCHEMA_VERSION and doc["precision"] == "double"
        assert [r["id"] for r in doc["reports"]] == sorted(r["id"] for r in doc["reports"])

    @pytest.mark.parametrize("tol", ["1e-15", "0.5", "abc"])
    def test_tolerance_range(self, tol):
        code, _ = run("verify", "--id", "s5.Rz", "--tol", tol)
        assert code == EXIT_USAGE

    def test_needs_selection(self):
        code, _ = run("verify")
        assert code == EXIT_USAGE


class TestConstants:
    @pytest.mark.parametrize("name", ["H", "B", "Z2"])
    def test_digits(self, name):
        code, text = run("constants", "--name", name)
        assert code == EXIT_OK
        digits = float(text.split("digits")[1].split()[0])
        assert digits >= 12

    def test_all(self):
        code, text = run("constants")
        assert code == EXIT_OK
        assert "LOW" not in text


class TestExplore:
    def test_radial(self):
        code, text = run("explore", "--mode", "radial", "--m", "0", "--w", "0")
        assert code == EXIT_OK
        last = text.strip().splitlines()[-1]
        assert "imag branch" in last and "DeltaMinusInf" in last
        coef = float(last.split("fitted pole coefficient ")[1].split(";")[0])
        assert abs(coef + 2 ** 0.5) < 1e-4

    def test_ray(self):
        code, text = run("explore", "--mode", "ray", "--m", "0", "--w", "0", "--alpha", "0")
        assert code == EXIT_OK and "DeltaZero" in text.strip().splitlines()[-1]

    def test_theta_csv(self, tmp_path):
        path = tmp_path / "theta.csv"
        code, _ = run("explore", "--mode", "theta", "--m", "0", "--csv", str(path))
        assert code == EXIT_OK
        rows = list(csv.DictReader(path.open()))
        assert len(rows) == 10
        assert rows[0]["path_kind"] == "theta" and rows[0]["w"] == "0.5"
        # the sweep data carry no linear term and reproduce the second-order coefficient
        theta = np.array([float(r["alpha_or_theta"]) for r in rows])
        comb = np.array([float(r["series_im"]) / 2 - float(r["series_re"]) for r in rows])
        fit = np.polyfit(theta, comb, 6)[::-1]
        assert abs(fit[1]) < 1e-6
        assert abs(fit[2] - (math.log(2) / 4 + math.pi ** 2 / 6 + 1.5 * 1.2020569031595943)) < 1e-3

    def test_bad_offset(self):
        code, _ = run("explore", "--mode", "arc", "--m", "0", "--w", "0.3")
        assert code == EXIT_USAGE

    def test_theta_rejects_zero_offset(self):
        code, text = run("explore", "--mode", "theta", "--m", "0", "--w", "0")
        assert code == EXIT_USAGE and "invalid exploration" in text


class TestCesaro:
    def test_v12p(self):
        code, text = run("cesaro", "--id", "s4.V12p", "--segments", "200")
        assert code == EXIT_OK
        avg = float(text.split("final average")[1].split()[0])
        assert abs(avg - 0.017324632) < 0.02

    def test_euler4(self):
        code, text = run("cesaro", "--id", "appendixC.euler4", "--segments", "50")
        assert code == EXIT_OK
        avg = float(text.split("final average")[1].split()[0])
        assert abs(avg) < 1e-10

    def test_rz_against_quadrature(self, tmp_path):
        path = tmp_path / "rz.csv"
        code, text = run("cesaro", "--id", "s5.Rz", "--segments", "50", "--csv", str(path))
        assert code == EXIT_OK
        line = [ln for ln in text.splitlines() if ln.startswith("direct quadrature")][0]
        diff = float(line.split("difference ")[1].split(",")[0])
        seg = float(line.split("summed segment error ")[1].rstrip(")"))
        assert diff <= 2 * seg + 1e-14
        assert len(path.read_text().splitlines()) == 51

    def test_unknown(self):
        code, _ = run("cesaro", "--id", "nope", "--segments", "5")
        assert code == EXIT_USAGE


class TestList:
    def test_rows(self):
        code, text = run("list")
        assert code == EXIT_OK and len(text.strip().splitlines()) >= 60

    def test_indeterminate(self):
        code, text = run("list", "--class", "indeterminate")
        assert "s5.Oa4b" in text

    def test_json(self):
        code, text = run("list", "--json")
        doc = json.loads(text)
        assert doc["schema_version"] == ic.SCHEMA_VERSION
        assert all({"id", "class", "params", "anchor", "parents"} <= set(r) for r in doc["records"])


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zetaid.cli", "--precision", "dd", "constants", "--name", "H"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert "ok" in proc.stdout


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "zetaid.cli", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
