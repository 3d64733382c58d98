import os
import subprocess
import sys

import pytest

from hbgsearch.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def heawood_run(tmp_path, capsys):
    out_dir = tmp_path / "g6"
    code, out, err = run_cli("search", "--girth", "6", "--sym", "1",
                             "--min", "6", "--max", "20", "--mode", "first",
                             "--out", str(out_dir), capsys=capsys)
    assert code == 0
    return out_dir, out


class TestSearchCommand:
    def test_heawood_run_files_and_exit(self, heawood_run):
        out_dir, out = heawood_run
        assert "order 14 witness witnesses 1" in out
        assert out.strip().splitlines()[-1] == "minimal 14"
        names = sorted(os.listdir(out_dir))
        assert "g6_n14_b1_w000.hbg" in names
        assert sum(1 for n in names if n.endswith(".cert")) == 5

    def test_usage_error_when_no_order_divisible(self, capsys):
        code, out, err = run_cli("search", "--girth", "6", "--sym", "3",
                                 "--min", "8", "--max", "8", capsys=capsys)
        assert code == 1
        assert "divisible" in err

    def test_missing_flags_is_usage_error(self, capsys):
        code, out, err = run_cli("search", "--girth", "6", capsys=capsys)
        assert code == 1 and "usage error" in err

    def test_written_files_reparse(self, heawood_run, capsys):
        out_dir, _ = heawood_run
        wfile = str(out_dir / "g6_n14_b1_w000.hbg")
        code, out, err = run_cli("verify", wfile, capsys=capsys)
        assert code == 0 and out.strip() == "PASS girth=6"

    def test_budget_breach_exit_2_and_resume(self, tmp_path, capsys):
        out_dir = tmp_path / "b7"
        code, out, err = run_cli("search", "--girth", "14", "--sym", "7",
                                 "--min", "266", "--max", "266", "--mode", "prove",
                                 "--node-budget", "20000", "--out", str(out_dir),
                                 "--quiet", capsys=capsys)
        assert code == 2
        assert "order 266 undecided" in out
        resume = out_dir / "g14_n266_b7.resume"
        assert resume.exists()
        cert = (out_dir / "g14_n266_b7.cert").read_text()
        assert "status budget-exceeded" in cert

    def test_double_resume_chain(self, tmp_path, capsys):
        out_dir = tmp_path / "chain"
        code, *_ = run_cli("search", "--girth", "14", "--sym", "3",
                           "--min", "258", "--max", "258", "--mode", "prove",
                           "--node-budget", "3000", "--out", str(out_dir),
                           "--quiet", capsys=capsys)
        assert code == 2
        resume = str(out_dir / "g14_n258_b3.resume")
        code, *_ = run_cli("search", "--resume", resume, "--node-budget", "5000",
                           "--quiet", capsys=capsys)
        assert code == 2  # breached again, resume file rewritten
        code, out, err = run_cli("search", "--resume", resume,
                                 "--node-budget", "100000", "--quiet", capsys=capsys)
        assert code == 0 and "order 258 exhausted" in out
        direct_dir = tmp_path / "direct"
        run_cli("search", "--girth", "14", "--sym", "3", "--min", "258",
                "--max", "258", "--mode", "prove", "--out", str(direct_dir),
                "--quiet", capsys=capsys)
        assert (out_dir / "g14_n258_b3.cert").read_text() == \
               (direct_dir / "g14_n258_b3.cert").read_text()

    def test_progress_flag_prints_to_stderr(self, tmp_path, capsys):
        code, out, err = run_cli("search", "--girth", "6", "--sym", "1",
                                 "--min", "14", "--max", "14", "--mode", "prove",
                                 "--progress", capsys=capsys)
        assert code == 0
        assert "5/5 roots" in err
        assert "roots" not in out

    def test_resume_completes_small_case(self, tmp_path, capsys):
        out_dir = tmp_path / "res"
        code, *_ = run_cli("search", "--girth", "14", "--sym", "3",
                           "--min", "258", "--max", "258", "--mode", "prove",
                           "--node-budget", "4000", "--out", str(out_dir),
                           "--quiet", capsys=capsys)
        assert code == 2
        code, out, err = run_cli("search", "--resume",
                                 str(out_dir / "g14_n258_b3.resume"),
                                 "--node-budget", "100000", "--quiet", capsys=capsys)
        assert code == 0
        assert "order 258 exhausted" in out
        assert not (out_dir / "g14_n258_b3.resume").exists()
        # stitched certificate equals an uninterrupted run's
        direct_dir = tmp_path / "direct"
        run_cli("search", "--girth", "14", "--sym", "3", "--min", "258",
                "--max", "258", "--mode", "prove", "--out", str(direct_dir),
                "--quiet", capsys=capsys)
        assert (out_dir / "g14_n258_b3.cert").read_text() == \
               (direct_dir / "g14_n258_b3.cert").read_text()

    def test_byte_identical_reruns(self, tmp_path, capsys):
        dirs = []
        for name in ("one", "two"):
            d = tmp_path / name
            code, *_ = run_cli("search", "--girth", "8", "--sym", "3",
                               "--min", "6", "--max", "30", "--mode", "all",
                               "--out", str(d), "--quiet", capsys=capsys)
            assert code == 0
            dirs.append(d)
        a, b = dirs
        assert sorted(os.listdir(a)) == sorted(os.listdir(b))
        for name in os.listdir(a):
            assert (a / name).read_bytes() == (b / name).read_bytes(), name

    def test_shards_flag_matches_serial_output(self, tmp_path, capsys):
        serial = tmp_path / "serial"
        sharded = tmp_path / "sharded"
        for d, shards in ((serial, "1"), (sharded, "4")):
            code, *_ = run_cli("search", "--girth", "8", "--sym", "3",
                               "--min", "30", "--max", "42", "--mode", "prove",
                               "--shards", shards, "--out", str(d), "--quiet",
                               capsys=capsys)
            assert code == 0
        for name in sorted(os.listdir(serial)):
            assert (serial / name).read_bytes() == (sharded / name).read_bytes()


class TestVerifyCommand:
    def test_fail_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.hbg"
        bad.write_text("HBG 1\ng 8\nn 14\nb 1\noffsets 5 9\n", encoding="ascii")
        code, out, err = run_cli("verify", str(bad), capsys=capsys)
        assert code == 1 and "FAIL" in out and "girth 6 < 8" in out

    def test_parse_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "junk.hbg"
        bad.write_text("nonsense\n", encoding="ascii")
        code, out, err = run_cli("verify", str(bad), capsys=capsys)
        assert code == 1 and "FAIL" in out

    def test_verbose_lists_checks(self, heawood_run, capsys):
        out_dir, _ = heawood_run
        code, out, err = run_cli("verify", "--verbose",
                                 str(out_dir / "g6_n14_b1_w000.hbg"), capsys=capsys)
        assert code == 0
        assert "ok   pattern" in out and "ok   girth" in out


class TestGirthCanonCommands:
    def test_girth_command(self, tmp_path, capsys):
        f = tmp_path / "k33.hbg"
        f.write_text("HBG 1\ng 4\nn 6\nb 1\noffsets 3 3\n", encoding="ascii")
        code, out, err = run_cli("girth", str(f), capsys=capsys)
        assert code == 0 and out.strip() == "girth 4"

    def test_girth_cap(self, tmp_path, capsys):
        f = tmp_path / "hw.hbg"
        f.write_text("HBG 1\ng 6\nn 14\nb 1\noffsets 5 9\n", encoding="ascii")
        code, out, err = run_cli("girth", str(f), "--cap", "4", capsys=capsys)
        assert code == 0 and out.strip() == "girth > 4"

    def test_canon_rewrites_file(self, tmp_path, capsys):
        f = tmp_path / "shifted.hbg"
        f.write_text("HBG 1\ng 6\nn 14\nb 1\noffsets 9 5\nnote keep me\n",
                     encoding="ascii")
        code, out, err = run_cli("canon", str(f), capsys=capsys)
        assert code == 0 and out.strip() == "offsets 5 9"
        text = f.read_text()
        assert "offsets 5 9" in text and "note keep me" in text

    def test_canon_dry_run(self, tmp_path, capsys):
        f = tmp_path / "shifted.hbg"
        original = "HBG 1\ng 6\nn 14\nb 1\noffsets 9 5\n"
        f.write_text(original, encoding="ascii")
        code, out, err = run_cli("canon", str(f), "--dry-run", capsys=capsys)
        assert code == 0 and f.read_text() == original


class TestTableReportCommands:
    def test_table_from_run_dir(self, heawood_run, capsys):
        out_dir, _ = heawood_run
        code, out, err = run_cli("table", "--girth", "6", "--dir", str(out_dir),
                                 capsys=capsys)
        assert code == 0
        row = [line for line in out.splitlines() if line.startswith("1")][0]
        assert "resolved" in row

    def test_table_kv_with_claims(self, tmp_path, heawood_run, capsys):
        out_dir, _ = heawood_run
        claims = tmp_path / "claims.txt"
        claims.write_text("HBG-CLAIMS 1\ng 6\nupper 2 16 guess\n", encoding="ascii")
        code, out, err = run_cli("table", "--girth", "6", "--dir", str(out_dir),
                                 "--claims", str(claims), "--format", "kv",
                                 capsys=capsys)
        assert code == 0
        assert "row 1 14 14 14 verified resolved" in out
        assert "row 2 16 16 16 claimed resolved-claimed" in out

    def test_report_from_run_dir(self, heawood_run, capsys):
        out_dir, _ = heawood_run
        code, out, err = run_cli("report", "--girth", "6", "--dir", str(out_dir),
                                 capsys=capsys)
        assert code == 0
        assert "b=1: 6, 8, 10, 12" in out

    def test_report_skips_non_evidence(self, tmp_path, capsys):
        out_dir = tmp_path / "mix"
        run_cli("search", "--girth", "14", "--sym", "3", "--min", "258",
                "--max", "258", "--mode", "prove", "--node-budget", "3000",
                "--out", str(out_dir), "--quiet", capsys=capsys)
        code, out, err = run_cli("report", "--girth", "14", "--dir", str(out_dir),
                                 capsys=capsys)
        assert code == 0
        assert "(no certified orders)" in out
        assert "skipped" in err


class TestModuleEntryPoint:
    def test_python_dash_m(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "hbgsearch", "girth", "--help"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "--cap" in proc.stdout
