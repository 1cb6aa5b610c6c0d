import json
import re

from binstretch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_proven_emits_certificate(tmp_path, capsys, warm_kernel):
    cert = tmp_path / "p.json"
    code, out, _ = run(capsys, "solve", "-m", "2", "-g", "3", "-t", "4",
                       "--emit-proof", str(cert))
    assert code == 0
    assert re.search(r"RESULT m=2 g=3 t=4 proven=true nodes=\d+ pruned=\d+ "
                     r"memo_hits=\d+ time_ms=\d+", out)
    assert cert.exists()
    header = json.loads(cert.read_text())
    assert (header["m"], header["g"], header["t"]) == (2, 3, 4)

    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0
    assert "VERIFIED" in out


def test_solve_not_proven_exit_code(capsys, warm_kernel):
    code, out, _ = run(capsys, "solve", "-m", "2", "-g", "3", "-t", "5")
    assert code == 1
    assert "proven=false" in out


def test_usage_error_on_t_not_above_g(capsys):
    code, _, err = run(capsys, "solve", "-m", "2", "-g", "3", "-t", "3")
    assert code == 3
    assert "target" in err


def test_usage_error_on_missing_args(capsys):
    code, _, _ = run(capsys, "solve", "-m", "2")
    assert code == 3


def test_unknown_suite_is_usage_error(capsys):
    code, _, _ = run(capsys, "bench", "--suite", "nonsense")
    assert code == 3


def test_memo_cap_inconclusive_exit(capsys, warm_kernel):
    code, out, _ = run(capsys, "solve", "-m", "3", "-g", "22", "-t", "30",
                       "--memo-cap", "700")
    assert code == 2
    assert "INCONCLUSIVE" in out
    assert "reason=resources" in out


def test_verify_missing_file(capsys):
    code, _, err = run(capsys, "verify", "/nonexistent/cert.json")
    assert code == 1


def test_verify_truncated_file(tmp_path, capsys, warm_kernel):
    cert = tmp_path / "p.json"
    run(capsys, "solve", "-m", "2", "-g", "3", "-t", "4", "--emit-proof", str(cert))
    data = cert.read_bytes()
    cert.write_bytes(data[: len(data) // 2])
    code, _, err = run(capsys, "verify", str(cert))
    assert code == 1
    assert "parse error" in err


def test_verify_with_mismatched_target(tmp_path, capsys, warm_kernel):
    cert = tmp_path / "p.json"
    run(capsys, "solve", "-m", "2", "-g", "3", "-t", "4", "--emit-proof", str(cert))
    code, out, _ = run(capsys, "verify", str(cert), "-t", "5")
    assert code == 1
    assert "leaf-below-target" in out


def test_table_subcommand(capsys):
    code, out, _ = run(capsys, "table", "-m", "2", "-g", "6", "-t", "8")
    assert code == 0
    assert "rank space |P_t,m| = 36" in out
    assert "algorithm-winning" in out


def test_table_dump_m2(capsys):
    code, out, _ = run(capsys, "table", "-m", "2", "-g", "6", "-t", "8", "--dump")
    assert code == 0
    assert "(4, 4): v=4" in out
    assert "(6, 5): v=7" in out


def test_table_dump_rejected_for_m3(capsys):
    code, _, err = run(capsys, "table", "-m", "3", "-g", "6", "-t", "8", "--dump")
    assert code == 3
