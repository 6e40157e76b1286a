import threading

import pytest
import uvicorn

from qstages.cli import main

BELL = "registers 2 2\nstage h 1 | id 1\nstage cnot\n"


@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.qc"
    path.write_text(BELL)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRun:
    def test_bell_amplitudes(self, capsys, bell_file):
        code, out, err = run_cli(capsys, "run", bell_file, "--input", "|00>")
        assert code == 0 and err == ""
        lines = out.splitlines()
        assert lines[0].startswith("|00>  0.707107")
        assert lines[3].startswith("|11>  0.707107")
        assert "p=0.5000" in lines[0]
        assert lines[4].startswith("# mode=efficient")

    def test_zero_stage_circuit_echoes_input(self, capsys, tmp_path):
        path = tmp_path / "empty.qc"
        path.write_text("registers 2\n")
        code, out, _ = run_cli(capsys, "run", str(path), "--input", "|1>")
        assert code == 0
        assert out.splitlines()[1].startswith("|1>  1.000000")

    def test_naive_mode_above_cap_fails_cleanly(self, capsys, tmp_path):
        path = tmp_path / "wide.qc"
        n = 14
        path.write_text("registers " + " ".join(["2"] * n) + f"\nstage h {n}\n")
        code, out, err = run_cli(capsys, "run", str(path), "--mode", "naive")
        assert code == 1
        assert out == ""  # no partial output
        assert "ResourceLimit" in err

    def test_amps_file_input(self, capsys, tmp_path):
        path = tmp_path / "id.qc"
        path.write_text("registers 2\nstage id 1\n")
        amps = tmp_path / "in.amps"
        amps.write_text("0.6 0\n0 0.8\n")
        code, out, _ = run_cli(capsys, "run", str(path), "--input", "amps:in.amps")
        assert code == 0
        assert out.splitlines()[0].startswith("|0>  0.600000")
        assert "p=0.6400" in out.splitlines()[1]

    def test_missing_file(self, capsys):
        code, out, err = run_cli(capsys, "run", "/nonexistent/x.qc")
        assert code == 1 and "error:" in err


class TestSample:
    def test_bell_histogram(self, capsys, bell_file):
        code, out, _ = run_cli(
            capsys, "sample", bell_file, "--trials", "2000", "--seed", "9"
        )
        assert code == 0
        labels = [line.split()[0] for line in out.splitlines() if line.startswith("|")]
        assert set(labels) == {"|00>", "|11>"}

    def test_deterministic_circuit_single_outcome(self, capsys, tmp_path):
        path = tmp_path / "nots.qc"
        path.write_text("registers 2 2\nstage not 2\n")
        code, out, _ = run_cli(capsys, "sample", str(path), "--trials", "50", "--seed", "1")
        assert code == 0
        lines = [line for line in out.splitlines() if line.startswith("|")]
        assert lines == ["|11>  50"]

    def test_same_seed_same_output(self, capsys, bell_file):
        _, out1, _ = run_cli(capsys, "sample", bell_file, "--trials", "300", "--seed", "4")
        _, out2, _ = run_cli(capsys, "sample", bell_file, "--trials", "300", "--seed", "4")
        assert out1 == out2


class TestBench:
    def test_csv_output(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "3", "5", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "qubits,mode,elapsed_ms,peak_live_cells,madds"
        assert len(lines) == 4

    def test_table_output(self, capsys):
        code, out, _ = run_cli(capsys, "bench", "3", "4")
        assert code == 0
        assert "peak_live_cells" in out


class TestAlgorithms:
    def test_simon(self, capsys, tmp_path):
        table = tmp_path / "f.txt"
        table.write_text("3\n" + "\n".join(f"{x} {v}" for x, v in enumerate((1, 3, 0, 5, 0, 5, 1, 3))))
        code, out, _ = run_cli(capsys, "simon", str(table), "--trials", "25", "--seed", "2")
        assert code == 0
        assert "promise=two-to-one mask=110" in out
        rate = float(out.splitlines()[-1].split()[-1])
        assert rate >= 0.8

    def test_factor(self, capsys):
        code, out, _ = run_cli(capsys, "factor", "15", "--seed", "6")
        assert code == 0
        assert int(out.splitlines()[0]) in (3, 5)

    def test_factor_rejects_prime(self, capsys):
        code, _, err = run_cli(capsys, "factor", "13")
        assert code == 1 and "InvalidInput" in err

    def test_dlog(self, capsys):
        code, out, _ = run_cli(capsys, "shor-dlog", "5", "2", "3", "--seed", "8")
        assert code == 0
        assert int(out.splitlines()[0]) == 3


class TestValidate:
    def test_ok(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "validate", bell_file)
        assert code == 0
        assert out.startswith("ok: registers 2 2")

    def test_invalid(self, capsys, tmp_path):
        path = tmp_path / "bad.qc"
        path.write_text("registers 2 2\nstage h 1\n")
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == 1 and "error:" in err


class TestRemoteServer:
    def test_cli_against_live_server(self, capsys, bell_file, unused_tcp_port_factory=None):
        # spin a real uvicorn server on a free port and point the CLI at it
        import socket

        from qstages.service.app import app

        with socket.socket() as s:
            s.bind(("127.0.0.1", 0))
            port = s.getsockname()[1]

        config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        import time

        deadline = time.time() + 10
        while not server.started:
            if time.time() > deadline:
                pytest.fail("server did not start")
            time.sleep(0.05)
        try:
            code, out, err = run_cli(
                capsys, "--server", f"http://127.0.0.1:{port}", "run", bell_file
            )
            assert code == 0, err
            assert out.splitlines()[0].startswith("|00>  0.707107")

            code, _, err = run_cli(
                capsys, "--server", f"http://127.0.0.1:{port}", "factor", "13"
            )
            assert code == 1 and "InvalidInput" in err
        finally:
            server.should_exit = True
            thread.join(timeout=10)
