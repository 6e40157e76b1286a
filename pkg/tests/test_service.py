import numpy as np
import pytest
from fastapi.testclient import TestClient

from qstages.service.app import app

BELL = "registers 2 2\nstage h 1 | id 1\nstage cnot\n"
SIMON_N3 = "3\n" + "\n".join(
    f"{x} {v}" for x, v in enumerate((1, 3, 0, 5, 0, 5, 1, 3))
)


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


class TestHealth:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"


class TestRun:
    def test_bell(self, client):
        resp = client.post("/run", json={"circuit": BELL, "input_spec": "|00>"})
        assert resp.status_code == 200
        body = resp.json()
        amps = body["amplitudes"]
        assert len(amps) == 4
        assert abs(amps[0]["re"] - 1 / np.sqrt(2)) < 1e-9
        assert amps[0]["label"] == "|00>"
        assert abs(amps[3]["probability"] - 0.5) < 1e-9
        assert body["metrics"]["stages_processed"] == 2

    def test_modes_agree(self, client):
        out = {}
        for mode in ("naive", "efficient"):
            resp = client.post("/run", json={"circuit": BELL, "mode": mode})
            assert resp.status_code == 200
            out[mode] = [(e["re"], e["im"]) for e in resp.json()["amplitudes"]]
        assert out["naive"] == pytest.approx(out["efficient"], abs=1e-10)

    def test_naive_mode_reports_matrix_workspace(self, client):
        resp = client.post("/run", json={"circuit": BELL, "mode": "naive"})
        assert resp.json()["metrics"]["peak_live_cells"] >= 16

    def test_explicit_amplitudes(self, client):
        s = 1 / np.sqrt(2)
        resp = client.post(
            "/run",
            json={"circuit": "registers 2\nstage not 1\n", "amplitudes": [[s, 0], [0, s]]},
        )
        assert resp.status_code == 200
        amps = resp.json()["amplitudes"]
        assert abs(amps[0]["im"] - s) < 1e-12

    def test_parse_error_is_400(self, client):
        resp = client.post("/run", json={"circuit": "registers 2\nstage wat\n"})
        assert resp.status_code == 400
        assert "ParseError" in resp.json()["detail"]

    def test_resource_limit_is_400(self, client):
        circuit = "registers " + " ".join(["2"] * 14) + "\nstage h 14\n"
        resp = client.post("/run", json={"circuit": circuit, "mode": "naive"})
        assert resp.status_code == 400
        assert "ResourceLimit" in resp.json()["detail"]

    def test_aux_gate_file(self, client):
        resp = client.post(
            "/run",
            json={
                "circuit": "registers 2 2\nstage h 1 | id 1\nstage perm cx.perm\n",
                "aux": {"cx.perm": "0 0\n1 1\n2 3\n3 2\n"},
            },
        )
        assert resp.status_code == 200
        amps = resp.json()["amplitudes"]
        assert abs(amps[3]["re"] - 1 / np.sqrt(2)) < 1e-9


class TestSample:
    def test_bell_histogram(self, client):
        resp = client.post(
            "/sample", json={"circuit": BELL, "trials": 2000, "seed": 11}
        )
        assert resp.status_code == 200
        counts = resp.json()["counts"]
        assert set(counts) == {"|00>", "|11>"}
        assert sum(counts.values()) == 2000

    def test_seeded_reproducibility(self, client):
        a = client.post("/sample", json={"circuit": BELL, "trials": 500, "seed": 3}).json()
        b = client.post("/sample", json={"circuit": BELL, "trials": 500, "seed": 3}).json()
        assert a["counts"] == b["counts"]


class TestBench:
    def test_rows_and_csv(self, client):
        resp = client.post("/bench", json={"n_min": 3, "n_max": 5, "mode": "efficient"})
        assert resp.status_code == 200
        body = resp.json()
        assert [r["qubits"] for r in body["rows"]] == [3, 4, 5]
        assert body["csv"].startswith("qubits,mode,elapsed_ms")

    def test_crash_rows(self, client):
        resp = client.post(
            "/bench", json={"n_min": 4, "n_max": 5, "mode": "naive", "max_dim": 16}
        )
        assert [r["status"] for r in resp.json()["rows"]] == ["ok", "crash"]


class TestSimon:
    def test_two_to_one_table(self, client):
        resp = client.post(
            "/simon", json={"table": SIMON_N3, "trials": 30, "seed": 21}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["promise"] == "two-to-one"
        assert body["mask"] == "110"
        assert body["success_rate"] >= 0.8
        assert body["last_run"]["repetitions_used"] == 9

    def test_one_to_one_table_accepted(self, client):
        resp = client.post("/simon", json={"table": "1\n0 0\n1 1\n", "seed": 1})
        assert resp.status_code == 200
        assert resp.json()["promise"] == "one-to-one"

    def test_malformed_table_is_400(self, client):
        resp = client.post("/simon", json={"table": "2\n0 0\n1 0\n2 0\n3 1\n"})
        assert resp.status_code == 400
        assert "MalformedTable" in resp.json()["detail"]


class TestFactorAndDlog:
    def test_factor(self, client):
        resp = client.post("/factor", json={"n": 15, "seed": 2})
        assert resp.status_code == 200
        body = resp.json()
        assert body["factor"] in (3, 5)
        assert body["factor"] * body["cofactor"] == 15

    def test_factor_rejects_prime(self, client):
        resp = client.post("/factor", json={"n": 13})
        assert resp.status_code == 400
        assert "InvalidInput" in resp.json()["detail"]

    def test_dlog(self, client):
        resp = client.post("/shor-dlog", json={"p": 5, "g": 2, "x": 3, "seed": 5})
        assert resp.status_code == 200
        body = resp.json()
        assert body["r"] == 3
        assert body["tries"] >= 1

    def test_dlog_rejects_bad_instance(self, client):
        resp = client.post("/shor-dlog", json={"p": 5, "g": 4, "x": 3})
        assert resp.status_code == 400
        assert "InvalidInstance" in resp.json()["detail"]


class TestValidate:
    def test_ok(self, client):
        resp = client.post("/validate", json={"circuit": BELL})
        assert resp.status_code == 200
        body = resp.json()
        assert body["ok"] and body["stages"] == 2 and body["gates"] == 3

    def test_rejects_underfull_stage(self, client):
        resp = client.post("/validate", json={"circuit": "registers 2 2\nstage h 1\n"})
        assert resp.status_code == 400
