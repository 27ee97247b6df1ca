import json

import httpx
import pytest

from clusterkit import cli, seed as sd
from clusterkit.quiver import Quiver, from_json
from clusterkit.service import SessionStore, make_app, state_json

A2_JSON = {"n": 2, "frozen": 0, "arrows": [[1, 2, 1]]}
A3_JSON = {"n": 3, "frozen": 0, "arrows": [[1, 2, 1], [2, 3, 1]]}
D4_JSON = {"n": 4, "frozen": 0, "arrows": [[1, 4, 1], [2, 4, 1], [3, 4, 1]]}
WILD_JSON = {"n": 3, "frozen": 0, "arrows": [[1, 2, 2], [2, 3, 1]]}
QP_JSON = {
    "vertices": [1, 2, 3],
    "arrows": [{"name": "a", "src": 1, "dst": 2},
               {"name": "b", "src": 2, "dst": 3},
               {"name": "c", "src": 3, "dst": 1}],
    "potential": [{"coef": "1", "cycle": ["c", "b", "a"]}],
}


@pytest.fixture
def a3_file(tmp_path):
    path = tmp_path / "a3.json"
    path.write_text(json.dumps(A3_JSON))
    return str(path)


@pytest.fixture
def client():
    store = SessionStore()
    transport = httpx.WSGITransport(app=make_app(store))
    with httpx.Client(transport=transport, base_url="http://service") as c:
        yield c


# -- CLI ------------------------------------------------------------------------

def test_cli_classify(a3_file, capsys):
    assert cli.main(["classify", "-q", a3_file]) == 0
    assert capsys.readouterr().out.strip() == "Dynkin(A3); mutation class: FiniteByTheorem"


def test_cli_exchange_graph(a3_file, capsys, tmp_path):
    dot = tmp_path / "graph.dot"
    assert cli.main(["exchange-graph", "-q", a3_file, "--max", "100", "--dot", str(dot)]) == 0
    out = capsys.readouterr().out
    assert "14 seeds, 9 cluster variables" in out
    assert dot.read_text().startswith("graph exchange {")


def test_cli_exchange_graph_limit(tmp_path, capsys):
    path = tmp_path / "kron.json"
    path.write_text(json.dumps({"n": 2, "frozen": 0, "arrows": [[1, 2, 2]]}))
    assert cli.main(["exchange-graph", "-q", str(path), "--max", "20"]) == 2


def test_cli_mutate(a3_file, capsys):
    assert cli.main(["mutate", "-q", a3_file, "-s", "3"]) == 0
    out = capsys.readouterr().out
    assert "(1+x2)/x3" in out
    assert cli.main(["mutate", "-q", a3_file, "-s", "3,2,1", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    expected = sd.mutate_seed_sequence(sd.initial_seed(from_json(A3_JSON)), [2, 1, 0])
    assert sd.from_json(obj) == expected


def test_cli_mutation_class(a3_file, capsys):
    assert cli.main(["mutation-class", "-q", a3_file, "--max", "100"]) == 0
    assert "4 quivers up to isomorphism" in capsys.readouterr().out


def test_cli_cc(a3_file, capsys):
    assert cli.main(["cc", "-q", a3_file, "--module", "0,1,0"]) == 0
    assert capsys.readouterr().out.strip() == "(x1+x3)/x2"


def test_cli_check(a3_file, capsys):
    code = cli.main(["check", "-q", a3_file, "--laurent", "--positivity",
                     "--depth", "6", "--trials", "3"])
    assert code == 0
    assert "ok" in capsys.readouterr().out


def test_cli_qp_mutate(tmp_path, capsys):
    path = tmp_path / "qp.json"
    path.write_text(json.dumps(QP_JSON))
    assert cli.main(["qp-mutate", "-f", str(path), "-k", "2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["potential"] == []
    assert {(a["src"], a["dst"]) for a in obj["arrows"]} == {(2, 1), (3, 2)}


def test_cli_polygon(capsys):
    assert cli.main(["polygon", "--ngon", "6", "--enumerate"]) == 0
    out = capsys.readouterr().out
    assert "9 diagonals, 14 triangulations" in out


def test_cli_bad_input(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "arrows": [[1, 1, 1]]}))
    assert cli.main(["classify", "-q", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_missing_file(capsys):
    assert cli.main(["classify", "-q", "/nonexistent.json"]) == 1


# -- HTTP service ------------------------------------------------------------------

def test_session_lifecycle(client):
    r = client.post("/sessions", json={"quiver": A2_JSON})
    assert r.status_code == 201
    sid = r.json()["id"]
    state = r.json()["state"]
    assert [v["str"] for v in state["cluster"]] == ["x1", "x2"]
    assert state["classification"] == "Dynkin(A2)"
    assert state["finiteness"] == "FiniteByTheorem"

    r = client.get(f"/sessions/{sid}")
    assert r.status_code == 200
    assert r.json() == state

    r = client.post(f"/sessions/{sid}/mutate", json={"vertex": 1})
    assert r.status_code == 200
    assert [v["str"] for v in r.json()["cluster"]] == ["(1+x2)/x1", "x2"]

    r = client.post(f"/sessions/{sid}/undo")
    assert r.status_code == 200
    assert r.json() == state

    r = client.delete(f"/sessions/{sid}")
    assert r.status_code == 204
    assert client.get(f"/sessions/{sid}").status_code == 404


def test_error_codes(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions", json={}).status_code == 422
    assert client.post("/sessions", json={"quiver": {"n": 2, "arrows": [[1, 1, 1]]}}).status_code == 422
    assert client.post("/sessions", content=b"not json",
                       headers={"Content-Type": "application/json"}).status_code == 422

    sid = client.post("/sessions", json={"quiver": A2_JSON}).json()["id"]
    assert client.post(f"/sessions/{sid}/mutate", json={"vertex": 0}).status_code == 400
    assert client.post(f"/sessions/{sid}/mutate", json={"vertex": 3}).status_code == 400
    assert client.post(f"/sessions/{sid}/mutate", json={}).status_code == 400
    assert client.post(f"/sessions/{sid}/undo").status_code == 409

    kron = {"n": 2, "frozen": 0, "arrows": [[1, 2, 2]]}
    sid2 = client.post("/sessions", json={"quiver": kron}).json()["id"]
    assert client.get(f"/sessions/{sid2}/exchange-graph?max=10").status_code == 413
    assert client.get(f"/sessions/{sid2}/polygon").status_code == 404


def test_mutate_matches_library(client):
    sid = client.post("/sessions", json={"quiver": A3_JSON}).json()["id"]
    state = client.post(f"/sessions/{sid}/mutate", json={"vertex": 2}).json()
    lib = sd.mutate_seed(sd.initial_seed(from_json(A3_JSON)), 1)
    assert sd.from_json({"quiver": state["quiver"], "cluster": [v["poly"] for v in state["cluster"]]}) == lib


def test_neighbors_preview_equals_commit(client):
    sid = client.post("/sessions", json={"quiver": A3_JSON}).json()["id"]
    previews = client.get(f"/sessions/{sid}/neighbors").json()["neighbors"]
    assert len(previews) == 3
    before = client.get(f"/sessions/{sid}").json()
    for preview in previews:
        k = preview["vertex"]
        committed = client.post(f"/sessions/{sid}/mutate", json={"vertex": k}).json()
        assert committed["cluster"][k - 1] == preview["variable"]
        assert committed["quiver"] == preview["quiver"]
        client.post(f"/sessions/{sid}/undo")
        assert client.get(f"/sessions/{sid}").json() == before


def test_exchange_graph_endpoint(client):
    sid = client.post("/sessions", json={"quiver": A2_JSON}).json()["id"]
    r = client.get(f"/sessions/{sid}/exchange-graph?max=100")
    assert r.status_code == 200
    assert r.json()["seeds"] == 5
    assert r.json()["variables"] == 5


def test_polygon_endpoint(client):
    sid = client.post("/sessions", json={"quiver": A2_JSON}).json()["id"]
    r = client.get(f"/sessions/{sid}/polygon")
    assert r.status_code == 200
    body = r.json()
    assert body["ngon"] == 5
    assert len(body["triangulation"]) == 2
    assert body["svg"].startswith("<svg")
    # flips track mutations
    client.post(f"/sessions/{sid}/mutate", json={"vertex": 1})
    r2 = client.get(f"/sessions/{sid}/polygon")
    assert r2.status_code == 200
    assert r2.json()["triangulation"] != body["triangulation"]

    d4 = client.post("/sessions", json={"quiver": D4_JSON}).json()
    assert client.get(f"/sessions/{d4['id']}/polygon").status_code == 404


def test_polygon_alignment_survives_deep_walks(client):
    sid = client.post("/sessions", json={"quiver": A3_JSON}).json()["id"]
    import random

    rng = random.Random(3)
    for _ in range(25):
        k = rng.randint(1, 3)
        state = client.post(f"/sessions/{sid}/mutate", json={"vertex": k}).json()
        assert state["polygon"] is not None


def test_sessions_are_isolated(client):
    a = client.post("/sessions", json={"quiver": A2_JSON}).json()["id"]
    b = client.post("/sessions", json={"quiver": A2_JSON}).json()["id"]
    before_b = client.get(f"/sessions/{b}").json()
    client.post(f"/sessions/{a}/mutate", json={"vertex": 1})
    after_b = client.get(f"/sessions/{b}").json()
    assert before_b == after_b


def test_cors_and_options(client):
    r = client.options("/sessions")
    assert r.status_code == 204
    r = client.post("/sessions", json={"quiver": A2_JSON})
    assert r.headers["Access-Control-Allow-Origin"] == "*"


def test_snapshot_round_trip(tmp_path):
    store = SessionStore()
    session = store.create(from_json(A3_JSON))
    session.mutate(1)
    session.mutate(2)
    path = tmp_path / "snap.json"
    store.snapshot(str(path))

    fresh = SessionStore()
    fresh.load(str(path))
    restored = fresh.get(session.id)
    assert restored is not None
    assert state_json(restored) == state_json(session)
