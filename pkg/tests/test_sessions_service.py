import json
import random
import threading
import urllib.error
import urllib.request
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_config, random_nonzero_fraction
from mutwb.cli import main as cli_main
from mutwb.curves import GeodesicConfig
from mutwb.errors import NotSimple
from mutwb.localsystems import Character
from mutwb.service import make_server
from mutwb.sessions import (
    MalformedPayload,
    SessionStore,
    initial_state,
    mutate_state,
    render_state,
    state_from_json,
    state_to_json,
)

DATA = Path(__file__).parent / "data"


# ---------------------------------------------------------------------------
# session states
# ---------------------------------------------------------------------------

def test_initial_state_kinds():
    assert initial_state({"example": "vianna-p2"}).kind == "config"
    assert initial_state({"example": "twocurves-opposite"}).kind == "ledger"
    assert initial_state({"seed": "a3"}).kind == "seed"
    with pytest.raises(MalformedPayload):
        initial_state({})
    with pytest.raises(MalformedPayload):
        initial_state({"example": "nope"})
    with pytest.raises(MalformedPayload):
        initial_state({"seed": "a3", "character": {"a": "2", "b": "3"}})


def test_mutate_state_blocked_ledger():
    state = initial_state({"example": "twocurves-opposite"})
    state = mutate_state(state, 1)
    assert state.ledger.s == (1, 0)
    with pytest.raises(NotSimple):
        mutate_state(state, 0)


def test_config_state_keeps_components_consistent():
    state = initial_state(
        {"example": "vianna-p2", "character": {"a": "2", "b": "3"}}
    )
    out = mutate_state(state, 2)
    assert out.classes == ((1, -1), (-5, -1), (2, 1))
    assert out.decorated.seed.vectors == out.classes
    assert out.ledger.P[1][0] == 6
    expected = Character(Fraction(2), Fraction(3))
    from mutwb.localsystems import mutate_character

    assert out.character == mutate_character(expected, GeodesicConfig(state.classes), 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_state_json_round_trip(seed_value):
    rng = random.Random(seed_value)
    choice = rng.randrange(3)
    if choice == 0:
        state = initial_state({"seed": rng.choice(["a2", "a3", "d4"])})
    elif choice == 1:
        cfg = random_config(rng, max_curves=4, bound=3)
        payload = {"config": {"classes": [list(v) for v in cfg.classes]}}
        if rng.random() < 0.5:
            payload["character"] = {
                "a": str(random_nonzero_fraction(rng)),
                "b": str(random_nonzero_fraction(rng)),
            }
        state = initial_state(payload)
    else:
        state = initial_state({"example": "twocurves-opposite"})
    for _ in range(rng.randrange(3)):
        k = rng.randrange(
            state.ledger.size if state.ledger is not None else state.decorated.seed.size
        )
        try:
            state = mutate_state(state, k)
        except Exception:
            break
    assert state_from_json(state_to_json(state)) == state
    assert render_state(state_from_json(state_to_json(state))) == render_state(state)


def test_undo_restores_bytes():
    store = SessionStore()
    session = store.create({"example": "vianna-p2"})
    before = render_state(session.state)
    session.mutate(2)
    assert render_state(session.state) != before
    session.undo()
    assert render_state(session.state) == before


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_examples(capsys):
    assert cli_main(["examples"]) == 0
    out = capsys.readouterr().out
    assert "vianna-p2" in out and "seed:a3" in out


def test_cli_mutate_vianna(capsys):
    assert cli_main(["mutate", "--example", "vianna-p2", "--sequence", "3"]) == 0
    out = capsys.readouterr().out
    assert "(1, -1) (-5, -1) (2, 1)" in out
    assert "{1->3:3, 2->1:6, 3->2:3}" in out


def test_cli_mutate_involution(capsys):
    assert cli_main(["mutate", "--example", "a2", "--sequence", "1,1", "--json"]) == 0
    state = json.loads(capsys.readouterr().out)
    fresh = json.loads(render_state(initial_state({"example": "a2"})))
    fresh["history"] = [1, 1]
    assert state == fresh


def test_cli_blocked_mutation_exit_code(capsys):
    code = cli_main(
        [
            "mutate",
            "--config",
            str(DATA / "twocurves-opposite.json"),
            "--sequence",
            "2,1",
        ]
    )
    assert code == 2
    assert "step 2" in capsys.readouterr().err


def test_cli_parse_errors(capsys):
    assert cli_main(["mutate", "--example", "nope"]) == 1
    assert cli_main(["mutate", "--example", "a2", "--sequence", "x"]) == 1
    assert cli_main(["mutate", "--example", "a2", "--sequence", "7"]) == 1


def test_cli_budget_exit_code(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("MUTWB_BUDGET", "10")
    code = cli_main(["mutate", "--example", "vianna-p2", "--sequence", "3,1,2,3,1,2"])
    assert code == 3


def test_cli_explore_and_export(tmp_path, capsys):
    assert cli_main(["explore", "--seed", "a2", "--depth", "10"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["complete"] and len(doc["vertices"]) == 5

    assert cli_main(["explore", "--example", "vianna-p2", "--depth", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["layer_sizes"] == [1, 3, 6, 12]

    out_file = tmp_path / "quiver.dot"
    assert cli_main(["export", "--example", "vianna-p2", "--dot", "--out", str(out_file)]) == 0
    assert 'label="3"' in out_file.read_text()

    assert cli_main(["export", "--seed", "a3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "seed"


# ---------------------------------------------------------------------------
# HTTP service
# ---------------------------------------------------------------------------

@pytest.fixture()
def server():
    srv = make_server(0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.server_close()


def _call(srv, method, path, body=None):
    port = srv.server_address[1]
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}{path}", data=data, method=method
    )
    if data:
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read().decode())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode())


def test_service_session_flow(server):
    status, listing = _call(server, "GET", "/api/examples")
    assert status == 200 and "vianna-p2" in listing["examples"]

    status, doc = _call(server, "POST", "/api/sessions", {"example": "vianna-p2"})
    assert status == 201
    sid = doc["id"]
    assert doc["state"]["reduced_quiver"]["arrows"] == [[0, 3, 0], [0, 0, 3], [3, 0, 0]]

    status, doc2 = _call(server, "POST", f"/api/sessions/{sid}/mutations", {"index": 3})
    assert status == 200
    assert doc2["state"]["reduced_quiver"]["arrows"] == [[0, 0, 3], [6, 0, 0], [0, 3, 0]]
    assert doc2["state"]["classes"] == [[1, -1], [-5, -1], [2, 1]]

    status, doc3 = _call(server, "POST", f"/api/sessions/{sid}/undo")
    assert status == 200
    assert doc3 == doc

    status, graph = _call(server, "GET", f"/api/sessions/{sid}/exchange?depth=2")
    assert status == 200
    assert graph["layer_sizes"] == [1, 3, 6]


def test_service_errors(server):
    assert _call(server, "GET", "/api/sessions/ghost")[0] == 404
    assert _call(server, "POST", "/api/sessions", {"example": "nope"})[0] == 422
    status, doc = _call(server, "POST", "/api/sessions", {"example": "twocurves-opposite"})
    sid = doc["id"]
    status, _ = _call(server, "POST", f"/api/sessions/{sid}/mutations", {"index": 2})
    assert status == 200
    status, err = _call(server, "POST", f"/api/sessions/{sid}/mutations", {"index": 1})
    assert status == 409 and err["reason"] == "not-simple"
    status, err = _call(server, "POST", f"/api/sessions/{sid}/mutations", {"index": "x"})
    assert status == 422
    status, _ = _call(server, "POST", f"/api/sessions/{sid}/undo")
    status, _ = _call(server, "POST", f"/api/sessions/{sid}/undo")
    status, err = _call(server, "POST", f"/api/sessions/{sid}/undo")
    assert status == 409 and err["reason"] == "nothing-to-undo"


def test_service_not_regular(server):
    payload = {
        "config": {"classes": [[0, 1]]},
        "character": {"a": "2", "b": "1"},
    }
    status, doc = _call(server, "POST", "/api/sessions", payload)
    assert status == 201
    status, err = _call(
        server, "POST", f"/api/sessions/{doc['id']}/mutations", {"index": 1}
    )
    assert status == 409 and err["reason"] == "not-regular"


def test_cli_service_parity(server):
    word = [3, 3, 1]
    status, doc = _call(server, "POST", "/api/sessions", {"example": "vianna-p2"})
    sid = doc["id"]
    for index in word:
        status, doc = _call(server, "POST", f"/api/sessions/{sid}/mutations", {"index": index})
        assert status == 200
    service_bytes = json.dumps(doc["state"], sort_keys=True, separators=(",", ":"))

    state = initial_state({"example": "vianna-p2"})
    for index in word:
        state = mutate_state(state, index - 1)
    assert render_state(state) == service_bytes


def test_service_serves_ui_bundle_when_built(server):
    bundle = Path(__file__).parent.parent / "frontend" / "dist" / "index.html"
    if not bundle.exists():
        pytest.skip("UI bundle not built")
    port = server.server_address[1]
    with urllib.request.urlopen(f"http://127.0.0.1:{port}/") as resp:
        assert resp.status == 200
        assert b"mutation workbench" in resp.read()


def test_journal_replay(tmp_path):
    journal = tmp_path / "journal.ndjson"
    srv = make_server(0, journal_path=str(journal))
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    try:
        status, doc = _call(srv, "POST", "/api/sessions", {"example": "a2"})
        sid = doc["id"]
        _call(srv, "POST", f"/api/sessions/{sid}/mutations", {"index": 1})
        status, before = _call(srv, "GET", f"/api/sessions/{sid}")
    finally:
        srv.shutdown()
        srv.server_close()

    srv2 = make_server(0, journal_path=str(journal))
    thread = threading.Thread(target=srv2.serve_forever, daemon=True)
    thread.start()
    try:
        status, after = _call(srv2, "GET", f"/api/sessions/{sid}")
        assert status == 200
        assert after == before
    finally:
        srv2.shutdown()
        srv2.server_close()
