"""Interactive sessions: state snapshots, mutation, undo, and the wire
format shared verbatim by the CLI and the HTTP service.

A session holds an undo stack of immutable states.  Seed sessions carry a
decorated seed; configuration sessions additionally carry classes, the
crossing ledger (re-straightened for geodesics after every step), and an
optional rank-1 character.  Ledger-only sessions track just the crossing
bookkeeping of a non-geodesic configuration.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass

from .curves import (
    GeodesicConfig,
    IntersectionLedger,
    example_config,
    is_mutable,
    ledger_from_geodesics,
    ledger_from_json,
    ledger_to_json,
    mutate_geodesics,
    mutate_ledger,
    seed_of_config,
)
from .errors import NotSimple, WorkbenchError
from .exchange import DecoratedSeed, expression_budget, mutate_decorated, root_decorated
from .laurent import parse_rational_expr, term_limit
from .localsystems import (
    Character,
    character_from_json,
    character_to_json,
    mutate_character,
)
from .quivers import quiver_of_seed, quiver_to_json, reduce_quiver, quiver_from_arrows
from .seeds import mutate_seed, named_seed, seed_from_json, seed_to_json


@dataclass(frozen=True)
class SessionState:
    decorated: DecoratedSeed | None
    classes: tuple | None
    ledger: IntersectionLedger | None
    character: Character | None
    history: tuple[int, ...]

    @property
    def kind(self) -> str:
        if self.classes is not None:
            return "config"
        if self.ledger is not None:
            return "ledger"
        return "seed"


class MalformedPayload(WorkbenchError):
    """A session payload failed validation."""


def initial_state(payload: dict) -> SessionState:
    if not isinstance(payload, dict):
        raise MalformedPayload("payload must be a JSON object")
    keys = [k for k in ("example", "seed", "config") if k in payload]
    if len(keys) != 1:
        raise MalformedPayload("payload needs exactly one of: example, seed, config")
    source = keys[0]
    character = None
    if "character" in payload and payload["character"] is not None:
        try:
            character = character_from_json(payload["character"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedPayload(f"bad character: {exc}") from exc

    if source == "example":
        try:
            data = example_config(str(payload["example"]))
        except KeyError as exc:
            raise MalformedPayload(str(exc)) from exc
    elif source == "config":
        raw = payload["config"]
        if not isinstance(raw, dict):
            raise MalformedPayload("config must be an object")
        if "classes" in raw:
            try:
                data = {"classes": tuple(tuple(v) for v in raw["classes"])}
            except (TypeError, ValueError) as exc:
                raise MalformedPayload(f"bad classes: {exc}") from exc
        elif "ledger" in raw:
            try:
                data = {"ledger": ledger_from_json(raw["ledger"])}
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedPayload(f"bad ledger: {exc}") from exc
        else:
            raise MalformedPayload("config needs classes or a ledger")
    else:
        raw = payload["seed"]
        try:
            seed = named_seed(raw) if isinstance(raw, str) else seed_from_json(raw)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedPayload(f"bad seed: {exc}") from exc
        if character is not None:
            raise MalformedPayload("characters attach to curve configurations only")
        return SessionState(root_decorated(seed), None, None, None, ())

    if "classes" in data:
        try:
            cfg = GeodesicConfig(tuple(data["classes"]))
        except (WorkbenchError, ValueError) as exc:
            raise MalformedPayload(f"bad classes: {exc}") from exc
        return SessionState(
            root_decorated(seed_of_config(cfg)),
            cfg.classes,
            ledger_from_geodesics(cfg),
            character,
            (),
        )
    if character is not None:
        raise MalformedPayload("characters attach to geodesic configurations only")
    return SessionState(None, None, data["ledger"], None, ())


def mutate_state(state: SessionState, k: int) -> SessionState:
    """Apply one mutation (0-based index) to every component jointly."""
    if state.ledger is not None:
        if not 0 <= k < state.ledger.size:
            raise IndexError(f"index {k} out of range")
        if not is_mutable(state.ledger, k):
            raise NotSimple(f"curve {k + 1} has self-crossings")
    decorated = state.decorated
    if decorated is not None:
        decorated.seed.check_index(k)

    character = state.character
    classes = state.classes
    ledger = state.ledger
    if classes is not None:
        cfg = GeodesicConfig(classes)
        if character is not None:
            character = mutate_character(character, cfg, k)
        new_cfg = mutate_geodesics(cfg, k)
        classes = new_cfg.classes
        ledger = ledger_from_geodesics(new_cfg)
    elif ledger is not None:
        ledger = mutate_ledger(ledger, k)
    if decorated is not None:
        with term_limit(expression_budget()):
            decorated = mutate_decorated(decorated, k)
    return SessionState(decorated, classes, ledger, character, state.history + (k,))


def state_to_json(state: SessionState) -> dict:
    doc: dict = {
        "kind": state.kind,
        "history": [k + 1 for k in state.history],
    }
    if state.decorated is not None:
        seed = state.decorated.seed
        doc["seed"] = seed_to_json(seed)
        doc["xvars"] = [x.render() for x in state.decorated.xvars]
        doc["reduced_quiver"] = quiver_to_json(quiver_of_seed(seed))
    if state.classes is not None:
        doc["classes"] = [list(v) for v in state.classes]
    if state.ledger is not None:
        doc["ledger"] = ledger_to_json(state.ledger)
        geometric = quiver_from_arrows(state.ledger.P, state.ledger.s)
        doc["quiver"] = quiver_to_json(geometric)
        if "reduced_quiver" not in doc:
            doc["reduced_quiver"] = quiver_to_json(reduce_quiver(geometric))
        doc["mutable"] = [is_mutable(state.ledger, k) for k in range(state.ledger.size)]
    elif state.decorated is not None:
        doc["mutable"] = [True] * state.decorated.seed.size
    if state.character is not None:
        doc["character"] = character_to_json(state.character)
    return doc


def state_from_json(doc: dict) -> SessionState:
    history = tuple(int(k) - 1 for k in doc.get("history", []))
    decorated = None
    if "seed" in doc:
        seed = seed_from_json(doc["seed"])
        xvars = tuple(parse_rational_expr(t, seed.rank) for t in doc["xvars"])
        root = seed
        for k in reversed(history):
            root = mutate_seed(root, k)
        decorated = DecoratedSeed(seed, xvars, history, root)
    classes = None
    if "classes" in doc:
        classes = tuple(tuple(v) for v in doc["classes"])
    ledger = ledger_from_json(doc["ledger"]) if "ledger" in doc else None
    character = character_from_json(doc["character"]) if "character" in doc else None
    return SessionState(decorated, classes, ledger, character, history)


def render_state(state: SessionState) -> str:
    """Canonical byte-stable JSON rendering shared by CLI and service."""
    return json.dumps(state_to_json(state), sort_keys=True, separators=(",", ":"))


class Session:
    def __init__(self, session_id: str, state: SessionState):
        self.id = session_id
        self.lock = threading.RLock()
        self.states: list[SessionState] = [state]

    @property
    def state(self) -> SessionState:
        return self.states[-1]

    def mutate(self, k: int) -> SessionState:
        with self.lock:
            new_state = mutate_state(self.state, k)
            self.states.append(new_state)
            return new_state

    def undo(self) -> SessionState:
        with self.lock:
            if len(self.states) == 1:
                raise WorkbenchError("nothing to undo")
            self.states.pop()
            return self.state


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._counter = 0

    def create(self, payload: dict) -> Session:
        state = initial_state(payload)
        with self._lock:
            self._counter += 1
            session = Session(f"s{self._counter}", state)
            self._sessions[session.id] = session
            return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)
