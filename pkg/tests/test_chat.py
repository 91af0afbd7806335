from __future__ import annotations

import json

import pytest

from lexilevel.chat import BackendError, HttpChatBackend, StaticChatBackend


class FakeResponse:
    def __init__(self, status_code: int, payload=None, text: str = ""):
        self.status_code = status_code
        self._payload = payload
        self.text = text or (json.dumps(payload) if payload is not None else "")

    def json(self):
        if self._payload is None:
            raise json.JSONDecodeError("empty", "", 0)
        return self._payload


class FakeSession:
    """Replays a scripted sequence of responses/exceptions."""

    def __init__(self, script):
        self.script = list(script)
        self.requests = []

    def post(self, url, json=None, headers=None, timeout=None):
        self.requests.append({"url": url, "json": json, "headers": headers})
        item = self.script.pop(0)
        if isinstance(item, Exception):
            raise item
        return item


def _backend(script, **kwargs) -> HttpChatBackend:
    backend = HttpChatBackend(base_url="http://judge.local/v1", model="judge-1", **kwargs)
    backend.backoff = 0.0
    backend._session = FakeSession(script)
    return backend


def _ok(content: str) -> FakeResponse:
    return FakeResponse(200, {"choices": [{"message": {"content": content}}]})


def test_happy_path_builds_expected_request(monkeypatch):
    monkeypatch.setenv("LEXI_API_KEY", "sk-test")
    backend = _backend([_ok("2")], temperature=0.0, reasoning_effort="high")
    assert backend.complete("system text", "user text") == "2"
    request = backend._session.requests[0]
    assert request["url"] == "http://judge.local/v1/chat/completions"
    assert request["json"]["model"] == "judge-1"
    assert request["json"]["temperature"] == 0.0
    assert request["json"]["reasoning_effort"] == "high"
    assert request["json"]["messages"] == [
        {"role": "system", "content": "system text"},
        {"role": "user", "content": "user text"},
    ]
    assert request["headers"]["Authorization"] == "Bearer sk-test"


def test_knobs_omitted_when_unset(monkeypatch):
    monkeypatch.delenv("LEXI_API_KEY", raising=False)
    backend = _backend([_ok("ok")])
    backend.complete("s", "u")
    request = backend._session.requests[0]
    assert "temperature" not in request["json"]
    assert "reasoning_effort" not in request["json"]
    assert "Authorization" not in request["headers"]


def test_retries_on_429_then_succeeds():
    backend = _backend([FakeResponse(429, text="slow down"), _ok("fine")], max_retries=2)
    assert backend.complete("s", "u") == "fine"


def test_retries_on_transport_error():
    import requests

    backend = _backend([requests.ConnectionError("boom"), _ok("fine")], max_retries=1)
    assert backend.complete("s", "u") == "fine"


def test_gives_up_after_budget():
    backend = _backend(
        [FakeResponse(503, text="down"), FakeResponse(503, text="down")], max_retries=1
    )
    with pytest.raises(BackendError) as excinfo:
        backend.complete("s", "u")
    assert excinfo.value.status == 503


def test_client_error_fails_immediately():
    backend = _backend([FakeResponse(401, text="no key")], max_retries=3)
    with pytest.raises(BackendError) as excinfo:
        backend.complete("s", "u")
    assert excinfo.value.status == 401
    assert backend._session.script == []  # nothing retried


def test_malformed_body_is_backend_error():
    backend = _backend([FakeResponse(200, {"unexpected": True})])
    with pytest.raises(BackendError):
        backend.complete("s", "u")


def test_static_backend_counts_calls():
    backend = StaticChatBackend("B1")
    assert backend.complete("s", "u") == "B1"
    assert backend.complete("s", "u") == "B1"
    assert backend.calls == 2
