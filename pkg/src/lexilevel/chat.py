"""Chat-completion backends.

The HTTP backend speaks the common ``/chat/completions`` JSON protocol
against a configurable base URL and model. The API key is read from an
environment variable only, never from config files or flags.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

import requests

from .errors import LexiLevelError

DEFAULT_API_KEY_ENV = "LEXI_API_KEY"


class BackendError(LexiLevelError):
    """Transport or HTTP failure talking to a model backend."""

    def __init__(self, status: int | None, body: str):
        super().__init__(f"backend error (status={status}): {body[:500]}")
        self.status = status
        self.body = body


class ChatBackend:
    """Interface: turn a (system, user) message pair into reply text."""

    def complete(self, system: str, user: str) -> str:
        raise NotImplementedError


@dataclass
class StaticChatBackend(ChatBackend):
    """Returns a fixed reply; a zero-cost stand-in for dry runs and CI."""

    reply: str
    calls: int = 0

    def complete(self, system: str, user: str) -> str:
        self.calls += 1
        return self.reply


@dataclass
class HttpChatBackend(ChatBackend):
    """Chat-completion client with bounded retries and backoff.

    ``temperature`` and ``reasoning_effort`` pass through to the request
    untouched when set; retries apply to transport errors, HTTP 429, and
    5xx responses.
    """

    base_url: str
    model: str
    api_key_env: str = DEFAULT_API_KEY_ENV
    temperature: float | None = None
    reasoning_effort: str | None = None
    timeout: float = 60.0
    max_retries: int = 3
    backoff: float = 0.5
    calls: int = 0
    _session: requests.Session = field(default_factory=requests.Session, repr=False)

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def _payload(self, system: str, user: str) -> dict:
        payload: dict = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
        }
        if self.temperature is not None:
            payload["temperature"] = self.temperature
        if self.reasoning_effort is not None:
            payload["reasoning_effort"] = self.reasoning_effort
        return payload

    def complete(self, system: str, user: str) -> str:
        url = self.base_url.rstrip("/") + "/chat/completions"
        payload = self._payload(system, user)
        last_error: BackendError | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                response = self._session.post(
                    url, json=payload, headers=self._headers(), timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_error = BackendError(None, str(exc))
                continue
            self.calls += 1
            if response.status_code == 429 or response.status_code >= 500:
                last_error = BackendError(response.status_code, response.text)
                continue
            if response.status_code != 200:
                raise BackendError(response.status_code, response.text)
            try:
                data = response.json()
                return data["choices"][0]["message"]["content"]
            except (json.JSONDecodeError, LookupError, TypeError) as exc:
                raise BackendError(response.status_code, f"malformed response: {exc}") from None
        assert last_error is not None
        raise last_error
