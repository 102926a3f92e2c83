"""Chat-completion gateway with a scripted offline backend.

The HTTP backend speaks the de-facto chat-completions wire format
({model, messages, temperature} -> {choices[{message{content}}], usage?}).
The scripted backend replays a transcript deterministically and fails loudly
when it runs out, which is what the test suite and corpus runs build on.
Every call produces exactly one CallRecord; API keys never enter records,
logs, or prompts.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import GatewayAuthError, GatewayUnavailable, ScriptExhausted

PURPOSES = ("breakpoint", "instrument", "direct_repair", "debug_repair",
            "augment")


def estimate_tokens(text: str) -> int:
    """ceil(len/4): consistent, model-agnostic accounting estimate."""
    return (len(text) + 3) // 4


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class GatewayConfig:
    backend: str = "scripted"  # "http" | "scripted"
    endpoint: str = ""
    model: str = ""
    api_key_env: str = "TRACEFIX_API_KEY"
    temperature: float = 1.0
    max_tokens: int | None = None
    retry_attempts: int = 3
    retry_backoff: float = 1.0
    transcript_path: str | None = None
    transcript_entries: list | None = None
    requests_per_minute: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")
        if self.backend not in ("http", "scripted"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == "scripted" and self.transcript_path is None \
                and self.transcript_entries is None:
            raise ValueError("scripted backend requires a transcript")


@dataclass
class CallRecord:
    purpose: str
    prompt_sha256: str
    reply_sha256: str
    prompt_tokens: int
    reply_tokens: int
    latency: float


class ScriptedBackend:
    """Replays transcript entries in order, matched by purpose.

    An entry is either a bare string (matches any purpose) or a dict
    {"purpose": ..., "content": ...}; content may be a list of variants, in
    which case the seeded RNG picks one.
    """

    def __init__(self, entries: list, seed: int | None = None):
        self.entries = [self._norm(e) for e in entries]
        self.consumed = [False] * len(self.entries)
        self.rng = random.Random(seed)

    @staticmethod
    def _norm(entry) -> dict:
        if isinstance(entry, str):
            return {"purpose": None, "content": entry}
        return {"purpose": entry.get("purpose"), "content": entry["content"]}

    @classmethod
    def from_file(cls, path: str | Path, seed: int | None = None
                  ) -> "ScriptedBackend":
        data = json.loads(Path(path).read_text())
        entries = data["entries"] if isinstance(data, dict) else data
        return cls(entries, seed)

    def chat(self, messages: list[dict], purpose: str) -> str:
        for i, entry in enumerate(self.entries):
            if self.consumed[i]:
                continue
            if entry["purpose"] is not None and entry["purpose"] != purpose:
                continue
            self.consumed[i] = True
            content = entry["content"]
            if isinstance(content, list):
                return content[self.rng.randrange(len(content))]
            return content
        raise ScriptExhausted(
            f"transcript exhausted at call with purpose {purpose!r} "
            f"({sum(self.consumed)}/{len(self.entries)} entries used)")


class HttpBackend:
    def __init__(self, config: GatewayConfig):
        self.config = config
        self.last_usage: dict | None = None

    def _api_key(self) -> str:
        key = os.environ.get(self.config.api_key_env, "")
        if not key:
            raise GatewayAuthError(
                f"no API key in ${self.config.api_key_env}")
        return key

    def chat(self, messages: list[dict], purpose: str) -> str:
        import requests

        payload = {
            "model": self.config.model,
            "messages": messages,
            "temperature": self.config.temperature,
        }
        if self.config.max_tokens:
            payload["max_tokens"] = self.config.max_tokens
        headers = {"Authorization": f"Bearer {self._api_key()}",
                   "Content-Type": "application/json"}
        last_error: Exception | None = None
        for attempt in range(max(1, self.config.retry_attempts)):
            if attempt:
                time.sleep(self.config.retry_backoff * attempt)
            try:
                resp = requests.post(self.config.endpoint, json=payload,
                                     headers=headers, timeout=120)
            except requests.RequestException as exc:
                last_error = exc
                continue
            if resp.status_code in (401, 403):
                raise GatewayAuthError(f"auth failed: HTTP {resp.status_code}")
            if resp.status_code == 429 or resp.status_code >= 500:
                last_error = GatewayUnavailable(f"HTTP {resp.status_code}")
                continue
            try:
                data = resp.json()
                self.last_usage = data.get("usage")
                return data["choices"][0]["message"]["content"]
            except (KeyError, IndexError, ValueError) as exc:
                raise GatewayUnavailable(f"malformed response: {exc}") from exc
        raise GatewayUnavailable(f"retries exhausted: {last_error}")


class Gateway:
    """Uniform chat interface plus per-call accounting."""

    def __init__(self, config: GatewayConfig):
        self.config = config
        if config.backend == "scripted":
            if config.transcript_entries is not None:
                self.backend = ScriptedBackend(config.transcript_entries,
                                               config.seed)
            else:
                self.backend = ScriptedBackend.from_file(
                    config.transcript_path, config.seed)
        else:
            self.backend = HttpBackend(config)
        self.records: list[CallRecord] = []
        self._window: list[float] = []

    def chat(self, messages: list[dict], purpose: str) -> str:
        self._rate_limit()
        prompt_text = "\n".join(m["content"] for m in messages)
        started = time.monotonic()
        reply = self.backend.chat(messages, purpose)
        latency = time.monotonic() - started
        prompt_tokens = estimate_tokens(prompt_text)
        reply_tokens = estimate_tokens(reply)
        usage = getattr(self.backend, "last_usage", None)
        if usage:
            prompt_tokens = usage.get("prompt_tokens", prompt_tokens)
            reply_tokens = usage.get("completion_tokens", reply_tokens)
        self.records.append(CallRecord(
            purpose, sha256_text(prompt_text), sha256_text(reply),
            prompt_tokens, reply_tokens, latency))
        return reply

    def _rate_limit(self) -> None:
        rpm = self.config.requests_per_minute
        if not rpm:
            return
        now = time.monotonic()
        self._window = [t for t in self._window if now - t < 60.0]
        if len(self._window) >= rpm:
            time.sleep(60.0 - (now - self._window[0]))
        self._window.append(time.monotonic())

    def calls_for(self, *purposes: str) -> int:
        return sum(1 for r in self.records if r.purpose in purposes)

    def total_tokens(self) -> int:
        return sum(r.prompt_tokens + r.reply_tokens for r in self.records)
