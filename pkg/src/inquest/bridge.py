"""Subprocess bridge to external question generators.

An external agent is any program speaking the newline-delimited JSON
protocol on its standard streams:

    harness -> agent   {"type": "hello", "protocol": 1, "case_id": ...}
    agent -> harness   {"type": "ready"}
    harness -> agent   {"type": "view", ...view fields..., "kiu_catalog": [...]}
    agent -> harness   {"type": "question", "text": ..., "target_keys": [...]}
    harness -> agent   {"type": "end", "reason": ...}

One JSON object per line.  Malformed or unexpected messages abort the
episode with ProtocolViolation; the harness scores that episode as
stalled rather than crashing the experiment.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading

from .agents import AgentConfig, AgentKind, InquirerAgent, InquirerView
from .errors import (
    EpisodeComplete,
    HandshakeTimeout,
    LaunchFailed,
    ProtocolViolation,
)
from .schema import TargetSchema

PROTOCOL_VERSION = 1

_EOF = object()


class _RecvTimeout(ProtocolViolation):
    """No line arrived in time (process may still be alive)."""


class _RecvClosed(ProtocolViolation):
    """The agent's stdout reached EOF."""


def _catalog(schema: TargetSchema) -> list[dict]:
    return [
        {
            "id": k.id,
            "description": k.description,
            "answer_key": k.answer_key,
            "stage_id": k.stage_id,
        }
        for k in schema.kius
    ]


class ExternalAgent(InquirerAgent):
    """Drive one subprocess for the lifetime of one episode."""

    kind = AgentKind.EXTERNAL

    def __init__(self, config: AgentConfig, schema: TargetSchema):
        self.config = config
        self.schema = schema
        self._closed = False
        try:
            self._proc = subprocess.Popen(
                shlex.split(config.external_command or ""),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise LaunchFailed(f"could not launch {config.external_command!r}: {exc}")
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self._handshake()

    def _pump(self) -> None:
        assert self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(_EOF)

    def _send(self, message: dict) -> None:
        assert self._proc.stdin is not None
        try:
            self._proc.stdin.write(json.dumps(message) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise ProtocolViolation(f"agent pipe closed while sending: {exc}")

    def _recv(self, timeout: float) -> dict:
        try:
            line = self._lines.get(timeout=timeout)
        except queue.Empty:
            raise _RecvTimeout(f"no reply from agent within {timeout:.1f}s")
        if line is _EOF:
            raise _RecvClosed("agent closed its output stream")
        try:
            message = json.loads(line)
        except json.JSONDecodeError:
            raise ProtocolViolation(f"agent sent non-JSON line: {line!r:.200}")
        if not isinstance(message, dict) or "type" not in message:
            raise ProtocolViolation(f"agent sent object without a type: {line!r:.200}")
        return message

    def _handshake(self) -> None:
        self._send(
            {
                "type": "hello",
                "protocol": PROTOCOL_VERSION,
                "case_id": self.schema.case_id,
            }
        )
        try:
            reply = self._recv(self.config.handshake_timeout_s)
        except ProtocolViolation as exc:
            # Distinguish a dead process from a silent or garbled one.  An
            # EOF usually means the process is going down; give it a moment
            # to finish so the exit status is available.
            if isinstance(exc, _RecvClosed):
                try:
                    self._proc.wait(timeout=2.0)
                except subprocess.TimeoutExpired:
                    pass
            if self._proc.poll() is not None:
                raise LaunchFailed(
                    f"agent exited with status {self._proc.returncode} before ready"
                ) from exc
            if isinstance(exc, _RecvTimeout):
                raise HandshakeTimeout(str(exc)) from exc
            raise
        if reply.get("type") != "ready":
            raise ProtocolViolation(f"expected ready, got {reply.get('type')!r}")

    def next_question(self, view: InquirerView):
        from .witness import Question

        if not view.unmet_all:
            raise EpisodeComplete("all units filled; no question to ask")
        self._send(
            {
                "type": "view",
                "turn": view.turn,
                "current_stage": view.current_stage,
                "unmet_mandatory": list(view.unmet_mandatory),
                "unmet_all": list(view.unmet_all),
                "filled_count": view.filled_count,
                "schema_size": view.schema_size,
                "last_answer_kind": (
                    view.last_answer_kind.value if view.last_answer_kind else None
                ),
                "kiu_catalog": _catalog(self.schema),
            }
        )
        reply = self._recv(self.config.handshake_timeout_s)
        if reply.get("type") != "question":
            raise ProtocolViolation(f"expected question, got {reply.get('type')!r}")
        text = reply.get("text")
        keys = reply.get("target_keys")
        if not isinstance(text, str):
            raise ProtocolViolation("question.text must be a string")
        if not isinstance(keys, list) or not all(isinstance(k, str) for k in keys):
            raise ProtocolViolation("question.target_keys must be a list of strings")
        return Question(turn=view.turn, text=text, target_keys=frozenset(keys))

    def close(self) -> None:
        if self._closed:
            return
        self._closed = True
        try:
            self._send({"type": "end", "reason": "episode over"})
        except ProtocolViolation:
            pass
        try:
            self._proc.terminate()
            self._proc.wait(timeout=5)
        except (OSError, subprocess.TimeoutExpired):
            self._proc.kill()
        if self._proc.stdin:
            self._proc.stdin.close()
