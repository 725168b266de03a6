"""SMT-LIB solver processes: interactive sessions and one-shot scripts"""

import logging
import queue
import shlex
import subprocess
import threading
from collections import deque
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from dotenv import dotenv_values
from pydantic import BaseModel, field_validator

from src.smtlib.model import SmtlibError, parse_model_values
from src.smtlib.serializer import preamble

logger = logging.getLogger("strchc")


class SpawnFailure(SmtlibError):
    pass


class HandshakeFailure(SmtlibError):
    pass


class SolverTimeout(SmtlibError):
    pass


class SolverError(SmtlibError):
    """Error response, crash or unknown answer; `transcript` holds the recent exchange"""

    def __init__(self, message: str, transcript: str = ""):
        super().__init__(message)
        self.transcript = transcript


class Answer(Enum):
    sat = "sat"
    unsat = "unsat"
    unknown = "unknown"


class SolverConfig(BaseModel):
    """External solver settings (key=value file)"""
    command: str
    args: List[str] = []
    logic: str = "QF_S"
    session_mode: str = "per-clause"
    timeout_ms: int = 10000
    interactive: bool = True

    @field_validator("command")
    @classmethod
    def validate_command(cls, v: str):
        if not v.strip():
            raise ValueError("command must not be empty")
        return v

    @field_validator("timeout_ms")
    @classmethod
    def validate_timeout(cls, v: int):
        if v <= 0:
            raise ValueError("timeout_ms must be positive")
        return v

    @field_validator("session_mode")
    @classmethod
    def validate_session_mode(cls, v: str):
        if v not in ("per-clause", "single"):
            raise ValueError(f"session_mode must be 'per-clause' or 'single', got {v!r}")
        return v

    @property
    def timeout(self) -> float:
        return self.timeout_ms / 1000.0

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SolverConfig":
        values = {k.lower(): v for k, v in dotenv_values(path).items() if v is not None}
        if "args" in values:
            values["args"] = shlex.split(values["args"])
        if "interactive" in values:
            values["interactive"] = values["interactive"].strip().lower() in ("1", "true", "yes", "on")
        return cls(**values)


class Session:
    """One solver process. Commands go to stdin line by line; a reader thread
    collects stdout so every response can be awaited with a timeout."""

    def __init__(self, config: SolverConfig, preamble: Sequence[str] = (),
                 clause_index: Optional[int] = None):
        self.config = config
        self.preamble = list(preamble)
        self.clause_index = clause_index
        self.depth = 0
        self.restarts = 0
        self.dead = False
        self.transcript = deque(maxlen=200)
        self._proc: Optional[subprocess.Popen] = None
        self._lines: "queue.Queue[Optional[str]]" = queue.Queue()

    @property
    def label(self) -> str:
        return "single" if self.clause_index is None else f"clause {self.clause_index}"

    def start(self) -> "Session":
        cmd = [self.config.command] + list(self.config.args)
        try:
            self._proc = subprocess.Popen(cmd, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                                          stderr=subprocess.DEVNULL, text=True, bufsize=1)
        except OSError as e:
            raise SpawnFailure(f"Cannot start solver {cmd[0]!r}: {e}") from e
        self._lines = queue.Queue()
        threading.Thread(target=self._pump, args=(self._proc, self._lines), daemon=True).start()
        self.depth = 0
        self._handshake()
        for command in self.preamble:
            self.send(command)
        logger.debug(f"Solver session ({self.label}) started: {' '.join(cmd)}")
        return self

    @staticmethod
    def _pump(proc: subprocess.Popen, lines: "queue.Queue[Optional[str]]") -> None:
        for line in proc.stdout:
            lines.put(line.rstrip("\n"))
        lines.put(None)

    def _handshake(self) -> None:
        for command in preamble(self.config.logic):
            self.send(command)
        self.send('(echo "ready")')
        try:
            reply = self.read_response()
        except SmtlibError as e:
            self.kill()
            raise HandshakeFailure(f"Solver did not answer the handshake: {e}") from e
        if reply.strip().strip('"') != "ready":
            self.kill()
            raise HandshakeFailure(f"Unexpected handshake reply {reply!r}")

    def send(self, command: str) -> None:
        if self._proc is None or self._proc.poll() is not None:
            raise SolverError("Solver process is not running", self.dump_transcript())
        self.transcript.append(f"> {command}")
        try:
            self._proc.stdin.write(command + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as e:
            raise SolverError(f"Lost connection to solver: {e}", self.dump_transcript()) from e

    def read_response(self, timeout: Optional[float] = None) -> str:
        """Next complete response: an atom or a balanced s-expression"""
        timeout = self.config.timeout if timeout is None else timeout
        parts: List[str] = []
        balance = 0
        while True:
            try:
                line = self._lines.get(timeout=timeout)
            except queue.Empty:
                raise SolverTimeout(f"No solver response within {timeout:.1f}s")
            if line is None:
                raise SolverError("Solver process exited", self.dump_transcript())
            self.transcript.append(f"< {line}")
            if not line.strip() and not parts:
                continue
            parts.append(line)
            balance += _paren_balance(line)
            if balance <= 0:
                return "\n".join(parts)

    def assert_term(self, term: str) -> None:
        self.send(f"(assert {term})")

    def push(self) -> None:
        self.send("(push 1)")
        self.depth += 1

    def pop(self) -> None:
        if self.depth == 0:
            raise SolverError("pop without matching push")
        self.depth -= 1
        self.send("(pop 1)")

    @contextmanager
    def scope(self) -> Iterator["Session"]:
        """push ... pop, popping on every exit path while the process is alive"""
        self.push()
        try:
            yield self
        finally:
            if self._proc is not None and self._proc.poll() is None:
                self.pop()
            else:
                self.depth = max(self.depth - 1, 0)

    def check_sat(self) -> Answer:
        self.send("(check-sat)")
        reply = self.read_response().strip()
        if reply.startswith("(error"):
            raise SolverError(f"Solver error: {reply}", self.dump_transcript())
        try:
            return Answer(reply)
        except ValueError:
            raise SolverError(f"Unexpected check-sat reply {reply!r}", self.dump_transcript())

    def get_values(self, names: Sequence[str]) -> Dict[str, str]:
        self.send(f"(get-value ({' '.join(names)}))")
        reply = self.read_response()
        if reply.strip().startswith("(error"):
            raise SolverError(f"Solver error: {reply}", self.dump_transcript())
        return parse_model_values(reply)

    def restart(self) -> None:
        """Respawn and replay the preamble once; a second failure marks the session dead"""
        self.kill()
        if self.restarts >= 1:
            self.dead = True
            raise SolverError(f"Solver session ({self.label}) failed twice", self.dump_transcript())
        self.restarts += 1
        logger.warning(f"Restarting solver session ({self.label})")
        self.start()

    def kill(self) -> None:
        if self._proc is not None:
            if self._proc.poll() is None:
                self._proc.kill()
            self._proc.wait()
            self._proc = None
        self.depth = 0

    def close(self) -> None:
        if self._proc is not None and self._proc.poll() is None:
            try:
                self.send("(exit)")
                self._proc.wait(timeout=1.0)
            except (SmtlibError, subprocess.TimeoutExpired):
                pass
        self.kill()

    def dump_transcript(self) -> str:
        return "\n".join(self.transcript)

    def __enter__(self) -> "Session":
        return self.start()

    def __exit__(self, exc_type, exc, tb):
        self.close()


def _paren_balance(line: str) -> int:
    balance = 0
    in_string = False
    for ch in line:
        if ch == '"':
            in_string = not in_string
        elif not in_string:
            if ch == "(":
                balance += 1
            elif ch == ")":
                balance -= 1
    return balance


def run_script(config: SolverConfig, script: str,
               value_vars: Sequence[str] = ()) -> Tuple[Answer, Optional[Dict[str, str]]]:
    """Pipe one standalone script into a fresh solver process and read its answer.

    The script ends with check-sat, optionally get-value, then exit. Values are
    parsed only after a sat answer.
    """
    cmd = [config.command] + list(config.args)
    try:
        done = subprocess.run(cmd, input=script, capture_output=True, text=True, timeout=config.timeout)
    except subprocess.TimeoutExpired:
        raise SolverTimeout(f"No solver answer within {config.timeout:.1f}s")
    except OSError as e:
        raise SpawnFailure(f"Cannot start solver {cmd[0]!r}: {e}") from e

    lines = [line for line in done.stdout.splitlines() if line.strip()]
    if not lines:
        raise SolverError(f"Solver exited with code {done.returncode} and no answer", script)
    reply = lines[0].strip()
    try:
        answer = Answer(reply)
    except ValueError:
        raise SolverError(f"Unexpected check-sat reply {reply!r}", script)
    if answer is not Answer.sat or not value_vars:
        return answer, None
    rest = "\n".join(lines[1:])
    if rest.strip().startswith("(error"):
        raise SolverError(f"Solver error: {rest}", script)
    return answer, parse_model_values(rest)


def open_session(config: SolverConfig, preamble: Sequence[str] = (),
                 clause_index: Optional[int] = None) -> Session:
    return Session(config, preamble, clause_index).start()
