"""Per-round CEGIS transcript written as JSON lines"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import jsonlines

from src.oracles.counterexample import Counterexample, Implication, Positive

logger = logging.getLogger("strchc")


def round_record(round_no: int, learner: str, hypothesis_size: int,
                 cex: Optional[Counterexample], elapsed: float) -> Dict[str, Any]:
    record: Dict[str, Any] = {
        "round": round_no,
        "learner": learner,
        "hypothesis_size": hypothesis_size,
        "counterexample": None,
        "words": [],
        "clause_index": None,
        "elapsed_seconds": round(elapsed, 4),
    }
    if cex is not None:
        if isinstance(cex.kind, Implication):
            record["counterexample"] = "implication"
        else:
            record["counterexample"] = "positive" if isinstance(cex.kind, Positive) else "negative"
        record["words"] = list(cex.words)
        record["clause_index"] = cex.clause_index
    return record


class TranscriptWriter:
    """Appends one record per round; a no-op when no path is given"""

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self.path = Path(path) if path else None
        self._writer = None
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._writer = jsonlines.open(self.path, mode="w", flush=True)

    def write(self, record: Dict[str, Any]) -> None:
        if self._writer is not None:
            self._writer.write(record)

    def close(self) -> None:
        if self._writer is not None:
            self._writer.close()
            self._writer = None
            logger.debug(f"Round transcript written to {self.path}")

    def __enter__(self) -> "TranscriptWriter":
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()


def read_transcript(path: Union[str, Path]) -> List[Dict[str, Any]]:
    with jsonlines.open(path) as reader:
        return list(reader)
