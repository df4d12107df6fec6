"""Batch decision of equation files: one record per input line, in input order."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from models.decision import CorpusRecord
from services.decider import decide, verify_witness
from services.errors import WeakIndError
from services.parser import parse_equation

logger = logging.getLogger(__name__)


def corpus_lines(text: str) -> List[Tuple[int, str]]:
    """(line number, content) for every line that is neither blank nor a `#` comment."""
    found = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            found.append((number, line))
    return found


def decide_line(entry: Tuple[int, str]) -> CorpusRecord:
    number, line = entry
    try:
        s, t = parse_equation(line)
        decision = decide(s, t)
        verified = verify_witness(s, t, decision) if decision.witness is not None else None
    except WeakIndError as exc:
        logger.warning("corpus line %d skipped: %s", number, exc)
        return CorpusRecord(line=number, input=line, error=str(exc))
    return CorpusRecord(line=number, input=line, decision=decision, verified=verified)


def run_corpus(source: Union[str, Path, Iterable[str]], workers: int = 1) -> List[CorpusRecord]:
    """Decide every equation of a corpus; malformed lines become error records."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = "\n".join(source)
    entries = corpus_lines(text)
    if workers <= 1:
        return [decide_line(entry) for entry in entries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(decide_line, entries))


def render_records(records: Iterable[CorpusRecord], fmt: Optional[str] = "json") -> str:
    if fmt == "text":
        lines = []
        for r in records:
            if r.error is not None:
                lines.append(f"{r.line}: error: {r.error}")
            else:
                lines.append(f"{r.line}: {r.decision.status.value} ({r.decision.case.value})")
        return "\n".join(lines)
    return "\n".join(r.model_dump_json() for r in records)
