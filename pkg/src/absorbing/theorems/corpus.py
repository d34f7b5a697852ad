"""The ring corpus: which specs the suite runs over.

File format is one spec per line; ``#`` starts a comment and a trailing
``slow`` word marks the entry as slow-tier only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from pathlib import Path

from ..errors import InvalidSpec
from ..ring import DEFAULT_CAP

PRODUCT_FACTORS = (2, 3, 4, 5, 8, 9)


@dataclass(frozen=True)
class CorpusEntry:
    spec: str
    slow: bool = False
    note: str = ""


def default_corpus(cap: int = DEFAULT_CAP) -> list[CorpusEntry]:
    out = [CorpusEntry(f"Z{n}", note="integers mod n") for n in range(2, 65)]
    for k in (2, 3):
        for combo in combinations_with_replacement(PRODUCT_FACTORS, k):
            order = 1
            for n in combo:
                order *= n
            if order <= cap:
                out.append(CorpusEntry(" x ".join(f"Z{n}" for n in combo), note=f"{k}-factor product"))
    out += [
        CorpusEntry("Z8 (+) {0,4}", note="idealization, natural action"),
        CorpusEntry("Z4 (+) {0,2}", note="idealization, natural action"),
        CorpusEntry("Z16 / (8)", note="quotient"),
        CorpusEntry("Z27 / (9)", note="quotient"),
        # a factor with a weakly prime, non-prime ideal, to exercise product converses
        CorpusEntry("Z4 (+) {0,2} x Z2", note="idealization times field"),
        CorpusEntry("idealization(Z8 x Z8, proj1, {0,4})", slow=True, note="first-coordinate action"),
    ]
    return out


def parse_corpus(text: str) -> list[CorpusEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        slow = False
        words = line.rsplit(None, 1)
        if len(words) == 2 and words[1] == "slow":
            line, slow = words[0].strip(), True
        elif line == "slow":
            raise InvalidSpec(f"corpus line {lineno}: 'slow' tag without a spec")
        out.append(CorpusEntry(line, slow=slow))
    return out


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidSpec(f"cannot read corpus {path}: {exc.strerror}") from exc
    return parse_corpus(text)


def format_corpus(entries: list[CorpusEntry]) -> str:
    lines = []
    for e in entries:
        line = e.spec + (" slow" if e.slow else "")
        if e.note:
            line += f"  # {e.note}"
        lines.append(line)
    return "\n".join(lines) + "\n"
