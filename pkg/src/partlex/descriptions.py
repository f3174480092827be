"""Description records and their JSON Lines serialization.

A description is an ordered list of (what-phrase, where-phrase) steps tied
to a stimulus; the same format is used for synthetic corpora and for
ingesting externally collected data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DataError
from .stimgen import atomic_write_text


@dataclass(frozen=True)
class Description:
    stimulus_id: str
    participant_id: str
    steps: tuple  # of (what, where) text pairs

    def __post_init__(self):
        if not self.steps:
            raise DataError("description needs at least one step")

    def what_words(self, normalizer=None):
        """Whitespace-split words from the what-phrases, in step order."""
        words = []
        for what, _ in self.steps:
            words.extend(normalizer(what) if normalizer else what.split())
        return words


def write_descriptions(descriptions, path: str):
    lines = []
    for d in descriptions:
        lines.append(
            json.dumps(
                {
                    "stimulus_id": d.stimulus_id,
                    "participant_id": d.participant_id,
                    "steps": [{"what": w, "where": h} for w, h in d.steps],
                },
                sort_keys=True,
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_descriptions(path: str) -> list:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON ({exc})")
            try:
                steps = tuple(
                    (s["what"], s.get("where", "")) for s in record["steps"]
                )
                out.append(
                    Description(
                        stimulus_id=record["stimulus_id"],
                        participant_id=str(record.get("participant_id", "")),
                        steps=steps,
                    )
                )
            except (KeyError, TypeError) as exc:
                raise DataError(f"{path}:{lineno}: malformed record ({exc})")
    return out
