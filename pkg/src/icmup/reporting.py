"""Run reports and deterministic number formatting for the CLI."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal


def format_bits(value: float) -> str:
    """Three decimals, halves rounded away from zero; stable across runs."""
    value = float(value) + 0.0  # normalise -0.0
    return str(Decimal(str(value)).quantize(Decimal("0.001"),
                                            rounding=ROUND_HALF_UP))


def file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class RunReport:
    """Summary of one CLI run: inputs by digest plus the cost accounting."""

    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    raw_bits: float = 0.0
    encoded_bits: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        if self.raw_bits > 0:
            return self.encoded_bits / self.raw_bits
        return 1.0

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "raw_bits": self.raw_bits,
            "encoded_bits": self.encoded_bits,
            "ratio": self.ratio,
            "details": self.details,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())
