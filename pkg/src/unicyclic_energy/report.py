"""Run reports: what was asked, what came back, in table / JSON / CSV form."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field

from . import __version__


def config_digest(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class RunReport:
    command: list[str]
    items: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    exit_code: int = 0
    wall_time: float = 0.0
    version: str = __version__
    config_digest: str = ""

    def add(self, item) -> None:
        if hasattr(item, "to_dict"):
            item = item.to_dict()
        elif not isinstance(item, dict):
            item = asdict(item)
        self.items.append(item)

    def to_json(self, indent: int | None = 2) -> str:
        # json keeps floats at full repr precision, so parsing gives them back exactly
        return json.dumps(asdict(self), indent=indent, allow_nan=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))

    def deterministic_view(self) -> dict:
        """Everything except wall time and per-run timestamps."""
        d = asdict(self)
        d.pop("wall_time")
        for it in d["items"]:
            it.pop("timestamp", None)
        return d

    def to_csv(self) -> str:
        keys: list[str] = []
        for it in self.items:
            for k in it:
                if k not in keys:
                    keys.append(k)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for it in self.items:
            w.writerow({k: _cell(it.get(k), full=True) for k in keys})
        return buf.getvalue()

    def to_table(self) -> str:
        lines = ["$ " + " ".join(self.command)]
        for it in self.items:
            lines.append("  " + "  ".join(f"{k}={_cell(v)}" for k, v in it.items() if not _bulky(v)))
        lines += ["  note: " + n for n in self.notes]
        lines.append(f"  exit={self.exit_code}  wall={self.wall_time:.2f}s  version={self.version}  config={self.config_digest}")
        return "\n".join(lines)


def _bulky(v) -> bool:
    return isinstance(v, (list, dict)) and len(json.dumps(v, default=str)) > 120


def _cell(v, full: bool = False) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if full or not math.isfinite(v):
            return repr(v)
        return f"{v:.6f}" if abs(v) >= 1e-4 or v == 0 else f"{v:.6e}"
    if isinstance(v, (list, dict)):
        return json.dumps(v, default=str)
    return str(v)
