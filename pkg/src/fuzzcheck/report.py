"""Uniform check reports with a line-oriented machine format.

Machine output is `KEY=VALUE`, one per line, keys stable across versions;
every fail carries its witness.  Exit codes: 0 pass, 1 property violated,
2 input/usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return "(" + ",".join(fmt_value(x) for x in v) + ")"
    return str(v)


@dataclass
class Report:
    command: str
    verdict: str  # "pass" | "fail" | "error"
    provenance: str
    witness: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(self.verdict, EXIT_USAGE)

    def render_machine(self) -> str:
        lines = [
            f"COMMAND={self.command}",
            f"VERDICT={self.verdict}",
            f"PROVENANCE={self.provenance}",
        ]
        for key, value in self.witness.items():
            lines.append(f"WITNESS_{key.upper()}={fmt_value(value)}")
        for key, value in self.metrics.items():
            lines.append(f"{key.upper()}={fmt_value(value)}")
        return "\n".join(lines) + "\n"

    def render_human(self) -> str:
        lines = [f"{self.command}: {self.verdict.upper()}  [{self.provenance}]"]
        for key, value in self.witness.items():
            lines.append(f"  witness {key} = {fmt_value(value)}")
        for key, value in self.metrics.items():
            lines.append(f"  {key} = {fmt_value(value)}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.render_machine() if fmt == "machine" else self.render_human()
