"""Line-oriented, byte-stable report files.

Each line is ``key: value``; the first two lines carry the schema tag.
Floats are printed with 12 significant digits so that reports are stable
under last-bit noise.
"""

from __future__ import annotations

import math

from .hyperbolic import format_word

SCHEMA = "orbitspace.report/1"


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    text = f"{x:.12g}"
    return "0" if text == "-0" else text


def fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, (tuple, list)):
        return " ".join(fmt_value(x) for x in v)
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(fmt_value(x) for x in sorted(v)) + "}"
    return str(v)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        text = fmt_value(value)
        if "\n" in text:
            text = text.replace("\n", " ")
        self.lines.append((key, text))

    def add_element(self, prefix: str, element, offset=None) -> None:
        self.add(f"{prefix}.word", format_word(element.word))
        self.add(f"{prefix}.matrix", tuple(element.matrix))
        if offset is not None:
            self.add(f"{prefix}.offset", offset)

    def get(self, key: str):
        for k, v in self.lines:
            if k == key:
                return v
        raise KeyError(key)

    def text(self) -> str:
        out = ["# orbitspace report", f"schema: {SCHEMA}", f"command: {self.command}"]
        out += [f"{k}: {v}" for k, v in self.lines]
        return "\n".join(out) + "\n"


def parse_report(text: str) -> dict:
    """Read a report back into an ordered mapping (repeated keys keep the last value)."""
    lines = text.splitlines()
    if not lines or lines[0] != "# orbitspace report":
        raise ValueError("not an orbitspace report")
    out = {}
    for line in lines[1:]:
        key, _, value = line.partition(": ")
        out[key] = value
    if out.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {out.get('schema')!r}")
    return out
