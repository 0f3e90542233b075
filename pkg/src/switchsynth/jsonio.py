"""Deterministic JSON emission for report and program documents.

The stdlib encoder prints floats with shortest round-trip repr; documents
here pin floats to 17 significant digits instead, which also round-trips
IEEE doubles exactly and keeps byte-for-byte output stable across runs.
Output is parseable by ``json.loads``.
"""

from __future__ import annotations

import json
import math


def format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite float {value}")
    if value == 0.0:
        return "0"  # canonicalize -0.0 so round trips are byte-stable
    return "%.17g" % value


def _emit(obj, level: int, pieces: list[str]) -> None:
    pad = "  " * (level + 1)
    close_pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            pieces.append("{}")
            return
        pieces.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"document keys must be strings, got {key!r}")
            pieces.append(f"{pad}{json.dumps(key)}: ")
            _emit(value, level + 1, pieces)
            pieces.append(",\n" if i < len(obj) - 1 else "\n")
        pieces.append(close_pad + "}")
    elif isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            pieces.append("[]")
        elif any(isinstance(el, dict) for el in items):
            pieces.append("[\n")
            for i, el in enumerate(items):
                pieces.append(pad)
                _emit(el, level + 1, pieces)
                pieces.append(",\n" if i < len(items) - 1 else "\n")
            pieces.append(close_pad + "]")
        else:
            flat: list[str] = []
            for el in items:
                sub: list[str] = []
                _emit(el, 0, sub)
                flat.append("".join(sub))
            pieces.append("[" + ", ".join(flat) + "]")
    elif isinstance(obj, bool):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, int):
        pieces.append(str(obj))
    elif isinstance(obj, float):
        pieces.append(format_float(obj))
    elif isinstance(obj, str):
        pieces.append(json.dumps(obj))
    elif obj is None:
        pieces.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} into a document")


def dumps(obj) -> str:
    """Serialize a document; trailing newline included."""
    pieces: list[str] = []
    _emit(obj, 0, pieces)
    return "".join(pieces) + "\n"
