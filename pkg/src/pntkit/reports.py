"""Deterministic report writing: CSV/JSON with no wall-clock content.

Rationals serialize as numerator/denominator string pairs so nothing is
rounded; timings go to stdout only, never into report files, so reruns
with the same seed are byte-identical.
"""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction
from typing import Iterable, Sequence


def encode_value(v):
    if isinstance(v, Fraction):
        return {"num": str(v.numerator), "den": str(v.denominator)}
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    return v


def encode_cell(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, complex):
        return f"{v.real!r}+{v.imag!r}j"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: str, fieldnames: Sequence[str], rows: Iterable[dict]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([encode_cell(row.get(k, "")) for k in fieldnames])


def write_json(path: str, obj) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        json.dump(encode_value(obj), fh, sort_keys=True, indent=2)
        fh.write("\n")


__all__ = ["encode_cell", "encode_value", "write_csv", "write_json"]
