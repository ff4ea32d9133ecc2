"""Small shared helpers."""

from __future__ import annotations

import json
from typing import Any


def canonical_dumps(obj: Any) -> str:
    """Serialize to the canonical JSON form used by every writer here.

    Sorted keys, two-space indent, trailing newline.  Loading a file and
    re-saving it must reproduce the bytes exactly, so all serialization
    goes through this one function.
    """
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def as_int_matrix(rows: Any, name: str = "table") -> list[list[int]]:
    """Coerce a nested sequence to list-of-list-of-int, rejecting junk."""
    if not isinstance(rows, (list, tuple)):
        raise TypeError(f"{name} must be a sequence of rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)):
            raise TypeError(f"{name} row {i} is not a sequence")
        out.append([int(v) for v in row])
    return out
