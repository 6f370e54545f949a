"""Plain-text Cayley table files.

::

    ring <name>
    order <n>
    unity <idx|none>
    add:
    <n rows of n space-separated indices>
    mul:
    <n rows>
"""
from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .ring import FiniteGeneralRing, build_ring


def dumps(ring: FiniteGeneralRing) -> str:
    lines = [f"ring {ring.name}", f"order {ring.order}",
             f"unity {'none' if ring.unity is None else ring.unity}", "add:"]
    lines += [" ".join(map(str, row)) for row in ring.add_table.tolist()]
    lines.append("mul:")
    lines += [" ".join(map(str, row)) for row in ring.mul_table.tolist()]
    return "\n".join(lines) + "\n"


def dump_ring(ring: FiniteGeneralRing, path) -> None:
    Path(path).write_text(dumps(ring))


def _header(lines: list[str], i: int, key: str) -> str:
    if i >= len(lines) or not lines[i].startswith(key + " "):
        raise ParseError(f"expected '{key} ...' header", i)
    return lines[i][len(key) + 1:].strip()


def _rows(lines: list[str], start: int, n: int) -> list[list[int]]:
    rows = []
    for i in range(start, start + n):
        if i >= len(lines):
            raise ParseError("table ends early", i)
        try:
            row = [int(t) for t in lines[i].split()]
        except ValueError:
            raise ParseError("non-integer table entry", i) from None
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", i)
        rows.append(row)
    return rows


def loads(text: str) -> FiniteGeneralRing:
    """Parse and validate a ring file.  Positions in errors are line numbers."""
    lines = text.splitlines()
    name = _header(lines, 0, "ring")
    try:
        n = int(_header(lines, 1, "order"))
    except ValueError:
        raise ParseError("order must be an integer", 1) from None
    unity_text = _header(lines, 2, "unity")
    if len(lines) < 4 or lines[3].strip() != "add:":
        raise ParseError("expected 'add:'", 3)
    add = _rows(lines, 4, n)
    if len(lines) <= 4 + n or lines[4 + n].strip() != "mul:":
        raise ParseError("expected 'mul:'", 4 + n)
    mul = _rows(lines, 5 + n, n)
    ring = build_ring(add, mul, name=name)
    declared = None if unity_text == "none" else int(unity_text)
    if declared != ring.unity:
        raise ParseError(f"header declares unity {unity_text} but the table has "
                         f"{'none' if ring.unity is None else ring.unity}", 2)
    return ring


def load_ring(path) -> FiniteGeneralRing:
    return loads(Path(path).read_text())
