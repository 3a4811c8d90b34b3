"""Text formats: weight-function files, CSV reports and ASCII PGM images.

Weight file layout::

    # optional comments
    grs-weights base=2 rank=2 dim=1 group=Z2
    0 0
    0 1

The body lists canonical element indices of the flat table, ``k**d`` per
line (one line per choice of all slots but the last).
"""

from __future__ import annotations

import csv
import io
import re
from pathlib import Path
from typing import Iterable

import numpy as np

from grs.groups import GroupSpec
from grs.sequence import grid
from grs.weights import WeightFunction

MAGIC = "grs-weights"


class WeightFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def serialize_weights(w: WeightFunction) -> str:
    K = w.alphabet_size
    lines = [f"{MAGIC} base={w.k} rank={w.rank} dim={w.dim} group={w.group}"]
    rows = w.table.reshape(-1, K)
    lines.extend(" ".join(str(int(x)) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


_HEADER = re.compile(
    rf"{MAGIC}\s+base=(\d+)\s+rank=(\d+)\s+dim=(\d+)\s+group=(\S+)\s*$"
)


def parse_weights(text: str) -> WeightFunction:
    header = None
    values: list[int] = []
    first_value_line = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if m is None:
                raise WeightFileError(lineno, f"expected '{MAGIC} base=.. rank=.. dim=.. group=..'")
            k, rank, dim = (int(m.group(i)) for i in (1, 2, 3))
            try:
                group = GroupSpec.parse(m.group(4))
            except ValueError as exc:
                raise WeightFileError(lineno, str(exc)) from None
            if k < 2 or rank < 1 or dim < 1:
                raise WeightFileError(lineno, "need base >= 2, rank >= 1, dim >= 1")
            header = (k, rank, dim, group)
            continue
        for tok in line.split():
            if not tok.isdigit():
                raise WeightFileError(lineno, f"bad entry {tok!r}")
            v = int(tok)
            first_value_line[len(values)] = lineno
            values.append(v)
            if v >= header[3].order:
                raise WeightFileError(lineno, f"entry {v} out of range for {header[3]}")
    if header is None:
        raise WeightFileError(1, "missing header")
    k, rank, dim, group = header
    size = (k**dim) ** rank
    if len(values) != size:
        last = max(first_value_line.values(), default=1)
        raise WeightFileError(last, f"body has {len(values)} entries, expected {size}")
    if values[0] != 0:
        raise WeightFileError(first_value_line[0], "weight of the all-zero window must be 0")
    return WeightFunction.from_indices(k, group, values, rank=rank, dim=dim)


def read_weights(path: str | Path) -> WeightFunction:
    return parse_weights(Path(path).read_text())


def write_weights(w: WeightFunction, path: str | Path) -> None:
    Path(path).write_text(serialize_weights(w))


# --- CSV ---------------------------------------------------------------------------

CSV_COLUMNS = ("r", "N", "key", "count", "normalized", "bound", "pass")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (tuple, list)):
        return ":".join(str(v) for v in x)
    return str(x)


def write_csv(rows: Iterable[dict], stream=None) -> str:
    buf = io.StringIO() if stream is None else stream
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in CSV_COLUMNS])
    return buf.getvalue() if stream is None else ""


# --- PGM -------------------------------------------------------------------------


def gray_levels(values: np.ndarray, order: int) -> np.ndarray:
    """255 for element 0 (white) down to 0 for the last element (dark)."""
    if order < 2:
        return np.full(values.shape, 255, dtype=np.int64)
    return (255 * (order - 1 - values)) // (order - 1)


def render_pgm(w: WeightFunction, extent: tuple[int, int]) -> str:
    """ASCII P2 image; u_(0,0) is the bottom-left pixel."""
    if w.dim != 2:
        raise ValueError("images need a 2-dimensional weight function")
    n1, n2 = extent
    if n1 < 1 or n2 < 1:
        raise ValueError("extent must be at least (1, 1)")
    values = grid(w, (n1, n2))  # values[n_1, n_2]
    pixels = gray_levels(values, w.group.order).T[::-1]  # row 0 is n_2 = N_2 - 1
    lines = ["P2", f"{n1} {n2}", "255"]
    lines.extend(" ".join(str(int(p)) for p in row) for row in pixels)
    return "\n".join(lines) + "\n"


def write_pgm(w: WeightFunction, extent: tuple[int, int], path: str | Path) -> None:
    Path(path).write_text(render_pgm(w, extent))


def read_pgm(text: str) -> np.ndarray:
    """Pixel rows of an ASCII P2 image (row 0 on top)."""
    tokens = [t for line in text.splitlines() for t in line.split("#", 1)[0].split()]
    if tokens[0] != "P2":
        raise ValueError("not an ASCII PGM")
    width, height, _ = map(int, tokens[1:4])
    data = np.array(list(map(int, tokens[4:])), dtype=np.int64)
    return data.reshape(height, width)
