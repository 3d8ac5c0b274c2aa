"""Counts of W^2_d(t, s, 0) at rho = 0, with CSV and JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional

from .calculator import rho_moving
from .problem import RamificationProblem
from .symbolic import symbolic_class

COLUMNS = ("g", "d", "s", "t", "count")


@dataclass(frozen=True, order=True)
class TableRow:
    g: int
    d: int
    s: int
    t: int
    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("counts are nonnegative")


def rho_zero_instances(d_offset: int, max_g: int, min_g: int = 1) -> List[RamificationProblem]:
    """All (g, d = g + offset, m = (t, s, 0)) with rho = 0, 1 <= s < t <= d, sorted by (g, d, s, t)."""
    out = []
    for g in range(min_g, max_g + 1):
        d = g + d_offset
        for s in range(1, d):
            for t in range(s + 1, d + 1):
                p = RamificationProblem(g, 2, d, (t, s, 0))
                if rho_moving(p) == 0:
                    out.append(p)
    return out


def count_of(p: RamificationProblem) -> int:
    result = symbolic_class(p)
    if result.vacuous:
        raise ValueError(f"{p} imposes no condition")
    count = result.count
    if count is None:
        raise ArithmeticError(f"{p} is not zero-dimensional")
    return count


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get("BN_MAX_THREADS", "1")))
    except ValueError:
        return 1


def table_rows(d_offset: int, max_g: int, threads: Optional[int] = None) -> List[TableRow]:
    problems = rho_zero_instances(d_offset, max_g)
    workers = threads or max_threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(count_of, problems))
    else:
        counts = [count_of(p) for p in problems]
    return [TableRow(p.g, p.d, p.m[1], p.m[0], c) for p, c in zip(problems, counts)]


def rows_to_csv(rows: Iterable[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([row.g, row.d, row.s, row.t, row.count])
    return buf.getvalue()


def rows_from_csv(text: str) -> List[TableRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        return []
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected header {header}")
    return [TableRow(*map(int, line)) for line in reader if line]


def rows_to_json(rows: Iterable[TableRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"


def rows_from_json(text: str) -> List[TableRow]:
    return [TableRow(**item) for item in json.loads(text)]
