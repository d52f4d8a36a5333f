"""Base homotopy types of small subdivided theta graphs.

Generated by scripts/gen_theta_table.py from the brute-force homology
oracle on each base graph (all have at most 11 vertices), then frozen
here so the evaluator never relies on hand-transcribed values.  Keys are
(n1, n2, n3) with n1 <= n3, n2 in 0..2, n1, n3 in 1..3; a count of 0
identifies the two junction vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


# A tiny structural twin of homotopy.HomotopyType, kept local to avoid a
# circular import; homotopy converts on lookup.
@dataclass(frozen=True)
class _Wedge:
    dims: Optional[tuple[int, ...]]


def HomotopyType(dims):  # noqa: N802 - mirrors the real constructor
    return _Wedge(dims)


THETA_BASE_TABLE = {
    (1, 0, 1): HomotopyType((-1,)),
    (1, 0, 2): HomotopyType(None),
    (1, 0, 3): HomotopyType((0,)),
    (2, 0, 2): HomotopyType((0,)),
    (2, 0, 3): HomotopyType((0,)),
    (3, 0, 3): HomotopyType((1, 0)),
    (1, 1, 1): HomotopyType((0,)),
    (1, 1, 2): HomotopyType((0, 0)),
    (1, 1, 3): HomotopyType((0,)),
    (2, 1, 2): HomotopyType((0, 0)),
    (2, 1, 3): HomotopyType(None),
    (3, 1, 3): HomotopyType((1,)),
    (1, 2, 1): HomotopyType((0, 0)),
    (1, 2, 2): HomotopyType((0, 0)),
    (1, 2, 3): HomotopyType(None),
    (2, 2, 2): HomotopyType((0,)),
    (2, 2, 3): HomotopyType((1,)),
    (3, 2, 3): HomotopyType((1,)),
}
