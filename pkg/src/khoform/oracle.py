"""Brute-force ground truth: independence complexes and their integer homology.

The oracle enumerates every independent set of a graph, builds the
boundary maps of the augmented simplicial chain complex (the empty face
sits in dimension -1), and reduces each boundary matrix to Smith normal
form over the integers.  Torsion is therefore detected, not ignored: a
single torsion coefficient anywhere disproves a wedge-of-spheres answer.

Reduced homology conventions: the complex {empty face} alone (the empty
graph's independence complex, a (-1)-sphere) has rank 1 in dimension -1;
a cone has zero reduced homology everywhere.

Homology equality is necessary, not sufficient, for homotopy
equivalence; the verification harness combines profile equality with the
wedge-shape constraints the solver asserts separately.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph
from .homotopy import CONTRACTIBLE, HomotopyType

DEFAULT_FACE_BUDGET = 1 << 20


class OracleBudgetError(RuntimeError):
    """Raised when a complex would exceed the face enumeration budget."""


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced homology, as (dimension, free rank, torsion coefficients) rows.

    Only nonzero groups are stored, rows sorted by dimension, torsion
    coefficients sorted ascending; equality is therefore structural.
    """

    groups: tuple[tuple[int, int, tuple[int, ...]], ...] = ()

    @staticmethod
    def from_dict(d: dict[int, tuple[int, tuple[int, ...]]]) -> "HomologyProfile":
        rows = []
        for dim in sorted(d):
            rank, tors = d[dim]
            tors = tuple(sorted(t for t in tors if t > 1))
            if rank or tors:
                rows.append((dim, rank, tors))
        return HomologyProfile(tuple(rows))

    def rank(self, dim: int) -> int:
        for d, r, _ in self.groups:
            if d == dim:
                return r
        return 0

    def torsion(self) -> list[int]:
        return [t for _, _, tors in self.groups for t in tors]

    def is_trivial(self) -> bool:
        return not self.groups

    def reduced_euler(self) -> int:
        return sum((-1) ** d * r for d, r, _ in self.groups)

    def to_dict(self) -> dict:
        return {
            str(d): {"rank": r, "torsion": list(tors)} for d, r, tors in self.groups
        }


@dataclass(frozen=True)
class IndependenceComplex:
    """All independent vertex sets of a graph, grouped by dimension.

    faces[d] lists the d-dimensional faces as sorted vertex tuples;
    faces[-1] is always [()].
    """

    graph: Graph
    faces: dict[int, list[tuple[int, ...]]] = field(hash=False)

    @property
    def dim(self) -> int:
        return max(self.faces)

    def face_count(self) -> int:
        return sum(len(fs) for fs in self.faces.values())


def independence_complex(g: Graph, cap: int = DEFAULT_FACE_BUDGET) -> IndependenceComplex:
    """Enumerate every independent set of a simple graph by backtracking.

    Raises OracleBudgetError once more than ``cap`` faces have been found.
    """
    if g.loops:
        raise ValueError("independence_complex needs a simple graph")
    order = g.vertices()
    index = {v: i for i, v in enumerate(order)}
    k = len(order)
    nbr_masks = [0] * k
    for v in order:
        m = 0
        for u in g.neighbors(v):
            m |= 1 << index[u]
        nbr_masks[index[v]] = m

    faces: dict[int, list[tuple[int, ...]]] = {-1: [()]}
    count = 1
    full = (1 << k) - 1
    # DFS over (chosen tuple, candidate mask of allowed higher-index vertices)
    stack: list[tuple[tuple[int, ...], int]] = [((), full)]
    while stack:
        face, allowed = stack.pop()
        m = allowed
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            new_face = face + (order[i],)
            count += 1
            if count > cap:
                raise OracleBudgetError(
                    f"face budget {cap} exceeded on a {k}-vertex graph"
                )
            faces.setdefault(len(new_face) - 1, []).append(new_face)
            higher = full ^ ((1 << (i + 1)) - 1)
            stack.append((new_face, allowed & higher & ~nbr_masks[i]))
    for d in faces:
        faces[d].sort()
    return IndependenceComplex(graph=g, faces=faces)


# -- integer Smith normal form ------------------------------------------------


def _dense_snf_diagonal(m: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of a small dense matrix."""
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    top = 0
    while True:
        pivot = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[top], m[i] = m[i], m[top]
        for r in range(rows):
            m[r][top], m[r][j] = m[r][j], m[r][top]
        # reduce until the pivot divides its whole row and column
        while True:
            p = m[top][top]
            dirty = False
            for i in range(top + 1, rows):
                if m[i][top]:
                    q = m[i][top] // p
                    if q:
                        for c in range(top, cols):
                            m[i][c] -= q * m[top][c]
                    if m[i][top]:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(top + 1, cols):
                if m[top][j]:
                    q = m[top][j] // p
                    if q:
                        for r in range(top, rows):
                            m[r][j] -= q * m[r][top]
                    if m[top][j]:
                        for r in range(top, rows):
                            m[r][top], m[r][j] = m[r][j], m[r][top]
                        dirty = True
                        break
            if not dirty:
                break
        # divisibility of later entries by the pivot
        p = m[top][top]
        bad = None
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if m[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for c in range(top, cols):
                m[top][c] += m[bad][c]
            continue
        diag.append(abs(p))
        top += 1
        if top >= rows or top >= cols:
            break
    return diag


def smith_invariants(cols: dict[int, dict[int, int]], nrows: int) -> tuple[int, list[int]]:
    """Rank and nontrivial invariant factors of a sparse integer matrix.

    ``cols`` maps column index -> {row index -> entry}.  Unit entries are
    pivoted away sparsely first (each contributes invariant factor 1);
    whatever residue carries no +-1 entry is finished densely.
    """
    rows: dict[int, dict[int, int]] = {}
    for c, col in cols.items():
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
    col_rows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)

    unit_heap = [(r, c) for r, row in rows.items() for c, v in row.items() if abs(v) == 1]
    heapq.heapify(unit_heap)
    rank = 0

    def drop(r: int, c: int) -> None:
        v = rows[r].pop(c, None)
        if v is not None:
            col_rows[c].discard(r)
            if not col_rows[c]:
                del col_rows[c]
            if not rows[r]:
                del rows[r]

    def put(r: int, c: int, v: int) -> None:
        if v:
            rows.setdefault(r, {})[c] = v
            col_rows.setdefault(c, set()).add(r)
            if abs(v) == 1:
                heapq.heappush(unit_heap, (r, c))
        else:
            drop(r, c)

    while unit_heap:
        r, c = heapq.heappop(unit_heap)
        v = rows.get(r, {}).get(c, 0)
        if abs(v) != 1:
            continue
        rank += 1
        pivot_row = rows.pop(r)
        for cc in pivot_row:
            col_rows[cc].discard(r)
            if not col_rows[cc]:
                del col_rows[cc]
        for r2 in list(col_rows.get(c, ())):
            f = rows[r2][c] * v  # rows[r2] -= f * pivot_row clears column c
            for cc, pv in pivot_row.items():
                put(r2, cc, rows.get(r2, {}).get(cc, 0) - f * pv)
        # the pivot row is gone; column ops clearing it touch nothing else

    factors: list[int] = []
    if rows:
        live_rows = sorted(rows)
        live_cols = sorted({c for row in rows.values() for c in row})
        ri = {r: i for i, r in enumerate(live_rows)}
        ci = {c: i for i, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for r, row in rows.items():
            for c, v in row.items():
                dense[ri[r]][ci[c]] = v
        for d in _dense_snf_diagonal(dense):
            rank += 1
            if d > 1:
                factors.append(d)
    return rank, sorted(factors)


def boundary_matrix(K: IndependenceComplex, d: int) -> tuple[dict[int, dict[int, int]], int]:
    """The boundary map C_d -> C_(d-1) of the augmented complex, by index.

    Returns (columns, number of rows).  Signs follow the standard
    alternating convention on sorted vertex tuples; the boundary of a
    vertex is the empty face with coefficient +1.
    """
    faces_d = K.faces.get(d, [])
    faces_lower = K.faces.get(d - 1, [])
    lower_index = {f: i for i, f in enumerate(faces_lower)}
    cols: dict[int, dict[int, int]] = {}
    for j, face in enumerate(faces_d):
        col: dict[int, int] = {}
        for i in range(len(face)):
            sub = face[:i] + face[i + 1 :]
            col[lower_index[sub]] = 1 if i % 2 == 0 else -1
        cols[j] = col
    return cols, len(faces_lower)


def reduced_homology(K: IndependenceComplex) -> HomologyProfile:
    """Reduced integer homology of the complex via per-degree SNF."""
    top = K.dim
    rank_bd: dict[int, int] = {}
    torsion_into: dict[int, list[int]] = {}
    for d in range(0, top + 1):
        cols, nrows = boundary_matrix(K, d)
        r, factors = smith_invariants(cols, nrows)
        rank_bd[d] = r
        torsion_into[d - 1] = factors
    groups: dict[int, tuple[int, tuple[int, ...]]] = {}
    for d in range(-1, top + 1):
        free = len(K.faces.get(d, [])) - rank_bd.get(d, 0) - rank_bd.get(d + 1, 0)
        tors = tuple(torsion_into.get(d, []))
        groups[d] = (free, tors)
    return HomologyProfile.from_dict(groups)


def homology_of_graph(g: Graph, cap: int = DEFAULT_FACE_BUDGET) -> HomologyProfile:
    """Reduced homology of the independence complex of a graph."""
    simple, _ = g.simplify()
    return reduced_homology(independence_complex(simple, cap=cap))


def expected_profile(h: HomotopyType) -> HomologyProfile:
    """The homology a wedge of spheres would have: ranks, never torsion."""
    if h.is_contractible():
        return HomologyProfile()
    counts: dict[int, tuple[int, tuple[int, ...]]] = {}
    for d in h.dims:
        rank, _ = counts.get(d, (0, ()))
        counts[d] = (rank + 1, ())
    return HomologyProfile.from_dict(counts)


# -- end-to-end comparison ----------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of one solver-vs-oracle comparison."""

    status: str  # match | mismatch | skipped
    word: tuple[int, ...]
    n: int
    solved: Optional[HomotopyType] = None
    solver_profile: Optional[HomologyProfile] = None
    oracle_profile: Optional[HomologyProfile] = None
    reason: str = ""
    trace: Optional[dict] = None

    def to_json_dict(self) -> dict:
        out = {"status": self.status, "word": list(self.word), "n": self.n}
        if self.solved is not None:
            out["homotopy"] = self.solved.to_json_dict()
        if self.solver_profile is not None:
            out["solver_profile"] = self.solver_profile.to_dict()
        if self.oracle_profile is not None:
            out["oracle_profile"] = self.oracle_profile.to_dict()
        if self.reason:
            out["reason"] = self.reason
        if self.trace is not None:
            out["trace"] = self.trace
        return out


def compare(w, cap: int = DEFAULT_FACE_BUDGET, with_trace: bool = False) -> Verdict:
    """Run the polynomial pipeline and the oracle on one word and diff them."""
    from . import pipeline
    from .resolution import build_lando, resolve

    h, trace = pipeline.solve(w)
    lando = build_lando(resolve(w))
    try:
        truth = homology_of_graph(lando, cap=cap)
    except OracleBudgetError as e:
        return Verdict("skipped", w.signed_gens(), w.n, solved=h, reason=str(e))
    mine = expected_profile(h)
    status = "match" if mine == truth else "mismatch"
    reason = "" if status == "match" else "profile disagreement"
    if truth.torsion():
        status, reason = "mismatch", "torsion detected (wedge of spheres is torsion-free)"
    return Verdict(
        status,
        w.signed_gens(),
        w.n,
        solved=h,
        solver_profile=mine,
        oracle_profile=truth,
        reason=reason,
        trace=trace.to_json_dict() if with_trace else None,
    )
