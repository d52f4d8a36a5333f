"""Wedge-of-spheres homotopy algebra and graph-family evaluators.

Homotopy types are tracked only up to wedge-of-spheres normal form:
either Contractible or a nonempty multiset of sphere dimensions >= -1.
S^-1 is the empty complex (independence complex of the empty graph); it
is the unit of join and may never share a wedge with anything else.

Every reduction used below is one of a handful of moves that are exact
on this class of complexes:

- an isolated vertex cones the complex off (contractible);
- a leaf w with preleaf v gives I(G) ~ suspension of I(G - st(v));
- if v dominates w (N(w)-v inside N(v)-w) and v,w are non-adjacent,
  I(G) ~ I(G - v); if adjacent, I(G) ~ I(G-v) wedge suspension of
  I(G - st(v));
- contracting a length-3 path whose interior vertices have degree 2
  suspends the complex;
- disjoint unions multiply: I(G1 | G2) = I(G1) * I(G2), and the join of
  wedges of spheres is the wedge of pairwise joins, S^a * S^b = S^(a+b+1);
- more generally I(G) ~ I(G-v) wedge suspension of I(G-st(v)) whenever
  I(G - st(v)) includes null-homotopically into I(G - v); we use the two
  checkable cases "I(G - v) is contractible" and "I(G - st(v)) is
  contractible".

The generic engine composes these moves deterministically; the closed
forms below shortcut the standard families (paths, cycles, forests,
complete joins, subdivided thetas).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .graph import Graph
from ._theta_table import THETA_BASE_TABLE


class WedgeError(ValueError):
    """Raised when a wedge would involve S^-1 next to a real summand."""


class ReductionBudgetError(RuntimeError):
    """Raised when generic reduction exceeds its wedge-branch budget."""


@dataclass(frozen=True)
class HomotopyType:
    """Contractible (dims None) or a wedge of spheres (dims descending)."""

    dims: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.dims is not None:
            if not self.dims:
                raise ValueError("a wedge needs at least one sphere")
            if tuple(sorted(self.dims, reverse=True)) != self.dims:
                raise ValueError("dims must be sorted descending")
            if any(d < -1 for d in self.dims):
                raise ValueError("sphere dimensions start at -1")
            if -1 in self.dims and self.dims != (-1,):
                raise WedgeError("S^-1 cannot appear in a nontrivial wedge")

    def is_contractible(self) -> bool:
        return self.dims is None

    def is_empty_complex(self) -> bool:
        return self.dims == (-1,)

    def sphere_count(self) -> int:
        return 0 if self.dims is None else len(self.dims)

    def to_json_dict(self) -> dict:
        if self.dims is None:
            return {"type": "contractible"}
        return {"type": "wedge", "dims": list(self.dims)}

    def __str__(self) -> str:
        if self.dims is None:
            return "contractible"
        return " v ".join(f"S^{d}" for d in self.dims)


CONTRACTIBLE = HomotopyType(None)


def sphere(d: int) -> HomotopyType:
    return HomotopyType((d,))


def wedge_of(dims) -> HomotopyType:
    return HomotopyType(tuple(sorted(dims, reverse=True)))


class _StalledType:
    """Sentinel: generic reduction found no applicable move."""

    def __repr__(self):
        return "Stalled"


STALLED = _StalledType()

Reduced = Union[HomotopyType, _StalledType]


def suspend(h: Reduced, k: int = 1) -> Reduced:
    """k-fold suspension; fixes Contractible, raises every dimension by k."""
    if k < 0:
        raise ValueError("suspension count must be >= 0")
    if h is STALLED or k == 0 or h.is_contractible():
        return h
    return wedge_of(d + k for d in h.dims)


def wedge(h1: HomotopyType, h2: HomotopyType) -> HomotopyType:
    """One-point union.  Contractible is the unit; S^-1 admits no partner."""
    if h1.is_contractible():
        return h2
    if h2.is_contractible():
        return h1
    if h1.is_empty_complex() or h2.is_empty_complex():
        raise WedgeError(
            "wedging the empty complex with a nonempty one is a pipeline bug"
        )
    return wedge_of(h1.dims + h2.dims)


def join(h1: HomotopyType, h2: HomotopyType) -> HomotopyType:
    """Topological join.  Contractible absorbs; S^a * S^b = S^(a+b+1)."""
    if h1.is_contractible() or h2.is_contractible():
        return CONTRACTIBLE
    return wedge_of(a + b + 1 for a in h1.dims for b in h2.dims)


# -- closed forms for the standard families -----------------------------------


def eval_path(n: int) -> HomotopyType:
    """Independence complex of the n-edge path L_n (n+1 vertices)."""
    if n < 0:
        raise ValueError("edge count must be >= 0")
    if n % 3 == 0:
        return CONTRACTIBLE
    return sphere(n // 3)


def eval_cycle(n: int) -> HomotopyType:
    """Independence complex of the n-gon, n >= 3."""
    if n < 3:
        raise ValueError("cycle needs >= 3 vertices")
    if n % 3 == 0:
        k = n // 3
        return wedge_of((k - 1, k - 1))
    k = (n + 1) // 3
    return sphere(k - 1)


def eval_forest(g: Graph) -> HomotopyType:
    """Contractible or a single sphere, by repeated leaf suspension."""
    if not g.is_acyclic():
        raise ValueError("eval_forest needs an acyclic graph")
    work = g
    susp = 0
    while True:
        if len(work) == 0:
            return sphere(susp - 1)
        degrees = {v: work.degree(v) for v in work.adj}
        if min(degrees.values()) == 0:
            return CONTRACTIBLE
        leaf = min(v for v, d in degrees.items() if d == 1)
        preleaf = next(iter(work.neighbors(leaf)))
        work = work.delete_star(preleaf)
        susp += 1


def eval_complete_join(j: int, h: HomotopyType) -> HomotopyType:
    """I(K_j * H) for nonempty H with I(H) ~ h: adjoin j copies of S^0."""
    if j < 1:
        raise ValueError("need at least one apex vertex")
    if h.is_empty_complex():
        raise WedgeError("K_j * H needs H nonempty")
    out = h
    for _ in range(j):
        out = wedge(out, sphere(0))
    return out


def eval_theta(n1: int, n2: int, n3: int) -> HomotopyType:
    """Independence complex of the theta graph with subdivided edges.

    Each count is thinned by length-3 contractions (one suspension per
    step) into the finite base window, then looked up in the
    oracle-computed base table.  At most one count may be 0 (the two
    junction vertices coincide there).
    """
    counts = [n1, n2, n3]
    if any(c < 0 for c in counts):
        raise ValueError("subdivision counts must be >= 0")
    if sum(1 for c in counts if c == 0) > 1:
        raise ValueError("at most one subdivision count may be 0")
    susp = 0
    reduced = []
    for c in counts:
        if c > 0:
            susp += (c - 1) // 3
            c = (c - 1) % 3 + 1
        reduced.append(c)
    # the base window keeps the middle slot in 0..2; park a 0 there if
    # present, otherwise any slot holding <= 2, contracting one 3 -> 0
    # (a further suspension) when all three sit at 3
    if 0 in reduced:
        reduced.remove(0)
        key = (reduced[0], 0, reduced[1])
    elif min(reduced) <= 2:
        mid = min(reduced)
        reduced.remove(mid)
        key = (reduced[0], mid, reduced[1])
    else:
        susp += 1
        key = (3, 0, 3)
    a, b, c = key
    base = THETA_BASE_TABLE[(min(a, c), b, max(a, c))]
    return suspend(HomotopyType(base.dims), susp)


# -- the generic reduction engine ----------------------------------------------


class _Budget:
    __slots__ = ("left",)

    def __init__(self, branches: int):
        self.left = branches

    def spend(self) -> None:
        if self.left <= 0:
            raise ReductionBudgetError(
                "wedge-branch budget exhausted; the input is outside the "
                "families this reducer is meant for"
            )
        self.left -= 1


def _walk_chain(g: Graph, v: int, first: int) -> tuple[list[int], Optional[int]]:
    """Follow degree-2 vertices from v toward first; stop at the first
    vertex of other degree (the anchor).  Anchor None means the walk
    closed into a cycle."""
    out: list[int] = []
    prev, cur = v, first
    while cur in g.adj and g.degree(cur) == 2:
        if cur == v:
            return out, None
        out.append(cur)
        prev, cur = cur, (g.neighbors(cur) - {prev}).pop()
    return out, cur


def _batch_csorba(g: Graph) -> tuple[Graph, int]:
    """Contract every maximal degree-2 chain down to its length mod 3.

    Each step is a legal length-3 path contraction worth one suspension;
    this collapses long subdivided spines in one pass instead of many
    whole-graph site scans.  Chains whose two anchors coincide (cycles
    pinched at a vertex) are left for the regular moves.
    """
    susp = 0
    progress = True
    while progress:
        progress = False
        assigned: set[int] = set()
        chains = []
        for v in sorted(g.adj):
            if v in assigned or g.degree(v) != 2:
                continue
            nb = sorted(g.neighbors(v))
            left, lo = _walk_chain(g, v, nb[0])
            if lo is None:
                assigned.add(v)
                assigned.update(left)
                continue
            right, hi = _walk_chain(g, v, nb[1])
            xs = list(reversed(left)) + [v] + right
            assigned.update(xs)
            if hi is None or lo == hi:
                continue
            chains.append((lo, xs))
        for lo, xs in chains:
            while len(xs) >= 3 and lo in g.adj:
                a, b, c = xs[0], xs[1], xs[2]
                if not (
                    a in g.adj
                    and b in g.adj
                    and g.adj[a] == {lo, b}
                    and g.adj[b] == {a, c}
                ):
                    break
                g = g.contract_path((lo, a, b, c))
                xs = xs[3:]
                susp += 1
                progress = True
                if g.loops:
                    g, _ = g.simplify()
    return g, susp


def _components_join(
    g: Graph, budget: _Budget, memo: dict, extended: bool, hints: tuple[int, ...]
) -> Reduced:
    comps = g.components()
    results = []
    for comp in comps:
        r = _reduce(g.induced(comp), budget, memo, extended, hints)
        if r is not STALLED and r.is_contractible():
            return CONTRACTIBLE
        results.append(r)
    if any(r is STALLED for r in results):
        return STALLED
    out = results[0]
    for r in results[1:]:
        out = join(out, r)
    return out


def _recognize_base(g: Graph, extended: bool) -> Optional[HomotopyType]:
    """Closed form for a connected graph if it is a recognized base family."""
    n = len(g)
    if n == 1:
        return CONTRACTIBLE
    degs = [g.degree(v) for v in g.vertices()]
    if all(d == 2 for d in degs):
        return eval_cycle(n)
    if max(degs) <= 2:  # connected, not a cycle: a path
        return eval_path(n - 1)
    if extended and all(d == n - 1 for d in degs):  # complete graph
        return wedge_of([0] * (n - 1))
    return None


def _certified_split(
    g: Graph, budget: _Budget, memo: dict, hints: tuple[int, ...]
) -> Reduced:
    """Try splitting I(G) over a vertex v when the inclusion of
    I(G - st(v)) into I(G - v) is certifiably null-homotopic, giving
    I(G) ~ I(G-v) wedge suspension of I(G-st(v)).

    Certificates: the target is contractible (any map in is null); the
    source is contractible or empty (any map out is null); or both sides
    are wedges of spheres and every source dimension is strictly below
    every target dimension (the target is that highly connected)."""
    order = [v for v in hints if v in g.adj]
    order += [
        v for v in sorted(g.adj, key=lambda u: (-g.degree(u), u)) if v not in order
    ]
    for v in order[:12]:
        budget.spend()
        minus_v = _reduce(g.delete_vertices([v]), budget, memo, True, hints)
        minus_star = _reduce(g.delete_star(v), budget, memo, True, hints)
        if minus_v is STALLED or minus_star is STALLED:
            continue
        if minus_v.is_contractible():
            return suspend(minus_star, 1)
        if minus_star.is_contractible():
            return minus_v
        if minus_star.is_empty_complex() or max(minus_star.dims) < min(minus_v.dims):
            return wedge(minus_v, suspend(minus_star, 1))
    return STALLED


def _reduce(
    g: Graph, budget: _Budget, memo: dict, extended: bool, hints: tuple[int, ...]
) -> Reduced:
    key = g.canonical_key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    susp = 0
    work = g
    result: Reduced = None  # type: ignore[assignment]
    while True:
        if work.loops:
            work, _ = work.simplify()
        if len(work) == 0:
            result = sphere(susp - 1)
            break
        comps = work.components()
        if len(comps) > 1:
            result = suspend(_components_join(work, budget, memo, extended, hints), susp)
            break
        base = _recognize_base(work, extended)
        if base is not None:
            result = suspend(base, susp)
            break
        if extended and len(work) > 64:
            work, k = _batch_csorba(work)
            if k:
                susp += k
                continue
        site = work.find_site()
        if site is None and extended:
            result = suspend(_certified_split(work, budget, memo, hints), susp)
            break
        if site is None:
            result = STALLED
            break
        if site.kind == "isolated":
            result = CONTRACTIBLE
            break
        if site.kind == "leaf":
            work = work.delete_star(site.data[1])
            susp += 1
            continue
        if site.kind == "csorba":
            work = work.contract_path(site.data)
            susp += 1
            continue
        v, w = site.data
        if not site.adjacent:
            work = work.delete_vertices([v])
            continue
        budget.spend()
        side = _reduce(work.delete_vertices([v]), budget, memo, extended, hints)
        star_side = _reduce(work.delete_star(v), budget, memo, extended, hints)
        if side is STALLED or star_side is STALLED:
            result = STALLED
        else:
            result = suspend(wedge(side, suspend(star_side, 1)), susp)
        break
    memo[key] = result
    return result


def generic_reduce(g: Graph, budget: int = 64) -> Reduced:
    """Reduce a simple graph with the spec'd move set and priorities.

    Moves: simplify loops, split components (join), isolated vertex
    (contractible), path/cycle closed forms, leaf suspension,
    non-adjacent domination deletion, length-3 contraction, adjacent
    domination wedge split.  Returns STALLED when no move applies and
    the graph is not a base family; raises ReductionBudgetError when
    more than ``budget`` wedge branches fire.
    """
    return _reduce(g.copy(), _Budget(budget), {}, False, ())


def reduce_extended(
    g: Graph, budget: int = 64, hints: tuple[int, ...] = (), memo: Optional[dict] = None
) -> Reduced:
    """The engine with complete-graph base cases, batched spine
    contraction and certified vertex splits; used by the braid pipeline."""
    return _reduce(g.copy(), _Budget(budget), {} if memo is None else memo, True, hints)
