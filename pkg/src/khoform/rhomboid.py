"""Rhomboid graph families and their independence-complex evaluators.

A simple rhomboid joins two hub vertices b_l, b_r to every vertex of a
spine path v_0..v_n and hangs four length-2 paths from the hubs to the
spine ends (mid vertices vm1 = v_{-1}, vm1p = v_{-1}', vn1 = v_{n+1},
vn1p = v_{n+1}').  The connected variant adds the b_l--b_r edge.  The
augmented variant drops the primed mid vertices and attaches a third hub
b_2 (adjacent to every spine vertex) together with two decoration
chains:

    b_l - c1 - c2 - c3,  c3 ~ {b_2, b_r},  c2 ~ vm1
    b_r - d3 - d2 - d1,  d1 ~ {b_2, b_l},  d2 ~ vn1

These are exactly the Lando graphs of 4-braid words whose positive part
has one s3.s1 junction; subdividing the extended spine gives the general
(rhomboid / augmented) family, and contracting or deleting the spine-end
edges gives the mod-augmented one.

The evaluators run the shared reduction engine with the hub vertices as
split hints and then assert the family's output menu: a rhomboid
subgraph yields at most two spheres (three only in the connected-hub
case, as S^j v S^0 v S^0); an augmented subgraph yields at most four
spheres with all but the top one of equal dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph
from .homotopy import (
    STALLED,
    HomotopyType,
    ReductionBudgetError,
    reduce_extended,
)


class FamilyShapeError(RuntimeError):
    """The reduced value fell outside the family's proven output menu."""


@dataclass(frozen=True)
class RhomboidStructure:
    """Role labels and family flags for a (sub)graph of a rhomboid family.

    roles maps vertex id -> one of b_l, b_r, b_2, b_2p, e_2, e_2p,
    c1..c3, d1..d3, spoke, spine, vm1, vn1, vm1p, vn1p, spider.
    """

    roles: dict[int, str] = field(default_factory=dict)
    connected: bool = False
    augmented: bool = False
    r1_present: bool = True
    r2_present: bool = True
    modifications: tuple[str, ...] = ()
    subdivisions: tuple[int, ...] = ()

    def vertices_with(self, *names: str) -> list[int]:
        return sorted(v for v, r in self.roles.items() if r in names)

    def hub_hints(self, g: Graph) -> tuple[int, ...]:
        hubs = self.vertices_with("b_2", "b_2p", "b_l", "b_r")
        return tuple(v for v in hubs if v in g.adj)


def _assert_roles_present(g: Graph, s: RhomboidStructure) -> None:
    missing = [v for v in s.roles if v not in g.adj]
    if missing:
        raise ValueError(f"labeled vertices missing from graph: {missing}")


# -- builders ------------------------------------------------------------------

# Stable vertex ids for the family builders: hubs and decorations get
# small negative ids so spine ids can stay 0..n.
B_L, B_R, B_2 = -1, -2, -3
C1, C2, C3 = -4, -5, -6
D1, D2, D3 = -7, -8, -9
VM1, VN1, VM1P, VN1P = -10, -11, -12, -13


def simple_rhomboid(n: int, connected: bool = False) -> tuple[Graph, RhomboidStructure]:
    """SR_n (or SR_n^con): hubs joined to the spine v_0..v_n plus the four
    length-2 corner paths."""
    if n < 0:
        raise ValueError("spine length must be >= 0")
    g = Graph()
    roles = {B_L: "b_l", B_R: "b_r", VM1: "vm1", VN1: "vn1", VM1P: "vm1p", VN1P: "vn1p"}
    for i in range(n + 1):
        roles[i] = "spoke"
        g.add_vertex(i)
        if i:
            g.add_edge(i - 1, i)
        g.add_edge(B_L, i)
        g.add_edge(B_R, i)
    g.add_edge(B_L, VM1)
    g.add_edge(VM1, 0)
    g.add_edge(B_R, VM1P)
    g.add_edge(VM1P, 0)
    g.add_edge(B_R, VN1)
    g.add_edge(VN1, n)
    g.add_edge(B_L, VN1P)
    g.add_edge(VN1P, n)
    if connected:
        g.add_edge(B_L, B_R)
    g.labels.update({v: r for v, r in roles.items()})
    return g, RhomboidStructure(roles=roles, connected=connected)


def augmented_rhomboid(n: int) -> tuple[Graph, RhomboidStructure]:
    """SR_n^aug: the simple rhomboid minus the primed corners, plus hub b_2
    and the two decoration chains."""
    g, s = simple_rhomboid(n)
    g = g.delete_vertices([VM1P, VN1P])
    roles = {v: r for v, r in s.roles.items() if v not in (VM1P, VN1P)}
    roles.update({B_2: "b_2", C1: "c1", C2: "c2", C3: "c3", D1: "d1", D2: "d2", D3: "d3"})
    for i in range(n + 1):
        g.add_edge(B_2, i)
    g.add_edge(B_L, C1)
    g.add_edge(C1, C2)
    g.add_edge(C2, C3)
    g.add_edge(C2, VM1)
    g.add_edge(C3, B_2)
    g.add_edge(C3, B_R)
    g.add_edge(B_R, D3)
    g.add_edge(D3, D2)
    g.add_edge(D2, D1)
    g.add_edge(D2, VN1)
    g.add_edge(D1, B_2)
    g.add_edge(D1, B_L)
    g.labels.update({v: r for v, r in roles.items()})
    return g, RhomboidStructure(roles=roles, augmented=True)


def rhomboid_graph(params: tuple[int, ...]) -> tuple[Graph, RhomboidStructure]:
    """The rhomboid G(c_0', c_0, c_1, ..., c_{n+1}, c_{n+1}') obtained from
    SR_n by subdividing the extended-spine and corner edges.

    params lists (c_0', c_0, c_1, ..., c_{n+1}, c_{n+1}') with n + 4
    entries; a 0 identifies the edge's endpoints (multiple edges are
    collapsed).  Subdivision vertices get ids from 1000 upward.
    """
    if len(params) < 4:
        raise ValueError("need at least (c_0', c_0, c_1, c_1')")
    n = len(params) - 4
    g, s = simple_rhomboid(n)
    roles = dict(s.roles)
    fresh = iter(range(1000, 1000 + 16 * (len(params) + 2)))

    def subdivide(a: int, b: int, parts: int) -> None:
        nonlocal g
        g = g.delete_edge(a, b)
        if parts == 0:
            # identify b with a
            nbrs = set(g.adj[b])
            g = g.delete_vertices([b])
            for x in nbrs:
                if x in g.adj and x != a:
                    g.add_edge(a, x)
            if roles.get(b) == "spoke" and roles.get(a) != "spoke":
                roles[a] = "spoke"
            roles.pop(b, None)
            remap[b] = a
            return
        prev = a
        for _ in range(parts - 1):
            m = next(fresh)
            roles[m] = "spine"
            g.add_edge(prev, m)
            prev = m
        g.add_edge(prev, b)

    remap: dict[int, int] = {}

    def res(v: int) -> int:
        while v in remap:
            v = remap[v]
        return v

    c0p, c0 = params[0], params[1]
    cn1, cn1p = params[-2], params[-1]
    spine_parts = params[2:-2]
    subdivide(res(VM1P), res(0), c0p)
    subdivide(res(VM1), res(0), c0)
    for i, parts in enumerate(spine_parts):
        subdivide(res(i), res(i + 1), parts)
    subdivide(res(VN1), res(n), cn1)
    subdivide(res(VN1P), res(n), cn1p)
    g.labels.clear()
    g.labels.update({v: r for v, r in roles.items() if v in g.adj})
    return g, RhomboidStructure(
        roles={v: r for v, r in roles.items() if v in g.adj}, subdivisions=tuple(params)
    )


def mod_augmented(n: int, modifications: tuple[str, ...]) -> tuple[Graph, RhomboidStructure]:
    """Apply contract/delete transformations at the spine-end edges of
    SR_n^aug: any subset of contract-left, contract-right,
    delete-left-edge, delete-right-edge."""
    g, s = augmented_rhomboid(n)
    roles = dict(s.roles)
    for mod in modifications:
        if mod == "contract-left":
            nbrs = set(g.adj[VM1])
            g = g.delete_vertices([VM1])
            for x in nbrs:
                if x in g.adj and x != 0:
                    g.add_edge(0, x)
            roles.pop(VM1, None)
        elif mod == "contract-right":
            nbrs = set(g.adj[VN1])
            g = g.delete_vertices([VN1])
            for x in nbrs:
                if x in g.adj and x != n:
                    g.add_edge(n, x)
            roles.pop(VN1, None)
        elif mod == "delete-left-edge":
            g = g.delete_edge(VM1, 0)
        elif mod == "delete-right-edge":
            g = g.delete_edge(VN1, n)
        else:
            raise ValueError(f"unknown modification {mod!r}")
    g.labels.clear()
    g.labels.update(roles)
    return g, RhomboidStructure(roles=roles, augmented=True, modifications=tuple(modifications))


# -- evaluators ----------------------------------------------------------------


def _reduce_with_hints(g: Graph, s: RhomboidStructure, budget: int) -> HomotopyType:
    hints = s.hub_hints(g) + tuple(s.vertices_with("spoke"))
    r = reduce_extended(g, budget=budget, hints=hints)
    if r is STALLED:
        raise ReductionBudgetError(
            "reduction stalled on a labeled rhomboid-family graph; labels are "
            "inconsistent with the graph"
        )
    return r


def eval_rhomboid_subgraph(g: Graph, s: RhomboidStructure, budget: int = 64) -> HomotopyType:
    """Homotopy type of I(G) for an induced subgraph of a (connected)
    rhomboid graph: contractible, a sphere, or a wedge of two spheres,
    plus S^j v S^0 v S^0 when the hub edge is present."""
    _assert_roles_present(g, s)
    h = _reduce_with_hints(g, s, budget)
    if not h.is_contractible():
        dims = h.dims
        ok = len(dims) <= 2 or (
            s.connected and len(dims) == 3 and dims[1] == dims[2] == 0
        )
        if not ok:
            raise FamilyShapeError(f"rhomboid subgraph reduced to {h}")
    return h


def eval_augmented_subgraph(g: Graph, s: RhomboidStructure, budget: int = 96) -> HomotopyType:
    """Homotopy type of I(G) for an induced subgraph of a (mod-)augmented
    rhomboid graph: contractible or S^k, S^k v S^i, S^k v S^i v S^i,
    S^k v S^i v S^i v S^i with k >= i."""
    _assert_roles_present(g, s)
    h = _reduce_with_hints(g, s, budget)
    assert_wedge_menu(h, limit=4)
    return h


def assert_wedge_menu(h: HomotopyType, limit: int = 4) -> None:
    """Check the main-theorem output shape: at most ``limit`` spheres, all
    but the top one of equal dimension, top >= rest."""
    if h.is_contractible():
        return
    dims = h.dims
    if len(dims) > limit or len(set(dims[1:])) > 1:
        raise FamilyShapeError(f"value {h} falls outside the wedge menu")
