"""Simple-graph primitives and detection of primitive reduction sites.

Vertices are integers (for Lando graphs, the originating letter id).
Construction accepts loops and repeated edges so that contractions and
the subdivided-theta builders can produce them; ``simplify`` removes
them.  A vertex carrying a loop can never lie in an independent set, so
deleting it does not change the independence complex.

Every surgery returns a new graph; labels ride along on surviving
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional


@dataclass(frozen=True)
class Site:
    """A reduction site found in a graph. ``kind`` is one of
    isolated / leaf / domination / csorba, with vertices in ``data``:

    - isolated: (v,)
    - leaf: (leaf, preleaf)
    - domination: (dominator, dominated); ``adjacent`` distinguishes the
      plain-deletion case from the wedge-splitting case
    - csorba: the 4 path vertices (v1, a, b, v2), interior a, b of degree 2
    """

    kind: str
    data: tuple[int, ...]
    adjacent: bool = False


class Graph:
    """Undirected graph with set-valued adjacency and optional vertex labels."""

    __slots__ = ("adj", "loops", "labels")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        labels: Optional[dict[int, str]] = None,
    ):
        self.adj: dict[int, set[int]] = {v: set() for v in vertices}
        self.loops: set[int] = set()
        self.labels: dict[int, str] = dict(labels or {})
        for a, b in edges:
            self.add_edge(a, b)

    # -- construction ----------------------------------------------------

    def add_vertex(self, v: int) -> None:
        self.adj.setdefault(v, set())

    def add_edge(self, a: int, b: int) -> None:
        self.add_vertex(a)
        self.add_vertex(b)
        if a == b:
            self.loops.add(a)
        else:
            self.adj[a].add(b)
            self.adj[b].add(a)

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = {v: set(nb) for v, nb in self.adj.items()}
        g.loops = set(self.loops)
        g.labels = dict(self.labels)
        return g

    # -- queries ----------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self.adj

    def __len__(self) -> int:
        return len(self.adj)

    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (min(a, b), max(a, b)) for a in self.adj for b in self.adj[a] if a < b
        )

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def star(self, v: int) -> set[int]:
        """The closed neighborhood N(v) | {v}."""
        return self.adj[v] | {v}

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for v in sorted(self.adj):
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for x in self.adj[u]:
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
            out.append(sorted(comp))
        return out

    def is_acyclic(self) -> bool:
        return self.edge_count() == len(self.adj) - len(self.components())

    def canonical_key(self) -> tuple:
        """A hashable key identifying the labeled graph on these exact ids."""
        return (tuple(self.vertices()), tuple(self.edges()), tuple(sorted(self.loops)))

    # -- surgeries (all return new graphs) --------------------------------

    def delete_vertices(self, vs: Iterable[int]) -> "Graph":
        dead = set(vs)
        g = Graph()
        g.adj = {v: self.adj[v] - dead for v in self.adj if v not in dead}
        g.loops = self.loops - dead
        g.labels = {v: l for v, l in self.labels.items() if v not in dead}
        return g

    def delete_star(self, v: int) -> "Graph":
        return self.delete_vertices(self.star(v))

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        missing = keep - set(self.adj)
        if missing:
            raise KeyError(f"vertices not in graph: {sorted(missing)}")
        return self.delete_vertices(set(self.adj) - keep)

    def delete_edge(self, a: int, b: int) -> "Graph":
        if b not in self.adj.get(a, ()):
            raise KeyError(f"edge ({a},{b}) not in graph")
        g = self.copy()
        g.adj[a].discard(b)
        g.adj[b].discard(a)
        return g

    def contract_path(self, path: tuple[int, int, int, int]) -> "Graph":
        """Contract a length-3 path to a single vertex (the first endpoint).

        The two interior vertices must have degree 2.  The contraction may
        create loops or nothing new; the caller simplifies if needed.
        """
        v1, a, b, v2 = path
        if not (self.adj[a] == {v1, b} and self.adj[b] == {a, v2}):
            raise ValueError(f"not a contractible path: {path}")
        g = self.delete_vertices([a, b, v2])
        for x in self.adj[v2] - {b}:
            if x == v1:
                g.loops.add(v1)
            elif x in g.adj:
                g.add_edge(v1, x)
        return g

    # -- the reduction sites ----------------------------------------------

    def dominates(self, v: int, w: int) -> bool:
        """True if N(w) - {v} is a subset of N(v) - {w}."""
        if v == w:
            raise ValueError("domination needs two distinct vertices")
        if v not in self.adj or w not in self.adj:
            raise KeyError(f"vertex missing: {v if v not in self.adj else w}")
        return (self.adj[w] - {v}) <= (self.adj[v] - {w})

    def _domination_sites(self, adjacent: bool) -> Iterator[Site]:
        # A dominator of w lies within distance 2 of w unless w is a leaf
        # or isolated vertex, which earlier site kinds already cover.
        for w in sorted(self.adj):
            cands: set[int] = set()
            for u in self.adj[w]:
                if adjacent:
                    cands.add(u)
                cands |= self.adj[u]
            cands.discard(w)
            for v in sorted(cands):
                if (v in self.adj[w]) != adjacent:
                    continue
                if self.dominates(v, w):
                    yield Site("domination", (v, w), adjacent=adjacent)

    def _csorba_sites(self) -> Iterator[Site]:
        for a in sorted(self.adj):
            if len(self.adj[a]) != 2:
                continue
            for b in sorted(self.adj[a]):
                if len(self.adj[b]) != 2 or b == a:
                    continue
                v1 = (self.adj[a] - {b}).pop()
                v2 = (self.adj[b] - {a}).pop()
                if len({v1, a, b, v2}) == 4:
                    yield Site("csorba", (v1, a, b, v2))

    def find_site(self) -> Optional[Site]:
        """First reduction site under the fixed priority.

        Priority: isolated > leaf > non-adjacent domination > csorba >
        adjacent domination; within a kind the smallest vertex tuple wins,
        so the same graph always yields the same site.
        """
        if self.loops:
            raise ValueError("find_site requires a simple graph; call simplify first")
        for v in sorted(self.adj):
            if not self.adj[v]:
                return Site("isolated", (v,))
        for v in sorted(self.adj):
            if len(self.adj[v]) == 1:
                return Site("leaf", (v, next(iter(self.adj[v]))))
        for site in self._domination_sites(adjacent=False):
            return site
        for site in self._csorba_sites():
            return site
        for site in self._domination_sites(adjacent=True):
            return site
        return None

    def surgery(self, action: str, *args) -> "Graph":
        """Apply a named surgery: delete / delete_star / contract / delete_edge / induced."""
        if action == "delete":
            return self.delete_vertices(args[0])
        if action == "delete_star":
            return self.delete_star(args[0])
        if action == "contract":
            return self.contract_path(args[0])
        if action == "delete_edge":
            return self.delete_edge(*args[0])
        if action == "induced":
            return self.induced(args[0])
        raise ValueError(f"unknown surgery {action!r}")

    # -- cleanup and export -------------------------------------------------

    def simplify(self) -> tuple["Graph", list[int]]:
        """Delete loop-carrying vertices; duplicate edges cannot occur here.

        Returns the simple graph and the list of deleted vertices.
        """
        removed = sorted(self.loops)
        return self.delete_vertices(removed), removed

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices():
            attrs = f' [label="{v}:{self.labels[v]}"]' if v in self.labels else ""
            lines.append(f"  {v}{attrs};")
        for a, b in self.edges():
            lines.append(f"  {a} -- {b};")
        for v in sorted(self.loops):
            lines.append(f"  {v} -- {v};")
        lines.append("}")
        return "\n".join(lines)


def path_graph(n_edges: int, offset: int = 0) -> Graph:
    """The line graph L_n: n+1 vertices joined by n edges."""
    g = Graph(range(offset, offset + n_edges + 1))
    for i in range(n_edges):
        g.add_edge(offset + i, offset + i + 1)
    return g


def cycle_graph(n: int, offset: int = 0) -> Graph:
    """The n-gon, n >= 3."""
    if n < 3:
        raise ValueError(f"cycle needs >= 3 vertices, got {n}")
    g = Graph(range(offset, offset + n))
    for i in range(n):
        g.add_edge(offset + i, offset + (i + 1) % n)
    return g


def complete_graph(n: int, offset: int = 0) -> Graph:
    g = Graph(range(offset, offset + n))
    for i in range(n):
        for j in range(i + 1, n):
            g.add_edge(offset + i, offset + j)
    return g


def theta_graph(n1: int, n2: int, n3: int) -> Graph:
    """Two junction vertices joined by three arcs of n1, n2, n3 edges.

    A count of 0 identifies the junctions (at most one may be 0); counts
    of 1 on two arcs would double an edge, which add_edge collapses, so
    the caller should avoid repeated 1s unless that collapse is wanted.
    Junctions are vertices 0 and 1; subdivision vertices count up from 2.
    """
    counts = (n1, n2, n3)
    if sum(1 for c in counts if c == 0) > 1:
        raise ValueError("at most one arc may have 0 edges")
    g = Graph([0])
    top, bot = 0, (0 if 0 in counts else 1)
    g.add_vertex(bot)
    nxt = 2
    for c in counts:
        if c == 0:
            continue
        prev = top
        for _ in range(c - 1):
            g.add_edge(prev, nxt)
            prev, nxt = nxt, nxt + 1
        g.add_edge(prev, bot)
    return g
