"""The all-B Kauffman resolution of a braid closure, as a chord diagram.

B-smoothing a positive letter s_i turns the crossing into the
Temperley-Lieb cup-cap at strands i, i+1 (the two incoming strands turn
back into each other, the two outgoing strands start at a lower
turnback) with a vertical chord joining the two turnbacks.  A negative
letter leaves both strands running straight and hangs a horizontal chord
between strands i and i+1.  Closing the braid joins each strand's bottom
end to its own top end.

The resolved diagram is a disjoint union of circles; each crossing
contributes one chord with two endpoints on them.  Circles are traced
deterministically (start from the leftmost unvisited strand at the top
and travel downward, then sweep any turnback-only circles in creation
order) so that the recorded cyclic endpoint orders, and hence the Lando
graph, are reproducible bit for bit.  Chord endpoints interleave or not
independently of these choices.

The Lando graph keeps one vertex per admissible chord (both endpoints on
the same circle) and one edge per interleaving pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from sortedcontainers import SortedList

from .braid import BraidWord
from .graph import Graph

# A chord endpoint marker: (letter id, end index).  End 0 is the upper
# turnback / strand-i endpoint, end 1 the lower turnback / strand-(i+1)
# endpoint.
Marker = tuple[int, int]


@dataclass(frozen=True)
class Chord:
    """One crossing's chord: its letter id, sign, and located endpoints."""

    letter_id: int
    sign: int
    a: tuple[int, int]  # (circle index, position on circle)
    b: tuple[int, int]

    @property
    def admissible(self) -> bool:
        return self.a[0] == self.b[0]


@dataclass(frozen=True)
class ChordDiagram:
    """Circles of the B-state resolution plus the located chords."""

    n: int
    c: int
    circles: tuple[tuple[Marker, ...], ...]
    chords: tuple[Chord, ...]

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def chord_by_id(self, letter_id: int) -> Chord:
        for ch in self.chords:
            if ch.letter_id == letter_id:
                return ch
        raise KeyError(letter_id)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "circles": [
                [{"letter": lid, "end": end} for lid, end in circle]
                for circle in self.circles
            ],
            "chords": [
                {
                    "letter": ch.letter_id,
                    "sign": ch.sign,
                    "a": {"circle": ch.a[0], "position": ch.a[1]},
                    "b": {"circle": ch.b[0], "position": ch.b[1]},
                    "admissible": ch.admissible,
                }
                for ch in self.chords
            ],
        }


def resolve(w: BraidWord) -> ChordDiagram:
    """Trace the circles of the B-resolved closure of ``w``."""
    n = w.n
    points: list[list[Marker]] = []  # per segment, in top-to-bottom order
    conn: dict[tuple[int, int], tuple[int, int]] = {}

    def new_segment(pts: list[Marker] | None = None) -> int:
        points.append(pts if pts is not None else [])
        return len(points) - 1

    def connect(a: tuple[int, int], b: tuple[int, int]) -> None:
        conn[a] = b
        conn[b] = a

    init = [new_segment() for _ in range(n)]  # strand order fixes trace order
    active = list(init)
    for lt in w.letters:
        g = lt.gen
        if lt.sign < 0:
            points[active[g - 1]].append((lt.id, 0))
            points[active[g]].append((lt.id, 1))
        else:
            upper = new_segment([(lt.id, 0)])
            connect((active[g - 1], 1), (upper, 0))
            connect((upper, 1), (active[g], 1))
            lower = new_segment([(lt.id, 1)])
            fresh_l, fresh_r = new_segment(), new_segment()
            connect((fresh_l, 0), (lower, 0))
            connect((lower, 1), (fresh_r, 0))
            active[g - 1], active[g] = fresh_l, fresh_r
    for i in range(n):
        connect((active[i], 1), (init[i], 0))

    circles: list[tuple[Marker, ...]] = []
    located: dict[Marker, tuple[int, int]] = {}
    visited: set[int] = set()
    for seed in range(len(points)):
        if seed in visited:
            continue
        circle: list[Marker] = []
        seg, entry = seed, 0
        while True:
            visited.add(seg)
            pts = points[seg] if entry == 0 else list(reversed(points[seg]))
            circle.extend(pts)
            seg, entry = conn[(seg, 1 - entry)]
            if (seg, entry) == (seed, 0):
                break
        idx = len(circles)
        for pos, marker in enumerate(circle):
            located[marker] = (idx, pos)
        circles.append(tuple(circle))

    chords = tuple(
        Chord(lt.id, lt.sign, located[(lt.id, 0)], located[(lt.id, 1)])
        for lt in w.letters
    )
    return ChordDiagram(n=n, c=len(w), circles=tuple(circles), chords=chords)


def circle_count(w: BraidWord) -> int:
    return resolve(w).circle_count


def j_min(w: BraidWord) -> int:
    """The minimal quantum grading -c - 2|s_B| of the closure of ``w``."""
    return -len(w) - 2 * circle_count(w)


def _crossing_pairs(spans: list[tuple[int, int, int]]) -> Iterator[tuple[int, int]]:
    """All interleaving pairs among (lo, hi, id) chord spans on one circle.

    Two chords cross iff exactly one endpoint of one lies strictly inside
    the other's span.  Sweeping endpoints in increasing position with the
    open chords ordered by their closing position reports each crossing
    pair exactly once, in O((k + crossings) log k).
    """
    events: list[tuple[int, int, tuple[int, int, int]]] = []
    for span in spans:
        events.append((span[0], 0, span))
        events.append((span[1], 1, span))
    events.sort()
    open_by_hi: SortedList = SortedList()
    for _, kind, (lo, hi, cid) in events:
        if kind == 0:
            for _, _, other in open_by_hi.irange((lo, 0, 0), (hi, 0, 0)):
                yield (other, cid)
            open_by_hi.add((hi, lo, cid))
        else:
            open_by_hi.remove((hi, lo, cid))


def build_lando(d: ChordDiagram) -> Graph:
    """Vertices for admissible chords, edges for interleaving endpoint pairs."""
    g = Graph()
    by_circle: dict[int, list[tuple[int, int, int]]] = {}
    for ch in d.chords:
        if not ch.admissible:
            continue
        g.add_vertex(ch.letter_id)
        g.labels[ch.letter_id] = "+" if ch.sign > 0 else "-"
        lo, hi = sorted((ch.a[1], ch.b[1]))
        by_circle.setdefault(ch.a[0], []).append((lo, hi, ch.letter_id))
    for spans in by_circle.values():
        for u, v in _crossing_pairs(spans):
            g.add_edge(u, v)
    return g


def lando_graph(w: BraidWord) -> Graph:
    return build_lando(resolve(w))
