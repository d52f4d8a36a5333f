#!/usr/bin/env python3
"""Enhanced-state (framed) Khovanov homology from first principles.

Dev-side ground truth, independent of the chord-diagram/Lando-graph
machinery: enumerate all 2^c Kauffman states of the closed braid
diagram, enhance circles with signs, wire up the incidence differential,
and compute integer homology per (i, j) bigrading.  Exponential in the
crossing number; meant for words of length <= 12 or so.
"""

from __future__ import annotations

import collections
import itertools

from khoform.braid import BraidWord
from khoform.oracle import smith_invariants


def circles_of_state(w: BraidWord, labels: str) -> list[frozenset]:
    """Circle classes (as frozensets of strand-interval nodes) of the
    smoothed closed diagram; labels[k] is the A/B assignment of letter k."""
    n, c = w.n, len(w.letters)
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(1, n + 1):
        union((i, c), (i, 0))
    for k, lt in enumerate(w.letters):
        g = lt.gen
        cupcap = (lt.sign > 0) == (labels[k] == "B")
        for i in range(1, n + 1):
            if i not in (g, g + 1):
                union((i, k), (i, k + 1))
        if cupcap:
            union((g, k), (g + 1, k))
            union((g, k + 1), (g + 1, k + 1))
        else:
            union((g, k), (g, k + 1))
            union((g + 1, k), (g + 1, k + 1))
    circles: dict = {}
    for i in range(1, n + 1):
        for k in range(c + 1):
            circles.setdefault(find((i, k)), set()).add((i, k))
    return [frozenset(s) for s in circles.values()]


def framed_khovanov(w: BraidWord, check_d2: bool = True) -> dict:
    """All framed Khovanov groups {(i, j): (rank, torsion)} of the closure."""
    c = len(w.letters)
    gens: dict = {}
    for labels_t in itertools.product("AB", repeat=c):
        labels = "".join(labels_t)
        circ = circles_of_state(w, labels)
        sigma = labels.count("A") - labels.count("B")
        m = len(circ)
        for p in range(m + 1):
            for plus in itertools.combinations(range(m), p):
                j = sigma + 2 * (p - (m - p))
                eps = frozenset(circ[i] for i in plus)
                gens.setdefault((sigma, j), []).append((labels, tuple(circ), eps))
    index: dict = {}
    for (i, j), lst in gens.items():
        for t, g in enumerate(lst):
            index[(g[0], g[2])] = (i, j, t)

    def diff(i: int, j: int) -> dict:
        cols: dict = {}
        for t, (labels, circ, eps) in enumerate(gens.get((i, j), [])):
            col: dict = {}
            for v in range(c):
                if labels[v] != "A":
                    continue
                labels2 = labels[:v] + "B" + labels[v + 1 :]
                sign = (-1) ** sum(1 for u in range(v + 1, c) if labels[u] == "B")
                circ2 = circles_of_state(w, labels2)
                circ_set = set(circ)
                common_plus = frozenset(x for x in circ2 if x in circ_set and x in eps)
                newc = [x for x in circ2 if x not in circ_set]
                for kk in range(len(newc) + 1):
                    for pluses in itertools.combinations(newc, kk):
                        hit = index.get((labels2, common_plus | frozenset(pluses)))
                        if hit and hit[0] == i - 2 and hit[1] == j:
                            col[hit[2]] = col.get(hit[2], 0) + sign
            cols[t] = {a: b for a, b in col.items() if b}
        return cols

    if check_d2:
        for (i, j) in gens:
            c1, c0 = diff(i, j), diff(i - 2, j)
            for t, col in c1.items():
                acc: collections.Counter = collections.Counter()
                for r, v in col.items():
                    for r2, v2 in c0.get(r, {}).items():
                        acc[r2] += v * v2
                if any(acc.values()):
                    raise AssertionError(f"d^2 != 0 at {(i, j)}")

    out = {}
    for (i, j), lst in sorted(gens.items()):
        r, _ = smith_invariants(diff(i, j), len(gens.get((i - 2, j), [])))
        if (i + 2, j) in gens:
            r_up, tors = smith_invariants(diff(i + 2, j), len(lst))
        else:
            r_up, tors = 0, []
        free = len(lst) - r - r_up
        if free or tors:
            out[(i, j)] = (free, tuple(tors))
    return out


def extreme_row(w: BraidWord) -> tuple[int, dict]:
    """(j_min, {framed i: (rank, torsion)}) of the closure of w."""
    c = len(w.letters)
    jmin = -c - 2 * len(circles_of_state(w, "B" * c))
    kh = framed_khovanov(w)
    return jmin, {i: g for (i, j), g in kh.items() if j == jmin}


if __name__ == "__main__":
    import sys

    from khoform.braid import parse

    n = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    w = parse(sys.argv[1], n)
    jmin, row = extreme_row(w)
    print(f"j_min = {jmin}")
    for i in sorted(row):
        print(f"  Kh_({i},{jmin}) rank {row[i][0]} torsion {list(row[i][1])}")
