"""The polynomial-time solver for extreme Khovanov homotopy types of
closed 4-braid diagrams.

The algorithm:

1. *Strong reduction.*  Four rewrite rules (positive square, negative
   square, nesting, R2) delete letters from the cyclic word until none
   of the forbidden patterns remains.  Each application either detects
   that the complex is contractible outright or records its effect in a
   ReductionTrace: suspension counts, letter ids whose Lando-graph
   vertices must be removed at the end, and a replayable log.  The
   invariant maintained throughout is

       I(original) ~ Sigma^k I(G(current word) - deleted ids) v terms.

2. *Classification.*  The positive part of a strongly-reduced 4-braid
   word falls into one of six families C0..C5, keyed by the number of
   adjacent s1/s3 pairs in the cyclic positive subword.  C4 words with
   a_1 > 1 are turned into C3 words by a Lando-preserving rotate /
   reverse / involution chain.

3. *Easy classes.*  C0 is a three-way closed form; C1, C2 and C5 reduce
   by the generic engine (their graphs are decorated polygons, disjoint
   paths, and unions of two-bridge pieces).

4. *C3/C4.*  The head (the unique s2 w1 s3 w2 s1 w3 s2 neighborhood of
   the s3.s1 junction) is normalized and validated; s2-inverses in the
   tail are removed by the splitting-vertex rewrite; tail s1/s3 inverses
   (spiders) are eliminated case by case on the labeled graph; what
   remains is an induced subgraph of a (mod-)augmented rhomboid graph
   and is evaluated by the family evaluator.

Every graph-level step re-verifies its own justification (domination,
leaf, contractibility certificates) on the actual graph before applying
it, so a convention drift shows up as a loud InternalInconsistencyError
rather than a silently wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .braid import BraidLetter, BraidWord, involution, reverse, rotate
from .graph import Graph
from .homotopy import (
    CONTRACTIBLE,
    STALLED,
    HomotopyType,
    ReductionBudgetError,
    generic_reduce,
    reduce_extended,
    sphere,
    suspend,
    wedge,
)
from .resolution import ChordDiagram, build_lando, resolve
from .rhomboid import RhomboidStructure, assert_wedge_menu, eval_augmented_subgraph

_ORACLE_FALLBACK_LIMIT = 20
_RULE_PRIORITY = {"pos_square": 0, "neg_square": 1, "nesting": 2, "r2": 3}


class InternalInconsistencyError(RuntimeError):
    """A verified precondition failed mid-pipeline; carries the trace."""

    def __init__(self, message: str, trace: Optional["ReductionTrace"] = None):
        super().__init__(message)
        self.trace = trace


@dataclass
class ReductionTrace:
    """Suspensions, pending vertex deletions, wedge side terms and a
    replayable log accumulated across the pipeline.

    final_word is a convenience handle set by solve (the last word the
    graph stage saw); replaying the log from the input word must
    reproduce it exactly.
    """

    suspensions: int = 0
    deleted_vertex_ids: set[int] = field(default_factory=set)
    wedge_terms: list[HomotopyType] = field(default_factory=list)
    log: list[dict] = field(default_factory=list)
    final_word: Optional[BraidWord] = None

    def record(self, rule: str, **data) -> None:
        entry = {"rule": rule}
        entry.update(data)
        self.log.append(entry)

    def to_json_dict(self) -> dict:
        return {
            "suspensions": self.suspensions,
            "deleted_vertex_ids": sorted(self.deleted_vertex_ids),
            "wedge_terms": [h.to_json_dict() for h in self.wedge_terms],
            "log": self.log,
        }


@dataclass(frozen=True)
class BraidClass:
    """A C0..C5 family tag with exponents and the transforms applied to
    reach the canonical representative."""

    tag: str
    exponents: tuple[int, ...] = ()
    normalization: tuple[tuple, ...] = ()


@dataclass(frozen=True)
class HeadTail:
    """Anchor letter ids of the head s2 w1 s3 w2 s1 w3 s2 plus the
    negative segments (as letter-id tuples) and the tail positives."""

    left_s2: int
    s3: int
    s1: int
    right_s2: int
    w1: tuple[int, ...]
    w2: tuple[int, ...]
    w3: tuple[int, ...]
    tail_positive: tuple[int, ...]  # ids from right_s2 around to left_s2


# -- diagram-backed queries for the rewrite rules ------------------------------


class _DiagramView:
    """Admissibility and Lando-neighbor queries over a resolved word,
    with tombstones so negative-letter deletions stay O(1)."""

    def __init__(self, word: BraidWord):
        self.diagram: ChordDiagram = resolve(word)
        self.by_id = {ch.letter_id: ch for ch in self.diagram.chords}
        self.dead: set[int] = set()
        self.circle_letters: list[list[int]] = [
            [lid for lid, _end in circle] for circle in self.diagram.circles
        ]

    def admissible(self, lid: int) -> bool:
        if lid in self.dead:
            return False
        ch = self.by_id[lid]
        return ch.admissible

    def kill(self, lid: int) -> None:
        self.dead.add(lid)

    def neighbors(self, lid: int) -> set[int]:
        """Admissible chords interleaving chord ``lid`` on its circle."""
        ch = self.by_id[lid]
        if not self.admissible(lid):
            return set()
        ci = ch.a[0]
        p, q = sorted((ch.a[1], ch.b[1]))
        ring = self.circle_letters[ci]
        inside = ring[p + 1 : q]
        counts: dict[int, int] = {}
        for other in inside:
            counts[other] = counts.get(other, 0) + 1
        out = set()
        for other, cnt in counts.items():
            if other != lid and cnt == 1 and self.admissible(other):
                out.add(other)
        return out


# -- violation detection --------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    gen: int
    letters: tuple[int, ...]  # positions in the rotated view
    anchor: int


def _rotated_view(letters: list[BraidLetter]) -> tuple[list[BraidLetter], int]:
    start = min(range(len(letters)), key=lambda t: letters[t].id)
    return letters[start:] + letters[:start], start


def _find_violation(letters: list[BraidLetter], n: int) -> Optional[Violation]:
    """Highest-priority forbidden pattern, leftmost in the cyclic scan
    that starts at the letter with the smallest id."""
    m = len(letters)
    if m == 0:
        return None
    view, _start = _rotated_view(letters)
    best: Optional[Violation] = None

    def consider(v: Violation) -> None:
        nonlocal best
        if best is None or (_RULE_PRIORITY[v.rule], v.anchor, v.gen) < (
            _RULE_PRIORITY[best.rule],
            best.anchor,
            best.gen,
        ):
            best = v

    for i in range(1, n):
        near_pos = [
            t for t, lt in enumerate(view) if lt.sign > 0 and abs(lt.gen - i) <= 1
        ]
        k = len(near_pos)
        for idx in range(k):
            p, q = near_pos[idx], near_pos[(idx + 1) % k]
            if p == q:
                continue
            if view[p].gen == i == view[q].gen:
                consider(Violation("pos_square", i, (p, q), p))
        nest = [
            t
            for t, lt in enumerate(view)
            if (lt.sign > 0 and abs(lt.gen - i) <= 1) or (lt.sign < 0 and lt.gen == i)
        ]
        k = len(nest)
        for idx in range(k):
            a, b, c = nest[idx], nest[(idx + 1) % k], nest[(idx + 2) % k]
            if len({a, b, c}) < 3:
                continue
            la, lb, lc = view[a], view[b], view[c]
            kinds = tuple(
                lt.sign if lt.gen == i else 0 for lt in (la, lb, lc)
            )
            if kinds in ((1, -1, -1), (-1, -1, 1)):
                consider(Violation("nesting", i, (a, b, c), a))
        near_all = [t for t, lt in enumerate(view) if abs(lt.gen - i) <= 1]
        k = len(near_all)
        for idx in range(k):
            a, b = near_all[idx], near_all[(idx + 1) % k]
            if a == b:
                continue
            la, lb = view[a], view[b]
            if la.gen == i == lb.gen and la.sign != lb.sign:
                consider(Violation("r2", i, (a, b), a))
    for t in range(m):
        a, b = view[t], view[(t + 1) % m]
        if a.id != b.id and a.sign < 0 and b.sign < 0 and a.gen == b.gen:
            consider(Violation("neg_square", a.gen, (t, (t + 1) % m), t))
        c = view[(t + 2) % m]
        if (
            len({a.id, b.id, c.id}) == 3
            and all(lt.sign < 0 for lt in (a, b, c))
            and a.gen == c.gen
            and abs(a.gen - b.gen) == 1
        ):
            consider(Violation("neg_square", a.gen, (t, (t + 1) % m, (t + 2) % m), t))
    return best


def is_strongly_reduced(w: BraidWord) -> tuple[bool, Optional[dict]]:
    """Whether none of the four forbidden patterns occurs cyclically; the
    witness names the pattern and the letter ids involved."""
    v = _find_violation(list(w.letters), w.n)
    if v is None:
        return True, None
    view, _ = _rotated_view(list(w.letters))
    return False, {"pattern": v.rule, "gen": v.gen, "letters": [view[t].id for t in v.letters]}


# -- strong reduction ------------------------------------------------------------


def _gap_positions(view_len: int, p: int, q: int) -> list[int]:
    """Positions strictly between p and q in cyclic order."""
    out = []
    t = (p + 1) % view_len
    while t != q:
        out.append(t)
        t = (t + 1) % view_len
    return out


def strong_reduce(
    w: BraidWord, trace: Optional[ReductionTrace] = None
) -> tuple[Optional[BraidWord], ReductionTrace]:
    """Rewrite until strongly-reduced.  Returns (None, trace) when the
    complex is detected contractible, else (w_red, trace) with

        I(w) ~ Sigma^trace.suspensions I(G(w_red) - trace.deleted_vertex_ids).
    """
    trace = trace if trace is not None else ReductionTrace()
    letters = list(w.letters)
    dv: Optional[_DiagramView] = None

    def view_graph_neighbors(lid: int) -> set[int]:
        return {x for x in dv.neighbors(lid) if x not in trace.deleted_vertex_ids}

    def effective(lid: int) -> bool:
        return dv.admissible(lid) and lid not in trace.deleted_vertex_ids

    while True:
        vio = _find_violation(letters, w.n)
        if vio is None:
            return BraidWord(w.n, tuple(letters)), trace
        if dv is None:
            dv = _DiagramView(BraidWord(w.n, tuple(letters)))
        view, _ = _rotated_view(letters)
        i = vio.gen

        if vio.rule == "pos_square":
            p, q = vio.letters
            gap = _gap_positions(len(view), p, q)
            live_ui = [
                view[t].id
                for t in gap
                if view[t].sign < 0 and view[t].gen == i and effective(view[t].id)
            ]
            if live_ui:
                trace.record(
                    "pos_square_contractible",
                    gen=i,
                    letters=[view[p].id, view[q].id],
                    isolated=live_ui[0],
                )
                return None, trace
            drop = {view[q].id}
            for t in gap:
                lt = view[t]
                if lt.sign < 0 and abs(lt.gen - i) <= 1:
                    if effective(lt.id):
                        raise InternalInconsistencyError(
                            f"positive-square gap letter {lt.id} unexpectedly "
                            "carries a live admissible chord",
                            trace,
                        )
                    drop.add(lt.id)
                    dv.kill(lt.id)
            trace.deleted_vertex_ids.add(view[p].id)
            trace.record(
                "pos_square",
                gen=i,
                kept=view[p].id,
                deleted_letters=sorted(drop),
                marked=[view[p].id],
            )
            letters = [lt for lt in letters if lt.id not in drop]
            dv = None  # a positive letter left the word; circles changed
            continue

        if vio.rule == "neg_square":
            pos = vio.letters
            first, last = view[pos[0]], view[pos[-1]]
            target = None
            for cand in (first, last):
                if not effective(cand.id):
                    target = cand
                    break
            if target is None:
                n1 = view_graph_neighbors(first.id)
                n2 = view_graph_neighbors(last.id)
                if (n2 - {first.id}) <= (n1 - {last.id}) and last.id not in n1:
                    target = first
                elif (n1 - {last.id}) <= (n2 - {first.id}) and first.id not in n2:
                    target = last
                else:
                    raise InternalInconsistencyError(
                        "negative square without a non-adjacent domination "
                        f"between letters {first.id} and {last.id}",
                        trace,
                    )
            trace.record(
                "neg_square", gen=i, deleted_letters=[target.id],
                pattern=[lt.id for lt in (view[t] for t in pos)],
            )
            dv.kill(target.id)
            letters = [lt for lt in letters if lt.id != target.id]
            continue

        if vio.rule == "nesting":
            a, b, c = vio.letters
            la, lb, lc = view[a], view[b], view[c]
            if la.sign > 0:
                far, near = lc, lb
            else:
                far, near = la, lb
            target = None
            for cand in (far, near):
                if not effective(cand.id):
                    target = cand
                    break
            if target is None:
                nf = view_graph_neighbors(far.id)
                nn = view_graph_neighbors(near.id)
                if not ((nn - {far.id}) <= (nf - {near.id}) and near.id not in nf):
                    raise InternalInconsistencyError(
                        f"nesting letters {far.id}/{near.id} fail the expected "
                        "non-adjacent domination",
                        trace,
                    )
                target = far
            trace.record(
                "nesting", gen=i, deleted_letters=[target.id],
                pattern=[la.id, lb.id, lc.id],
            )
            dv.kill(target.id)
            letters = [lt for lt in letters if lt.id != target.id]
            continue

        # r2: s_i ... s_i^-1 with a transparent gap
        a, b = vio.letters
        la, lb = view[a], view[b]
        pos_letter, neg_letter = (la, lb) if la.sign > 0 else (lb, la)
        if not effective(neg_letter.id):
            trace.record("r2_neutral", gen=i, deleted_letters=[neg_letter.id])
            dv.kill(neg_letter.id)
            letters = [lt for lt in letters if lt.id != neg_letter.id]
            continue
        raw = dv.neighbors(neg_letter.id)
        if not raw <= {pos_letter.id}:
            raise InternalInconsistencyError(
                f"R2 chord of letter {neg_letter.id} should touch at most the "
                f"vertex of letter {pos_letter.id}, found {sorted(raw)}",
                trace,
            )
        live = raw - trace.deleted_vertex_ids
        if not live:
            trace.record(
                "r2_contractible", gen=i, letters=[pos_letter.id, neg_letter.id]
            )
            return None, trace
        star = {pos_letter.id} | (
            view_graph_neighbors(pos_letter.id) - {neg_letter.id}
        )
        trace.suspensions += 1
        trace.deleted_vertex_ids |= star
        trace.record(
            "r2",
            gen=i,
            deleted_letters=[neg_letter.id],
            marked=sorted(star),
            suspended=1,
        )
        dv.kill(neg_letter.id)
        letters = [lt for lt in letters if lt.id != neg_letter.id]
        continue


def prune_neutral_negatives(w: BraidWord, trace: ReductionTrace) -> BraidWord:
    """Drop negative letters whose chords are not vertices of the
    effective graph (non-admissible, or already marked deleted); such
    deletions do not change I at all."""
    dvw = _DiagramView(w)
    drop = set()
    for lt in w.letters:
        if lt.sign < 0 and (
            not dvw.admissible(lt.id) or lt.id in trace.deleted_vertex_ids
        ):
            drop.add(lt.id)
            trace.deleted_vertex_ids.discard(lt.id)
    if drop:
        trace.record("prune_neutral", deleted_letters=sorted(drop))
    return BraidWord(w.n, tuple(lt for lt in w.letters if lt.id not in drop))


# -- classification ---------------------------------------------------------------


def classify(w: BraidWord) -> tuple[BraidClass, BraidWord]:
    """Family tag of a strongly-reduced 4-braid word plus the word
    normalized (rotation / involution) to the family's canonical form."""
    letters = list(w.letters)
    pos = [(t, lt) for t, lt in enumerate(letters) if lt.sign > 0]
    m = len(pos)
    if m <= 1:
        return BraidClass("C0"), w
    junctions = [
        t for t in range(m) if {pos[t][1].gen, pos[(t + 1) % m][1].gen} == {1, 3}
    ]
    if len(junctions) >= 2:
        return BraidClass("C5"), w
    if not junctions:
        gens = [lt.gen for _, lt in pos]
        x_slots = [t for t, g in enumerate(gens) if g != 2]
        if len(x_slots) * 2 != m or any(
            gens[(t + 1) % m] != 2 for t in x_slots
        ):
            raise InternalInconsistencyError(
                f"unclassifiable positive structure {gens} (strong reduction bug?)"
            )
        xs = [gens[t] for t in x_slots]
        if len(set(xs)) == 1:
            norm: list[tuple] = []
            ww = w
            r = pos[x_slots[0]][0]
            if r:
                ww = rotate(ww, r)
                norm.append(("rotate", r))
            if xs[0] == 3:
                ww = involution(ww)
                norm.append(("involution",))
            return BraidClass("C1", (len(xs),), tuple(norm)), ww
        # C2: block lengths of the alternating x-runs, starting at a 1-run
        starts = [
            t for t in range(len(xs)) if xs[t] != xs[t - 1]
        ]
        s0 = min(starts)
        blocks = []
        cur = 1
        order = [(s0 + t) % len(xs) for t in range(len(xs))]
        for a, b in zip(order, order[1:]):
            if xs[a] == xs[b]:
                cur += 1
            else:
                blocks.append(cur)
                cur = 1
        blocks.append(cur)
        norm = []
        ww = w
        r = pos[x_slots[s0]][0]
        if r:
            ww = rotate(ww, r)
            norm.append(("rotate", r))
        if xs[s0] == 3:
            ww = involution(ww)
            norm.append(("involution",))
        return BraidClass("C2", tuple(blocks), tuple(norm)), ww
    # exactly one junction: C3 or C4
    t = junctions[0]
    p_first, p_second = pos[t], pos[(t + 1) % m]
    norm = []
    ww = w
    r = p_first[0]
    if r:
        ww = rotate(ww, r)
        norm.append(("rotate", r))
    if p_first[1].gen == 1:
        ww = involution(ww)
        norm.append(("involution",))
    pos2 = [(tt, lt) for tt, lt in enumerate(ww.letters) if lt.sign > 0]
    gens2 = [lt.gen for _, lt in pos2]
    if gens2[0] != 3 or gens2[1] != 1:
        raise InternalInconsistencyError(f"junction normalization failed: {gens2}")
    xs = [g for g in gens2[1:] if g != 2]
    if any(g != 2 for tt, g in enumerate(gens2[1:]) if tt % 2 == 1) or len(
        gens2
    ) != 2 * len(xs) + 1:
        raise InternalInconsistencyError(
            f"C3/C4 positive structure malformed: {gens2}"
        )
    blocks = []
    cur = 1
    for a, b in zip(xs, xs[1:]):
        if a == b:
            cur += 1
        else:
            blocks.append(cur)
            cur = 1
    blocks.append(cur)
    if xs and xs[0] != 1:
        raise InternalInconsistencyError(f"C3/C4 first block is not a s1-block: {xs}")
    tag = "C3" if len(blocks) % 2 == 0 else "C4"
    return BraidClass(tag, tuple(blocks), tuple(norm)), ww


def c4_to_c3(w: BraidWord) -> tuple[BraidWord, tuple[tuple, ...]]:
    """The Lando-preserving rotate/reverse/involution chain sending a C4
    word with a_1 > 1 to a C3 word (applied to the full word)."""
    pos = [(t, lt) for t, lt in enumerate(w.letters) if lt.sign > 0]
    assert pos[0][1].gen == 3 and pos[1][1].gen == 1
    r = (pos[1][0] + 1) % len(w.letters)
    ww = rotate(w, r)
    ww = involution(reverse(ww))
    return ww, (("rotate", r), ("reverse",), ("involution",))


# -- the C3/C4 machinery -----------------------------------------------------------


def head_tail(
    w: BraidWord, cls: BraidClass, trace: Optional[ReductionTrace] = None
) -> tuple[BraidWord, HeadTail]:
    """Locate and normalize the head of a (canonicalized) C3/C4 word.

    Leading s1^-1 / trailing s3^-1 letters of w2 commute across the
    anchors (distant generators), which preserves the Lando graph; after
    that migration w2 must be one of the three shapes strong reduction
    allows.  Returns the possibly-rewritten word and the head/tail split.
    """
    letters = list(w.letters)

    def positives() -> list[int]:
        return [t for t, lt in enumerate(letters) if lt.sign > 0]

    ps = positives()
    p3, p1 = ps[0], ps[1]
    if letters[p3].gen != 3 or letters[p1].gen != 1:
        raise InternalInconsistencyError(f"head anchors misplaced in {w}")

    def swap(t: int) -> None:
        if trace is not None:
            trace.record("head_migration", swap=[letters[t].id, letters[t + 1].id])
        letters[t], letters[t + 1] = letters[t + 1], letters[t]

    # normalize via Lando-preserving commutations of distant generators:
    # pull w2-boundary s1^-1/s3^-1 across the anchors, and order adjacent
    # s3^-1 s1^-1 pairs inside the negative segments as s1^-1 s3^-1
    changed = True
    while changed:
        changed = False
        if p1 - p3 > 1 and letters[p3 + 1].gen == 1 and letters[p3 + 1].sign < 0:
            swap(p3)
            p3 += 1
            changed = True
        if p1 - p3 > 1 and letters[p1 - 1].gen == 3 and letters[p1 - 1].sign < 0:
            swap(p1 - 1)
            p1 -= 1
            changed = True
        for t in range(len(letters) - 1):
            a, b = letters[t], letters[t + 1]
            if a.sign < 0 and b.sign < 0 and a.gen == 3 and b.gen == 1:
                swap(t)
                changed = True
    ww = BraidWord(w.n, tuple(letters))
    ps = positives()
    m = len(letters)
    right_s2 = ps[2] if len(ps) > 2 else ps[-1]
    left_s2 = ps[-1]
    if letters[right_s2].gen != 2 or letters[left_s2].gen != 2:
        raise InternalInconsistencyError(f"head s2 anchors missing in {ww}")
    w2 = tuple(letters[t].id for t in range(p3 + 1, p1))
    w3 = tuple(letters[t].id for t in range(p1 + 1, right_s2))
    w1 = tuple(letters[t].id for t in range(left_s2 + 1, m))
    tail_pos = tuple(letters[t].id for t in ps[2:])

    def seq(ids: tuple[int, ...]) -> tuple[int, ...]:
        by = {lt.id: lt for lt in letters}
        return tuple(by[i].gen for i in ids)

    w2_shape = seq(w2)
    menu_w1 = {(), (1, 2), (3, 2), (1, 3, 2)}
    menu_w3 = {(), (2, 3), (2, 1), (2, 1, 3)}
    if w2_shape == ():
        ok = seq(w1) in menu_w1 and seq(w3) in menu_w3
    elif w2_shape == (2,):
        ok = seq(w1) in menu_w1 | {(1,), (3, 2, 1)} and seq(w3) in menu_w3 | {
            (3,),
            (3, 2, 1),
        }
    elif w2_shape == (2, 1, 3, 2):
        ok = seq(w1) in {(), (3, 2)} and seq(w3) in {(), (2, 1)}
    else:
        ok = False
    if not ok:
        raise InternalInconsistencyError(
            f"head violates the strong-reduction menu: w1={seq(w1)} "
            f"w2={w2_shape} w3={seq(w3)}"
        )
    ht = HeadTail(
        left_s2=letters[left_s2].id,
        s3=letters[p3].id,
        s1=letters[p1].id,
        right_s2=letters[right_s2].id,
        w1=w1,
        w2=w2,
        w3=w3,
        tail_positive=tail_pos,
    )
    return ww, ht


def eliminate_tail_sigma2(
    w: BraidWord, ht: HeadTail, trace: ReductionTrace
) -> BraidWord:
    """Remove every s2^-1 from the tail by the splitting-vertex rewrite:
    s2 w1 sq w2 s2 becomes s2 w1' sq s2 sq w2' s2, where the new central
    triple replaces the original sq with fresh letters (the rewrite's
    graph isomorphism renames the surviving s2^-1 chords onto the outer
    central vertices, so the old id must not linger) and the lemma's
    vertex set is marked deleted."""
    letters = list(w.letters)
    next_id = w.fresh_id()
    dvw: Optional[_DiagramView] = None
    for j in range(0, len(ht.tail_positive) - 2, 2):
        P, Q, R = ht.tail_positive[j], ht.tail_positive[j + 1], ht.tail_positive[j + 2]
        by_index = {lt.id: t for t, lt in enumerate(letters)}
        pP, pQ, pR = by_index[P], by_index[Q], by_index[R]
        gap1 = [letters[t] for t in range(pP + 1, pQ)]
        gap2 = [letters[t] for t in range(pQ + 1, pR)]
        u1 = [lt.id for lt in gap1 if lt.gen == 2 and lt.sign < 0]
        u2 = [lt.id for lt in gap2 if lt.gen == 2 and lt.sign < 0]
        if not (u1 or u2):
            continue
        if Q not in trace.deleted_vertex_ids:
            # the rewrite encodes deleting the sq vertex, justified by its
            # (non-adjacent) domination over each surviving s2^-1 chord
            if dvw is None:
                dvw = _DiagramView(BraidWord(w.n, tuple(letters)))
            nq = {
                x
                for x in dvw.neighbors(Q)
                if x not in trace.deleted_vertex_ids
            }
            for u in u1 + u2:
                nu = {
                    x
                    for x in dvw.neighbors(u)
                    if x not in trace.deleted_vertex_ids
                }
                if u in nq or not (nu - {Q}) <= (nq - {u}):
                    raise InternalInconsistencyError(
                        f"splitting-vertex domination of {Q} over {u} fails",
                        trace,
                    )
        q_gen = letters[pQ].gen
        v1 = BraidLetter(id=next_id, gen=q_gen, sign=1)
        v2 = BraidLetter(id=next_id + 1, gen=2, sign=1)
        v1p = BraidLetter(id=next_id + 2, gen=q_gen, sign=1)
        next_id += 3
        marked = {v2.id}
        if not u1:
            marked.add(v1.id)
        elif not u2:
            marked.add(v1p.id)
        trace.deleted_vertex_ids |= marked
        dropped = u1 + u2 + [Q]
        survivors1 = [lt.id for lt in gap1 if lt.id not in u1]
        anchor = survivors1[-1] if survivors1 else P
        trace.record(
            "tail_s2_elimination",
            window=[P, Q, R],
            deleted_letters=dropped,
            inserted=[
                (anchor, v1.gen, v1.sign, v1.id),
                (v1.id, v2.gen, v2.sign, v2.id),
                (v2.id, v1p.gen, v1p.sign, v1p.id),
            ],
            marked=sorted(marked),
        )
        consumed = set(dropped)
        new_letters: list[BraidLetter] = []
        for lt in letters:
            if lt.id in consumed:
                continue
            new_letters.append(lt)
            if lt.id == anchor:
                new_letters.extend((v1, v2, v1p))
        letters = new_letters
        dvw = None  # positive letters changed; any cached view is stale
    return BraidWord(w.n, tuple(letters))


def derive_labels(
    w: BraidWord, ht: HeadTail, g: Graph
) -> tuple[dict[int, str], list[int]]:
    """Role labels for the Lando graph of a C3/C4 word with a clean tail,
    plus the extended-spine vertex order (word order, includes absent ids
    filtered out)."""
    by = {lt.id: lt for lt in w.letters}
    roles: dict[int, str] = {}
    if ht.s3 in g.adj:
        roles[ht.s3] = "b_r"
    if ht.s1 in g.adj:
        roles[ht.s1] = "b_l"
    b2s = [i for i in ht.w2 if by[i].gen == 2 and i in g.adj]
    for name, vid in zip(("b_2", "b_2p"), b2s):
        roles[vid] = name
    for i in ht.w2:
        if i in g.adj and i not in roles:
            roles[i] = f"e_{by[i].gen}"
    for i in ht.w1:
        if i in g.adj:
            roles[i] = "e_2" if by[i].gen == 2 else f"c{by[i].gen}"
    for i in ht.w3:
        if i in g.adj:
            roles[i] = "e_2p" if by[i].gen == 2 else f"d{by[i].gen}"
    spine_order = []
    spiders = []
    tail_ids = set(ht.tail_positive)
    # walk tail letters in word order, right anchor through left anchor
    started = False
    for lt in list(w.letters) + list(w.letters):
        if lt.id == ht.right_s2:
            started = True
        if not started:
            continue
        if lt.sign > 0 and lt.id in tail_ids and lt.id in g.adj:
            roles.setdefault(lt.id, "spine")
            if lt.id not in spine_order:
                spine_order.append(lt.id)
        if lt.sign < 0 and lt.gen in (1, 3) and lt.id in g.adj and lt.id not in set(ht.w1) | set(ht.w2) | set(ht.w3):
            roles[lt.id] = "spider"
            spiders.append(lt.id)
        if lt.id == ht.left_s2 and started and lt.id in spine_order:
            break
    hubs = [v for v in (ht.s1, ht.s3, *b2s) if v in g.adj]
    for vid in spine_order:
        if len(hubs) >= 2 and all(vid in g.adj[h] for h in hubs[:2]):
            roles[vid] = "spoke"
    return roles, spine_order


def _engine(g: Graph, hints: tuple[int, ...], trace: ReductionTrace, budget: int = 96):
    r = reduce_extended(g, budget=budget, hints=hints)
    if r is STALLED:
        if len(g) < _ORACLE_FALLBACK_LIMIT:
            from .oracle import homology_of_graph

            prof = homology_of_graph(g)
            if prof.torsion():
                raise InternalInconsistencyError(
                    "oracle fallback found torsion; wedge-of-spheres model broken",
                    trace,
                )
            dims = [d for d, rank, _ in prof.groups for _ in range(rank)]
            trace.record("oracle_fallback", vertices=len(g))
            return CONTRACTIBLE if not dims else HomotopyType(tuple(sorted(dims, reverse=True)))
        raise InternalInconsistencyError(
            f"reduction stalled on {len(g)} vertices (no oracle fallback)", trace
        )
    return r


def eliminate_spiders(
    g: Graph,
    roles: dict[int, str],
    spine_order: list[int],
    trace: ReductionTrace,
    budget: int = 96,
) -> Optional[Graph]:
    """Remove tail s1^-1/s3^-1 vertices case by case on the labeled
    graph.  Returns the residual graph, or None when the complex is
    found contractible.  Wedge side terms and suspensions go to the
    trace (side terms absolute, i.e. already fully suspended)."""

    def spiders() -> list[int]:
        return sorted(v for v, r in roles.items() if r == "spider" and v in g.adj)

    hub_ids = tuple(
        v for v, r in roles.items() if r in ("b_2", "b_2p", "b_l", "b_r")
    )

    while True:
        # leaves and isolated vertices first, bookkeeping suspensions
        moved = True
        while moved:
            moved = False
            for v in sorted(g.adj):
                if g.degree(v) == 0:
                    trace.record("spider_phase_isolated", vertex=v)
                    return None
            for v in sorted(g.adj):
                if g.degree(v) == 1:
                    pre = next(iter(g.adj[v]))
                    g = g.delete_star(pre)
                    trace.suspensions += 1
                    trace.record("spider_phase_leaf", leaf=v, preleaf=pre, suspended=1)
                    moved = True
                    break
        live = spiders()
        if not live:
            return g
        spine = [v for v in spine_order if v in g.adj]
        spokes = {v for v in spine if roles.get(v) == "spoke"}

        def spine_distance(vs: int) -> float:
            if vs not in spine:
                return float("inf")
            idx = spine.index(vs)
            best = float("inf")
            for direction in (1, -1):
                d = 0
                t = idx
                while 0 <= t < len(spine):
                    if spine[t] in spokes:
                        best = min(best, d)
                        break
                    t2 = t + direction
                    if not (0 <= t2 < len(spine)) or spine[t2] not in g.adj[spine[t]]:
                        break
                    d += 1
                    t = t2
            return best

        info = []
        for s in live:
            vs_cands = [x for x in g.adj[s] if x not in hub_ids]
            vs = min(vs_cands) if vs_cands else None
            info.append((s, vs, spine_distance(vs) if vs is not None else None))
        # spiders whose tail neighbor is gone are left to the generic engine
        actionable = [(s, vs, d) for s, vs, d in info if vs is not None]
        if not actionable:
            return g
        actionable.sort(key=lambda t: (t[2], t[0]))
        s, vs, d = actionable[0]

        bail = False
        while d not in (0, 1, 2) and d != float("inf"):
            # contract one spine 3-segment toward the nearest spoke
            idx = spine.index(vs)
            step = None
            for direction in (1, -1):
                dd, t = 0, idx
                while 0 <= t < len(spine):
                    if spine[t] in spokes:
                        if dd == d:
                            step = direction
                        break
                    t2 = t + direction
                    if not (0 <= t2 < len(spine)) or spine[t2] not in g.adj[spine[t]]:
                        break
                    dd += 1
                    t = t2
                if step:
                    break
            try:
                a, b, c = (
                    spine[idx + step],
                    spine[idx + 2 * step],
                    spine[idx + 3 * step],
                )
                g = g.contract_path((vs, a, b, c))
            except (ValueError, IndexError):
                bail = True
                break
            trace.suspensions += 1
            trace.record("spider_spine_csorba", path=[vs, a, b, c], suspended=1)
            spine = [x for x in spine if x in g.adj]
            if roles.get(c) == "spoke":
                roles[vs] = "spoke"
                spokes = {v for v in spine if roles.get(v) == "spoke"}
            d = spine_distance(vs)
        if bail:
            return g

        if d == 0:
            if not (g.dominates(vs, s) and s in g.adj[vs]):
                return g  # let the generic engine take over
            side = _engine(g.delete_star(vs), hub_ids, trace, budget)
            side_abs = suspend(side, trace.suspensions + 1)
            if not side_abs.is_contractible():
                trace.wedge_terms.append(side_abs)
            trace.record(
                "spider_d0", spider=s, spoke=vs, side=side_abs.to_json_dict()
            )
            g = g.delete_vertices([vs])
            continue
        if d == 1:
            idx = spine.index(vs)
            spoke = None
            for t in (idx - 1, idx + 1):
                if 0 <= t < len(spine) and spine[t] in spokes and spine[t] in g.adj[vs]:
                    spoke = spine[t]
                    break
            if spoke is None or not (
                g.dominates(spoke, s) and s not in g.adj[spoke]
            ):
                return g
            trace.record("spider_d1", spider=s, deleted_spoke=spoke)
            g = g.delete_vertices([spoke])
            continue
        if d == 2:
            probe = reduce_extended(g.delete_vertices([vs]), budget=budget, hints=hub_ids)
            if probe is STALLED or not probe.is_contractible():
                return g
            trace.suspensions += 1
            trace.record("spider_d2", spider=s, star_of=vs, suspended=1)
            g = g.delete_star(vs)
            continue
        # d infinite: paired-spider cases, else leave for the engine
        handled = False
        for s2, vs2, d2 in actionable[1:]:
            if vs2 == vs or s2 == s:
                continue
            if vs2 in g.adj[vs]:
                probe = reduce_extended(
                    g.delete_vertices([vs2]), budget=budget, hints=hub_ids
                )
                if probe is not STALLED and probe.is_contractible():
                    trace.suspensions += 1
                    trace.record("spider_dinf_adjacent", star_of=vs2, suspended=1)
                    g = g.delete_star(vs2)
                    handled = True
                    break
            mids = g.adj[vs] & g.adj[vs2]
            mids = {m for m in mids if m not in hub_ids and roles.get(m) != "spider"}
            if mids:
                m = min(mids)
                if g.adj[vs] == {s, m} and g.degree(m) == 2:
                    g = g.contract_path((s, vs, m, vs2))
                    trace.suspensions += 1
                    trace.record(
                        "spider_dinf_distance2", path=[s, vs, m, vs2], suspended=1
                    )
                    # s absorbs vs2's spine position and role
                    roles[s] = roles.pop(vs2, "spine")
                    if vs2 in spine_order:
                        spine_order[spine_order.index(vs2)] = s
                    handled = True
                    break
        if not handled:
            return g


def finish_positive_tail(
    g: Graph,
    roles: dict[int, str],
    trace: ReductionTrace,
    budget: int = 96,
) -> HomotopyType:
    """Evaluate the residual labeled graph (an induced subgraph of a
    (mod-)augmented rhomboid family member) and check the main-theorem
    output menu."""
    role_names = {
        "b_l": "b_l",
        "b_r": "b_r",
        "b_2": "b_2",
        "b_2p": "b_2p",
        "spoke": "spoke",
        "spine": "spine",
    }
    struct = RhomboidStructure(
        roles={v: role_names.get(r, r) for v, r in roles.items() if v in g.adj},
        augmented=True,
    )
    try:
        h = eval_augmented_subgraph(g, struct, budget=budget)
    except ReductionBudgetError:
        h = _engine(g, struct.hub_hints(g), trace, budget)
        assert_wedge_menu(h)
    return h


# -- class dispatch and entry point -------------------------------------------------


def _effective_graph(w: BraidWord, trace: ReductionTrace) -> Graph:
    return build_lando(resolve(w)).delete_vertices(trace.deleted_vertex_ids)


def solve_easy(
    w: BraidWord, cls: BraidClass, trace: ReductionTrace
) -> HomotopyType:
    """C0/C1/C2/C5: generic reduction of the effective graph, checked
    against each family's proven output menu."""
    g = _effective_graph(w, trace)
    try:
        r = generic_reduce(g, budget=64)
    except ReductionBudgetError:
        r = STALLED
    if r is STALLED:
        r = _engine(g, (), trace)  # certified splits, then oracle if small
    shapes = {"C0": 1, "C1": 2, "C2": 1, "C5": 1}
    if not r.is_contractible():
        if len(r.dims) > shapes[cls.tag] or (cls.tag == "C1" and len(set(r.dims)) > 1):
            raise InternalInconsistencyError(
                f"{cls.tag} value {r} violates the family menu", trace
            )
    return r


def solve(w: BraidWord, budget: int = 96) -> tuple[HomotopyType, ReductionTrace]:
    """Homotopy type of I(w) for a closed braid diagram on at most 4
    strands, with the reduction trace."""
    if w.n > 4:
        raise ValueError("the pipeline handles braid words on at most 4 strands")
    if w.n < 4:
        w = BraidWord(4, w.letters)
    trace = ReductionTrace()
    word = w
    for _round in range(60 + 2 * len(w)):
        reduced, trace = strong_reduce(word, trace)
        if reduced is None:
            trace.final_word = None
            return CONTRACTIBLE, trace
        word = prune_neutral_negatives(reduced, trace)
        if len(word) != len(reduced):
            continue  # pruning may expose new patterns
        cls, word = classify(word)
        if cls.normalization:
            trace.record("classify", tag=cls.tag, transforms=[list(c) for c in cls.normalization])
        if cls.tag == "C4" and cls.exponents[0] > 1:
            word, chain = c4_to_c3(word)
            trace.record("c4_to_c3", transforms=[list(c) for c in chain])
            cls, word = classify(word)
            if cls.normalization:
                trace.record(
                    "classify", tag=cls.tag, transforms=[list(c) for c in cls.normalization]
                )
            if cls.tag != "C3":
                raise InternalInconsistencyError(
                    f"C4 to C3 transform landed in {cls.tag}", trace
                )
        if cls.tag in ("C0", "C1", "C2", "C5"):
            trace.final_word = word
            h = solve_easy(word, cls, trace)
            break
        word, ht = head_tail(word, cls, trace)
        tail_has_s2inv = any(
            lt.sign < 0 and lt.gen == 2 and lt.id not in set(ht.w1) | set(ht.w2) | set(ht.w3)
            for lt in word.letters
        )
        if tail_has_s2inv:
            word = eliminate_tail_sigma2(word, ht, trace)
            continue
        trace.final_word = word
        g = _effective_graph(word, trace)
        roles, spine_order = derive_labels(word, ht, g)
        residual = eliminate_spiders(g, roles, spine_order, trace, budget)
        if residual is None:
            h = CONTRACTIBLE  # wedge side terms may still contribute
        else:
            h = finish_positive_tail(residual, roles, trace, budget)
        break
    else:
        raise InternalInconsistencyError("solve loop failed to converge", trace)
    out = suspend(h, trace.suspensions)
    for term in trace.wedge_terms:
        out = wedge(out, term)
    if not out.is_contractible():
        assert_wedge_menu(out)
    return out, trace


def replay_log(w: BraidWord, trace: ReductionTrace) -> tuple[BraidWord, set[int]]:
    """Re-apply the trace's letter deletions/insertions to the input
    word; returns the final word and the marked vertex set.  Used by the
    soundness tests: the result must equal the pipeline's final word."""
    letters = list(w.letters)
    for entry in trace.log:
        dropped = set(entry.get("deleted_letters", ()))
        if dropped:
            letters = [lt for lt in letters if lt.id not in dropped]
        for after_id, gen, sign, new_id in entry.get("inserted", ()):
            out = []
            for lt in letters:
                out.append(lt)
                if lt.id == after_id:
                    out.append(BraidLetter(id=new_id, gen=gen, sign=sign))
            letters = out
        if "swap" in entry:
            a, b = entry["swap"]
            idx = {lt.id: t for t, lt in enumerate(letters)}
            ta, tb = idx[a], idx[b]
            letters[ta], letters[tb] = letters[tb], letters[ta]
        for tname, *args in entry.get("transforms", ()):
            wtmp = BraidWord(w.n, tuple(letters))
            if tname == "rotate":
                wtmp = rotate(wtmp, args[0])
            elif tname == "reverse":
                wtmp = reverse(wtmp)
            elif tname == "involution":
                wtmp = involution(wtmp)
            letters = list(wtmp.letters)
    return BraidWord(w.n, tuple(letters)), set(trace.deleted_vertex_ids)
