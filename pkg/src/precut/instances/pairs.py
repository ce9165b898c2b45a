"""Pairs of preorders of the three incomparability-forces-bubble types, the
frame generators that produce them, and the packed-word subspecies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import FrameViolation, NotARefinement, NotTotalPreorder
from ..preorder import (
    Preorder,
    bubbles,
    closure,
    enumerate_preorders,
    is_partition_order,
    is_total_order,
    is_total_preorder,
    total_blocks,
    total_orders,
    total_preorders,
    restrict as restrict_preorder,
)
from ..species import SpeciesInstance


@dataclass(frozen=True)
class PreorderPair:
    p: Preorder
    q: Preorder


def _pointwise(p: Preorder, q: Preorder, forward, backward):
    """forward: strict p-comparison forces same q-bubble;
    backward: p-incomparability forces same q-bubble.  Returns the predicate
    'for all pairs, the selected implications hold' for (p, q) in this order."""
    for x, y in itertools.combinations(p.ground, 2):
        if forward and (p.lt(x, y) or p.lt(y, x)) and not q.same_bubble(x, y):
            return False
        if backward and p.incomparable(x, y) and not q.same_bubble(x, y):
            return False
    return True


def is_cc(p: Preorder, q: Preorder) -> bool:
    return _pointwise(p, q, False, True) and _pointwise(q, p, False, True)


def is_nc(p: Preorder, q: Preorder) -> bool:
    return _pointwise(q, p, False, True) and _pointwise(p, q, True, False)


def is_nn(p: Preorder, q: Preorder) -> bool:
    return _pointwise(p, q, True, False) and _pointwise(q, p, True, False)


MEMBERSHIP = {"cc": is_cc, "nc": is_nc, "nn": is_nn}


def _relabel_preorder(s: Preorder, mapping):
    return closure(
        [mapping[x] for x in s.ground],
        [(mapping[x], mapping[y]) for x, y in s.pairs()],
    )


class PreorderPairs(SpeciesInstance):
    cap = 4

    def __init__(self, kind):
        super().__init__()
        assert kind in MEMBERSHIP
        self.kind = kind
        self.name = kind

    def _all_preorders_on(self, ground):
        out = []
        for p in enumerate_preorders(len(ground)):
            mapping = dict(zip(p.ground, ground))
            out.append(_relabel_preorder(p, mapping))
        return out

    def _elements(self, ground):
        member = MEMBERSHIP[self.kind]
        pres = self._all_preorders_on(ground)
        return [
            PreorderPair(p, q)
            for p in pres
            for q in pres
            if member(p, q)
        ]

    def restrict(self, s, sub):
        return PreorderPair(restrict_preorder(s.p, sub), restrict_preorder(s.q, sub))

    def relabel(self, s, mapping):
        return PreorderPair(_relabel_preorder(s.p, mapping), _relabel_preorder(s.q, mapping))

    def pi1(self, s):
        return s.p

    def pi2(self, s):
        return s.q

    def ground_of(self, s):
        return frozenset(s.p.ground)

    def serialize(self, s):
        return ("pair", self.kind, s.p.ground, s.p.rows, s.q.rows)

    def extend_corners(self, corner):
        ground = corner.A | corner.B | corner.C | corner.D
        p_pairs = []
        q_pairs = []
        for part in (corner.s_ac, corner.s_bd, corner.s_ab, corner.s_cd):
            p_pairs += part.p.pairs()
            q_pairs += part.q.pairs()
        # comparisons across the unknown blocks follow the type postulates
        if self.kind == "cc":
            p_pairs += [(a, d) for a in corner.A for d in corner.D]
            q_pairs += [(a, d) for a in corner.A for d in corner.D]
            p_pairs += [(b, c) for b in corner.B for c in corner.C]
            q_pairs += [(c, b) for b in corner.B for c in corner.C]
        elif self.kind == "nc":
            q_pairs += [(a, d) for a in corner.A for d in corner.D]
            q_pairs += [(c, b) for b in corner.B for c in corner.C]
        candidate = PreorderPair(closure(ground, p_pairs), closure(ground, q_pairs))
        if not MEMBERSHIP[self.kind](candidate.p, candidate.q):
            return []
        return [candidate]


class PackedWords(PreorderPairs):
    """Subspecies of type cc: first component a total order, second a total
    preorder.  Orbit classes in degree n are the packed words of length n."""

    cap = 5

    def __init__(self):
        super().__init__("cc")
        self.name = "packed_words"

    def _elements(self, ground):
        return [
            PreorderPair(t1, t2)
            for t1 in total_orders(ground)
            for t2 in total_preorders(ground)
        ]

    def extend_corners(self, corner):
        out = super().extend_corners(corner)
        return [
            s for s in out if is_total_order(s.p) and is_total_preorder(s.q)
        ]


def packed_word_of(s: PreorderPair):
    """Word of second-component block ranks read along the first order."""
    seq = [x for block in total_blocks(s.p) for x in block]
    rank = {}
    for i, block in enumerate(total_blocks(s.q), start=1):
        for x in block:
            rank[x] = i
    return tuple(rank[x] for x in seq)


# -- generators from frames ------------------------------------------------


def refine_along(frame: Preorder, refinements) -> Preorder:
    """Replace selected bubbles of the frame by the given preorders on them."""
    frame_bubbles = set(bubbles(frame))
    refined = {}
    for bubble, r in refinements.items():
        bubble = frozenset(bubble)
        if bubble not in frame_bubbles:
            raise FrameViolation(f"{sorted(bubble)} is not a bubble of the frame")
        if not isinstance(r, Preorder) or frozenset(r.ground) != bubble:
            raise NotARefinement(f"refinement of {sorted(bubble)} must be a preorder on it")
        refined[bubble] = r
    pairs = []
    for x, y in frame.pairs():
        bubble = next(b for b in frame_bubbles if x in b)
        if y in bubble and bubble in refined:
            continue
        pairs.append((x, y))
    for r in refined.values():
        pairs += r.pairs()
    return closure(frame.ground, pairs)


def generate_pair(kind, frame1: Preorder, frame2: Preorder, refinements1, refinements2):
    """Construct a pair of the given type from frames plus bubble refinements.

    Frames: two total preorders for cc, a partition order and a total
    preorder for nc, two partition orders for nn.  The refined bubble sets
    must be disjoint and cross-contained in the other frame's bubbles.
    """
    if kind == "cc":
        if not (is_total_preorder(frame1) and is_total_preorder(frame2)):
            raise FrameViolation("cc frames must be total preorders")
    elif kind == "nc":
        if not is_partition_order(frame1):
            raise FrameViolation("nc first frame must be a partition order")
        if not is_total_preorder(frame2):
            raise FrameViolation("nc second frame must be a total preorder")
    elif kind == "nn":
        if not (is_partition_order(frame1) and is_partition_order(frame2)):
            raise FrameViolation("nn frames must be partition orders")
    else:
        raise FrameViolation(f"unknown kind {kind!r}")
    if frame1.ground != frame2.ground:
        raise FrameViolation("frames must share a ground")
    bset1 = {frozenset(b) for b in refinements1}
    bset2 = {frozenset(b) for b in refinements2}
    if bset1 & bset2:
        raise FrameViolation("refined bubble sets must be disjoint")
    for b in bset1:
        if not any(b <= frozenset(c) for c in bubbles(frame2)):
            raise FrameViolation(
                f"refined bubble {sorted(b)} not inside a bubble of the second frame"
            )
    for b in bset2:
        if not any(b <= frozenset(c) for c in bubbles(frame1)):
            raise FrameViolation(
                f"refined bubble {sorted(b)} not inside a bubble of the first frame"
            )
    p = refine_along(frame1, refinements1)
    q = refine_along(frame2, refinements2)
    pair = PreorderPair(p, q)
    if not MEMBERSHIP[kind](p, q):
        raise FrameViolation("constructed pair fails the type predicate")
    return pair


def cc_matrix(p: Preorder, q: Preorder):
    """Block-intersection matrix of two total preorders; entries sum to |X|."""
    if not (is_total_preorder(p) and is_total_preorder(q)):
        raise NotTotalPreorder("both components must be total preorders")
    rows = total_blocks(p)
    cols = total_blocks(q)
    return tuple(
        tuple(len(set(b) & set(c)) for c in cols) for b in rows
    )
