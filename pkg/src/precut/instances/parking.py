"""Parking filtrations, parkization, and the species of filtration pairs.

A chain is stored in canonical parking form: a tuple of sorted label tuples
(X_1, ..., X_n) on a ground of size n with |X_p| >= p and X_n the ground;
X_0 = () is implicit.  Raw exhaustive filtrations of any length are accepted
at the boundary and parkized on ingest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import NotBreakPoint, NotExhaustive, NotNested
from ..preorder import Preorder, total_preorder_from_blocks
from ..species import SpeciesInstance


def _normalize_raw(raw, ground):
    ground = frozenset(ground)
    sets = [frozenset(part) for part in raw]
    prev = frozenset()
    for part in sets:
        if not prev <= part:
            raise NotNested(f"chain step {sorted(part)} does not contain {sorted(prev)}")
        if not part <= ground:
            raise NotNested(f"chain step {sorted(part)} escapes ground {sorted(ground)}")
        prev = part
    if sets and sets[-1] != ground or (not sets and ground):
        raise NotExhaustive("chain never reaches the ground set")
    return sets, ground


def dilation_sequence(raw, ground):
    """Strictly increasing reindexing p(0..n): p(t) is the first level past
    p(t-1) holding at least t elements.  Levels beyond the listed chain are
    the full ground."""
    sets, ground = _normalize_raw(raw, ground)
    n = len(ground)
    sizes = [0] + [len(part) for part in sets]

    def size_at(p):
        return sizes[p] if p < len(sizes) else n

    out = [0]
    for t in range(1, n + 1):
        p = out[-1] + 1
        while size_at(p) < t:
            p += 1
        out.append(p)
    return tuple(out)


def parkize(raw, ground):
    """Canonical parking chain (X_{p(1)}, ..., X_{p(n)})."""
    sets, ground = _normalize_raw(raw, ground)
    p = dilation_sequence(raw, ground)

    def level(i):
        return sets[i - 1] if i <= len(sets) else frozenset(ground)

    return tuple(tuple(sorted(level(p[t]))) for t in range(1, len(ground) + 1))


def break_points(raw, ground):
    """All b with |X_{p(b)}| = b; always contains 0 and n."""
    sets, ground = _normalize_raw(raw, ground)
    chain = parkize(raw, ground)
    out = [0]
    for b in range(1, len(ground) + 1):
        if len(chain[b - 1]) == b:
            out.append(b)
    return tuple(out)


def filtration_preorder(raw, ground) -> Preorder:
    """Total preorder whose bubbles are the gaps between successive break
    points, earlier gaps smaller."""
    chain = parkize(raw, ground)
    bps = break_points(raw, ground)
    blocks = []
    prev = frozenset()
    for b in bps[1:]:
        cur = frozenset(chain[b - 1])
        blocks.append(tuple(sorted(cur - prev)))
        prev = cur
    return total_preorder_from_blocks(blocks)


def restrict_filtration(chain, sub):
    """Parkization of the intersected chain."""
    sub = frozenset(sub)
    return parkize([frozenset(part) & sub for part in chain], sub)


def slice_below(chain, b):
    """Truncation at a break point: a parking chain on X_b."""
    if b not in break_points(chain, chain[-1] if chain else ()):
        raise NotBreakPoint(f"{b} is not a break point")
    return tuple(chain[:b])


def slice_above(chain, b):
    """Difference chain past a break point: a parking chain on X \\ X_b."""
    if b not in break_points(chain, chain[-1] if chain else ()):
        raise NotBreakPoint(f"{b} is not a break point")
    low = frozenset(chain[b - 1]) if b else frozenset()
    return tuple(tuple(sorted(frozenset(part) - low)) for part in chain[b:])


def parking_chains(ground):
    """All parking chains on the ground, via parking functions."""
    ground = tuple(sorted(ground))
    n = len(ground)
    out = []
    for values in itertools.product(range(1, n + 1), repeat=n):
        if all(sum(1 for v in values if v <= i) >= i for i in range(1, n + 1)):
            out.append(
                tuple(
                    tuple(x for x, v in zip(ground, values) if v <= i)
                    for i in range(1, n + 1)
                )
            )
    return out


@dataclass(frozen=True)
class ParkingPair:
    first: tuple
    second: tuple


class ParkingPairs(SpeciesInstance):
    """Pairs of parking filtrations; projections are the break-point preorders."""

    name = "parking"
    cap = 4

    def _elements(self, ground):
        chains = parking_chains(ground)
        return [ParkingPair(a, b) for a in chains for b in chains]

    def restrict(self, s, sub):
        return ParkingPair(
            restrict_filtration(s.first, sub), restrict_filtration(s.second, sub)
        )

    def relabel(self, s, mapping):
        remap = lambda chain: tuple(
            tuple(sorted(mapping[x] for x in part)) for part in chain
        )
        return ParkingPair(remap(s.first), remap(s.second))

    def pi1(self, s):
        return filtration_preorder(s.first, self.ground_of(s))

    def pi2(self, s):
        return filtration_preorder(s.second, self.ground_of(s))

    def ground_of(self, s):
        return frozenset(s.first[-1]) if s.first else frozenset()

    def serialize(self, s):
        return ("parking", s.first, s.second)

    def extend_corners(self, corner):
        ab = corner.A | corner.B
        ac = corner.A | corner.C
        first = corner.s_ab.first + tuple(
            tuple(sorted(ab | set(part))) for part in corner.s_cd.first
        )
        second = corner.s_ac.second + tuple(
            tuple(sorted(ac | set(part))) for part in corner.s_bd.second
        )
        return [ParkingPair(first, second)]
