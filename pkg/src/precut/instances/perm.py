"""Pairs of total orders, in both projection styles.

The same elements carry two very different pairs of projections: the direct
one (each order projects to itself, giving deconcatenation/shuffle structure
constants) and the descent one (join with the opposite and meet, giving
global-descent structure constants).  The two Fock algebras are the two
classical bases of the same Hopf algebra of permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..preorder import chain, join, meet, opposite
from ..species import SpeciesInstance


@dataclass(frozen=True)
class PermPair:
    t1: tuple  # labels in increasing first order
    t2: tuple  # labels in increasing second order


def word_of(s: PermPair):
    """One-line pattern: second-order ranks read along the first order."""
    rank2 = {x: i + 1 for i, x in enumerate(s.t2)}
    return tuple(rank2[x] for x in s.t1)


def pair_from_word(word, ground=None):
    """Pair on ground (default 1..n) whose pattern is the given word."""
    n = len(word)
    ground = tuple(sorted(ground)) if ground is not None else tuple(range(1, n + 1))
    assert sorted(word) == list(range(1, n + 1))
    t1 = ground
    positions = sorted(range(n), key=lambda i: word[i])
    t2 = tuple(ground[i] for i in positions)
    return PermPair(t1, t2)


def _shuffles(left, right):
    if not left:
        yield right
        return
    if not right:
        yield left
        return
    for rest in _shuffles(left[1:], right):
        yield (left[0],) + rest
    for rest in _shuffles(left, right[1:]):
        yield (right[0],) + rest


class PermPairs(SpeciesInstance):
    """basis="f": projections are the orders themselves.
    basis="m": first projection join(t1, t2-opposite), second meet(t1, t2)."""

    cap = 7

    def __init__(self, basis="f"):
        super().__init__()
        assert basis in ("f", "m")
        self.basis = basis
        self.name = f"perm_{basis}"

    def _elements(self, ground):
        out = []
        for t1 in itertools.permutations(ground):
            for t2 in itertools.permutations(ground):
                out.append(PermPair(t1, t2))
        return out

    def restrict(self, s, sub):
        sub = frozenset(sub)
        return PermPair(
            tuple(x for x in s.t1 if x in sub),
            tuple(x for x in s.t2 if x in sub),
        )

    def relabel(self, s, mapping):
        return PermPair(
            tuple(mapping[x] for x in s.t1),
            tuple(mapping[x] for x in s.t2),
        )

    def pi1(self, s):
        if self.basis == "f":
            return chain(s.t1)
        return join(chain(s.t1), opposite(chain(s.t2)))

    def pi2(self, s):
        if self.basis == "f":
            return chain(s.t2)
        return meet(chain(s.t1), chain(s.t2))

    def ground_of(self, s):
        return frozenset(s.t1)

    def serialize(self, s):
        return ("perm", s.t1, s.t2)

    def extend_corners(self, corner):
        if self.basis == "f":
            # first order concatenates along the (A∪B, C∪D) cut, second along (A∪C, B∪D)
            return [
                PermPair(
                    corner.s_ab.t1 + corner.s_cd.t1,
                    corner.s_ac.t2 + corner.s_bd.t2,
                )
            ]
        # descent basis: the (A∪B, C∪D) cut of the join forces both orders:
        # A∪B first in t1 and last in t2
        return [
            PermPair(
                corner.s_ab.t1 + corner.s_cd.t1,
                corner.s_cd.t2 + corner.s_ab.t2,
            )
        ]

    def extend_mu(self, which, u, v):
        if self.basis == "f":
            if which == 1:
                return [
                    PermPair(u.t1 + v.t1, t2) for t2 in _shuffles(u.t2, v.t2)
                ]
            return [PermPair(t1, u.t2 + v.t2) for t1 in _shuffles(u.t1, v.t1)]
        if which == 1:
            return [PermPair(u.t1 + v.t1, v.t2 + u.t2)]
        return None  # meet-cut products go through the bucket scan
