"""Colored total orders: words in a finite alphabet with labeled positions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..preorder import chain, discrete
from ..species import SpeciesInstance


@dataclass(frozen=True)
class TensorWord:
    colors: tuple  # ((label, color), ...) sorted by label
    order: tuple  # labels, smallest first


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


class TensorWords(SpeciesInstance):
    """Pairs (coloring, total order); first projection discrete, second the order."""

    cap = 6

    def __init__(self, palette=2):
        super().__init__()
        self.palette = palette
        self.name = f"tensor[{palette}]"

    def _elements(self, ground):
        out = []
        for values in itertools.product(range(self.palette), repeat=len(ground)):
            colors = tuple(zip(ground, values))
            for order in itertools.permutations(ground):
                out.append(TensorWord(colors, order))
        return out

    def restrict(self, s, sub):
        sub = frozenset(sub)
        return TensorWord(
            tuple(kv for kv in s.colors if kv[0] in sub),
            tuple(x for x in s.order if x in sub),
        )

    def relabel(self, s, mapping):
        return TensorWord(
            tuple(sorted((mapping[x], c) for x, c in s.colors)),
            tuple(mapping[x] for x in s.order),
        )

    def pi1(self, s):
        return discrete(self.ground_of(s))

    def pi2(self, s):
        return chain(s.order)

    def ground_of(self, s):
        return frozenset(x for x, _ in s.colors)

    def serialize(self, s):
        return ("tensor", s.colors, s.order)

    def extend_corners(self, corner):
        # order: A ∪ C precedes B ∪ D, within each the corner order; colors glue
        colors = dict(corner.s_ac.colors)
        colors.update(corner.s_bd.colors)
        return [
            TensorWord(tuple(sorted(colors.items())), corner.s_ac.order + corner.s_bd.order)
        ]

    def extend_mu(self, which, u, v):
        colors = tuple(sorted(u.colors + v.colors))
        if which == 2:
            return [TensorWord(colors, u.order + v.order)]
        return [TensorWord(colors, order) for order in _shuffles(u.order, v.order)]
