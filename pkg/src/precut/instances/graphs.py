"""Simple graphs with the component partition as second projection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..preorder import discrete, partition_order
from ..species import SpeciesInstance


@dataclass(frozen=True)
class Graph:
    vertices: tuple  # sorted labels
    edges: tuple  # sorted pairs (x, y) with x < y

    def has_edge(self, x, y):
        return (min(x, y), max(x, y)) in self.edges


def _components(vertices, edges):
    comp = {x: {x} for x in vertices}
    for x, y in edges:
        cx, cy = comp[x], comp[y]
        if cx is not cy:
            cx |= cy
            for z in cy:
                comp[z] = cx
    seen = []
    for x in vertices:
        if not any(x in c for c in seen):
            seen.append(frozenset(comp[x]))
    return seen


class Graphs(SpeciesInstance):
    name = "graphs"
    cap = 6

    def _elements(self, ground):
        pairs = list(itertools.combinations(ground, 2))
        out = []
        for r in range(len(pairs) + 1):
            for chosen in itertools.combinations(pairs, r):
                out.append(Graph(ground, chosen))
        return out

    def restrict(self, s, sub):
        sub = frozenset(sub)
        return Graph(
            tuple(x for x in s.vertices if x in sub),
            tuple(e for e in s.edges if e[0] in sub and e[1] in sub),
        )

    def relabel(self, s, mapping):
        verts = tuple(sorted(mapping[x] for x in s.vertices))
        edges = tuple(
            sorted(
                (min(mapping[x], mapping[y]), max(mapping[x], mapping[y]))
                for x, y in s.edges
            )
        )
        return Graph(verts, edges)

    def pi1(self, s):
        return discrete(s.vertices)

    def pi2(self, s):
        return partition_order(_components(s.vertices, s.edges))

    def ground_of(self, s):
        return frozenset(s.vertices)

    def serialize(self, s):
        return ("graph", s.vertices, s.edges)

    def extend_corners(self, corner):
        # both big cuts forbid any edge beyond the four corner restrictions
        edges = sorted(
            set(corner.s_ac.edges)
            | set(corner.s_bd.edges)
            | set(corner.s_ab.edges)
            | set(corner.s_cd.edges)
        )
        verts = tuple(sorted(corner.A | corner.B | corner.C | corner.D))
        return [Graph(verts, tuple(edges))]

    def extend_mu(self, which, u, v):
        verts = tuple(sorted(u.vertices + v.vertices))
        base = tuple(sorted(u.edges + v.edges))
        if which == 2:
            return [Graph(verts, base)]
        cross = [
            (min(x, y), max(x, y)) for x in u.vertices for y in v.vertices
        ]
        out = []
        for r in range(len(cross) + 1):
            for chosen in itertools.combinations(cross, r):
                out.append(Graph(verts, tuple(sorted(base + chosen))))
        return out
