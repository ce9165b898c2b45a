"""The lattice of preorders on a finite labeled set.

Relations are stored as bitmask rows over the sorted ground tuple, so meet is
bitwise AND, join is a Warshall closure of bitwise OR, and the opposite is a
transpose.  Cuts, bubbles, refinements, the minimal total refinement and the
global-descent analysis of pairs of total orders all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceeded, GroundMismatch, UnknownLabel


def _closed_rows(n, rows):
    """Reflexive-transitive closure of bitmask rows, Warshall style."""
    rows = list(rows)
    for i in range(n):
        rows[i] |= 1 << i
    for k in range(n):
        kbit = 1 << k
        krow = rows[k]
        for i in range(n):
            if rows[i] & kbit:
                rows[i] |= krow
    return tuple(rows)


def _is_transitive(n, rows):
    for i in range(n):
        acc = rows[i]
        row = acc
        for k in range(n):
            if row >> k & 1:
                acc |= rows[k]
        if acc != rows[i]:
            return False
    return True


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive relation; ground is kept sorted."""

    ground: tuple
    rows: tuple

    def __post_init__(self):
        ground = tuple(self.ground)
        if list(ground) != sorted(ground):
            raise ValueError("ground must be sorted at construction")
        if len(set(ground)) != len(ground):
            raise ValueError("duplicate ground labels")
        n = len(ground)
        full = (1 << n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError("relation bits outside ground")
            if not row >> i & 1:
                raise ValueError("relation not reflexive")
        if not _is_transitive(n, self.rows):
            raise ValueError("relation not transitive")

    # -- basic queries ----------------------------------------------------

    def index(self, x):
        try:
            return self.ground.index(x)
        except ValueError:
            raise UnknownLabel(f"{x!r} not in ground {self.ground!r}") from None

    def leq(self, x, y):
        return bool(self.rows[self.index(x)] >> self.index(y) & 1)

    def lt(self, x, y):
        """Strictly below: comparable but not in the same bubble."""
        i, j = self.index(x), self.index(y)
        return bool(self.rows[i] >> j & 1) and not self.rows[j] >> i & 1

    def same_bubble(self, x, y):
        i, j = self.index(x), self.index(y)
        return bool(self.rows[i] >> j & 1) and bool(self.rows[j] >> i & 1)

    def incomparable(self, x, y):
        i, j = self.index(x), self.index(y)
        return not self.rows[i] >> j & 1 and not self.rows[j] >> i & 1

    def pairs(self):
        """All related pairs (x, y) with x <= y."""
        return [
            (x, y)
            for i, x in enumerate(self.ground)
            for j, y in enumerate(self.ground)
            if self.rows[i] >> j & 1
        ]

    def to_json(self):
        n = len(self.ground)
        return {
            "ground": list(self.ground),
            "rel": [[bool(self.rows[i] >> j & 1) for j in range(n)] for i in range(n)],
        }

    def __le__(self, other):
        """Lattice comparison: self refines-or-equals other entrywise."""
        if self.ground != other.ground:
            raise GroundMismatch(f"{self.ground!r} vs {other.ground!r}")
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))


def preorder_from_json(data) -> Preorder:
    ground = tuple(data["ground"])
    order = sorted(range(len(ground)), key=lambda i: ground[i])
    rel = data["rel"]
    rows = tuple(
        sum(1 << j for j, oj in enumerate(order) if rel[oi][oj]) for oi in order
    )
    return Preorder(tuple(sorted(ground)), rows)


# -- constructors ---------------------------------------------------------


def closure(ground, pairs) -> Preorder:
    """Smallest preorder on ground containing the given pairs."""
    g = tuple(sorted(ground))
    idx = {x: i for i, x in enumerate(g)}
    rows = [0] * len(g)
    for x, y in pairs:
        if x not in idx or y not in idx:
            raise UnknownLabel(f"pair ({x!r}, {y!r}) not within ground")
        rows[idx[x]] |= 1 << idx[y]
    return Preorder(g, _closed_rows(len(g), rows))


def discrete(ground) -> Preorder:
    g = tuple(sorted(ground))
    return Preorder(g, tuple(1 << i for i in range(len(g))))


def coarse(ground) -> Preorder:
    g = tuple(sorted(ground))
    full = (1 << len(g)) - 1
    return Preorder(g, tuple(full for _ in g))


def chain(sequence) -> Preorder:
    """Total order with the given sequence increasing left to right."""
    seq = tuple(sequence)
    g = tuple(sorted(seq))
    if len(set(seq)) != len(seq) or set(seq) != set(g):
        raise ValueError("chain sequence must list each ground element once")
    idx = {x: i for i, x in enumerate(g)}
    rows = [0] * len(g)
    for pos, x in enumerate(seq):
        for y in seq[pos:]:
            rows[idx[x]] |= 1 << idx[y]
    return Preorder(g, tuple(rows))


def total_preorder_from_blocks(blocks) -> Preorder:
    """Total preorder whose bubbles are the given blocks, increasing left to right."""
    blocks = [tuple(b) for b in blocks]
    flat = [x for b in blocks for x in b]
    g = tuple(sorted(flat))
    if len(set(flat)) != len(flat):
        raise ValueError("blocks overlap")
    idx = {x: i for i, x in enumerate(g)}
    rows = [0] * len(g)
    for bi, block in enumerate(blocks):
        above = [x for b in blocks[bi:] for x in b]
        for x in block:
            for y in above:
                rows[idx[x]] |= 1 << idx[y]
    return Preorder(g, tuple(rows))


def partition_order(blocks) -> Preorder:
    """Partition order (equivalence relation) with the given blocks."""
    blocks = [tuple(b) for b in blocks]
    flat = [x for b in blocks for x in b]
    g = tuple(sorted(flat))
    if len(set(flat)) != len(flat):
        raise ValueError("blocks overlap")
    idx = {x: i for i, x in enumerate(g)}
    rows = [0] * len(g)
    for block in blocks:
        mask = sum(1 << idx[x] for x in block)
        for x in block:
            rows[idx[x]] = mask
    return Preorder(g, tuple(rows))


# -- lattice operations ---------------------------------------------------


def _check_same_ground(p: Preorder, q: Preorder):
    if p.ground != q.ground:
        raise GroundMismatch(f"{p.ground!r} vs {q.ground!r}")


def meet(p: Preorder, q: Preorder) -> Preorder:
    _check_same_ground(p, q)
    return Preorder(p.ground, tuple(a & b for a, b in zip(p.rows, q.rows)))


def join(p: Preorder, q: Preorder) -> Preorder:
    _check_same_ground(p, q)
    n = len(p.ground)
    return Preorder(p.ground, _closed_rows(n, (a | b for a, b in zip(p.rows, q.rows))))


def opposite(p: Preorder) -> Preorder:
    n = len(p.ground)
    rows = tuple(
        sum(1 << j for j in range(n) if p.rows[j] >> i & 1) for i in range(n)
    )
    return Preorder(p.ground, rows)


# -- bubbles and components ----------------------------------------------


def bubbles(p: Preorder):
    """Mutual-comparability classes, each a frozenset, in sorted order."""
    n = len(p.ground)
    seen = 0
    out = []
    for i in range(n):
        if seen >> i & 1:
            continue
        mask = p.rows[i] & sum(1 << j for j in range(n) if p.rows[j] >> i & 1)
        seen |= mask
        out.append(frozenset(p.ground[j] for j in range(n) if mask >> j & 1))
    return tuple(out)


def total_blocks(p: Preorder):
    """Bubbles of a total preorder, smallest block first.

    Raises NotTotalPreorder when some pair is incomparable.
    """
    from .errors import NotTotalPreorder

    if not is_total_preorder(p):
        raise NotTotalPreorder(f"not a total preorder on {p.ground!r}")
    ranked = sorted(
        bubbles(p),
        key=lambda b: -bin(p.rows[p.index(next(iter(b)))]).count("1"),
    )
    return tuple(tuple(sorted(b)) for b in ranked)


def bubble_partition(p: Preorder) -> Preorder:
    """P° = P ∧ P-opposite: the partition order of the bubbles."""
    return meet(p, opposite(p))


def component_partition(p: Preorder) -> Preorder:
    """P• = P ∨ P-opposite: the partition order of the connected components."""
    return join(p, opposite(p))


# -- cuts and restriction -------------------------------------------------


@dataclass(frozen=True)
class Cut:
    down: frozenset
    up: frozenset


def _down_mask_ok(p: Preorder, mask):
    """mask is a down-set iff nothing below it is missed."""
    n = len(p.ground)
    for j in range(n):
        if mask >> j & 1:
            for i in range(n):
                if p.rows[i] >> j & 1 and not mask >> i & 1:
                    return False
    return True


def is_cut(p: Preorder, down) -> bool:
    down = frozenset(down)
    if not down <= set(p.ground):
        raise UnknownLabel(f"{down!r} not within ground")
    mask = sum(1 << i for i, x in enumerate(p.ground) if x in down)
    return _down_mask_ok(p, mask)


def cuts(p: Preorder):
    """All cuts, by subset bitmask ascending (so (∅, X) first, (X, ∅) last)."""
    n = len(p.ground)
    out = []
    for mask in range(1 << n):
        if _down_mask_ok(p, mask):
            down = frozenset(p.ground[i] for i in range(n) if mask >> i & 1)
            out.append(Cut(down, frozenset(p.ground) - down))
    return out


def restrict(p: Preorder, sub) -> Preorder:
    sub = frozenset(sub)
    if not sub <= set(p.ground):
        raise UnknownLabel(f"{sub!r} not within ground")
    keep = [i for i, x in enumerate(p.ground) if x in sub]
    rows = tuple(
        sum(1 << jj for jj, j in enumerate(keep) if p.rows[i] >> j & 1) for i in keep
    )
    return Preorder(tuple(p.ground[i] for i in keep), rows)


# -- refinements -----------------------------------------------------------


def is_refinement(p: Preorder, q: Preorder) -> bool:
    """p refines q: p-bubbles sit inside q-bubbles and strict parts agree
    across distinct q-bubbles."""
    _check_same_ground(p, q)
    for x, y in itertools.combinations(p.ground, 2):
        if p.same_bubble(x, y) and not q.same_bubble(x, y):
            return False
        if not q.same_bubble(x, y):
            if q.lt(x, y) != p.lt(x, y) or q.lt(y, x) != p.lt(y, x):
                return False
    return True


def is_bubble_refinement(p: Preorder, q: Preorder) -> bool:
    """Refinement whose strict part agrees with q everywhere."""
    _check_same_ground(p, q)
    for x, y in itertools.combinations(p.ground, 2):
        if p.same_bubble(x, y) and not q.same_bubble(x, y):
            return False
        if q.lt(x, y) != p.lt(x, y) or q.lt(y, x) != p.lt(y, x):
            return False
    return True


def minimal_total_refinement(p: Preorder) -> Preorder:
    """Least total preorder that p refines.

    Its bubbles are the connected classes of the incomparable-or-same-bubble
    relation; distinct classes compare uniformly through p.
    """
    n = len(p.ground)
    masks = []
    for i in range(n):
        m = 1 << i
        for j in range(n):
            if i != j:
                fwd = p.rows[i] >> j & 1
                bwd = p.rows[j] >> i & 1
                if fwd == bwd:  # incomparable or same bubble
                    m |= 1 << j
        masks.append(m)
    classes = _merge_masks(masks)
    # order classes by any cross pair; uniformity is forced for preorders
    def below(a, b):
        i = next(i for i in range(n) if a >> i & 1)
        j = next(j for j in range(n) if b >> j & 1)
        return bool(p.rows[i] >> j & 1)

    ordered = sorted(classes, key=lambda m: sum(1 for c in classes if c != m and below(c, m)))
    blocks = [
        tuple(p.ground[i] for i in range(n) if m >> i & 1) for m in ordered
    ]
    return total_preorder_from_blocks(blocks)


def _merge_masks(masks):
    """Connected components of the overlap graph of the given bitmasks."""
    classes = []
    for m in masks:
        merged = m
        rest = []
        for c in classes:
            if c & merged:
                merged |= c
            else:
                rest.append(c)
        classes = rest + [merged]
    changed = True
    while changed:  # late merges can create new overlaps
        changed = False
        out = []
        for c in classes:
            for i, o in enumerate(out):
                if o & c:
                    if o | c != o:
                        out[i] = o | c
                    changed = changed or (o | c != o)
                    break
            else:
                out.append(c)
        classes = out
    return classes


# -- predicates ------------------------------------------------------------


def is_total_preorder(p: Preorder) -> bool:
    n = len(p.ground)
    return all(
        p.rows[i] >> j & 1 or p.rows[j] >> i & 1
        for i in range(n)
        for j in range(i + 1, n)
    )


def is_poset(p: Preorder) -> bool:
    n = len(p.ground)
    return all(
        not (p.rows[i] >> j & 1 and p.rows[j] >> i & 1)
        for i in range(n)
        for j in range(i + 1, n)
    )


def is_total_order(p: Preorder) -> bool:
    return is_total_preorder(p) and is_poset(p)


def is_partition_order(p: Preorder) -> bool:
    return p == opposite(p)


def is_discrete(p: Preorder) -> bool:
    return p == discrete(p.ground)


def is_coarse(p: Preorder) -> bool:
    return p == coarse(p.ground)


# -- enumeration ----------------------------------------------------------

PREORDER_ENUM_CAP = 5


def enumerate_preorders(n, cap=PREORDER_ENUM_CAP):
    """All preorders on ground (1, ..., n), each exactly once."""
    if n > cap:
        raise CapExceeded(f"n={n} above preorder enumeration cap {cap}")
    ground = tuple(range(1, n + 1))
    if n == 0:
        yield Preorder(ground, ())
        return
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(offdiag)):
        rows = [1 << i for i in range(n)]
        for b, (i, j) in enumerate(offdiag):
            if bits >> b & 1:
                rows[i] |= 1 << j
        if _is_transitive(n, rows):
            yield Preorder(ground, tuple(rows))


def total_orders(ground):
    g = tuple(sorted(ground))
    for seq in itertools.permutations(g):
        yield chain(seq)


def total_preorders(ground):
    """All total preorders, via ordered set partitions of the ground."""
    g = tuple(sorted(ground))
    for blocks in _ordered_set_partitions(g):
        yield total_preorder_from_blocks(blocks)


def _ordered_set_partitions(items):
    items = tuple(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for blocks in _ordered_set_partitions(rest):
        for i in range(len(blocks)):
            yield blocks[:i] + [(first,) + blocks[i]] + blocks[i + 1 :]
        for i in range(len(blocks) + 1):
            yield blocks[:i] + [(first,)] + blocks[i:]


# -- pairs of total orders and global descents ----------------------------


@dataclass(frozen=True)
class TotalOrderPair:
    t1: Preorder
    t2: Preorder

    def __post_init__(self):
        _check_same_ground(self.t1, self.t2)
        if not (is_total_order(self.t1) and is_total_order(self.t2)):
            raise ValueError("both components must be total orders")


def order_sequence(t: Preorder):
    """Elements of a total order listed smallest first."""
    n = len(t.ground)
    return tuple(
        sorted(t.ground, key=lambda x: bin(t.rows[t.index(x)]).count("1"), reverse=True)
    )


def permutation_of_pair(pair: TotalOrderPair):
    """One-line word: t2-ranks read in t1 order."""
    seq1 = order_sequence(pair.t1)
    seq2 = order_sequence(pair.t2)
    rank2 = {x: i + 1 for i, x in enumerate(seq2)}
    return tuple(rank2[x] for x in seq1)


def global_descents(pair: TotalOrderPair):
    """Positions k in 1..n-1 where the word's first k values are its k largest."""
    word = permutation_of_pair(pair)
    n = len(word)
    out = set()
    seen = set()
    for k in range(1, n):
        seen.add(word[k - 1])
        if seen == set(range(n - k + 1, n + 1)):
            out.add(k)
    return out


def descent_preorder(pair: TotalOrderPair) -> Preorder:
    """T1 ∨ T2-opposite: total preorder whose nontrivial cuts are the global descents."""
    return join(pair.t1, opposite(pair.t2))
