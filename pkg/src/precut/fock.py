"""Graded Hopf algebra tables from a species bimonoid.

Basis elements are orbit classes of labeled elements under relabeling.  The
class coproduct projects every cut of one canonical representative; the
class product places canonical representatives side by side, multiplies in
the species, and projects.  Both are exact integer tables, verified against
the bialgebra axioms degree by degree.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import tempfile
from dataclasses import dataclass, field
from math import factorial

from .errors import CapExceeded, NotIntertwined
from .preorder import is_cut
from .species import SpeciesInstance, VerificationReport, check_intertwined, mu
from .species import (
    STAGE_ASSOC,
    STAGE_COASSOC,
    STAGE_COMPAT,
    STAGE_COUNIT,
    STAGE_UNIT,
)

CODE_VERSION = "0.1.0"
VERIFY_DEPTH_CAP = 4


def _jsonify(x):
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_jsonify(v) for v in x)
    return x


def canonical_form(inst: SpeciesInstance, s):
    """Least-serialization relabeling onto 1..n, with the witness bijection."""
    cached = getattr(inst, "_canon_cache", None)
    if cached is None:
        cached = inst._canon_cache = {}
    hit = cached.get(s)
    if hit is not None:
        return hit
    ground = sorted(inst.ground_of(s))
    n = len(ground)
    if n > inst.cap:
        raise CapExceeded(f"{inst.name}: canonical form at size {n} above cap {inst.cap}")
    best_key = None
    best = None
    for image in itertools.permutations(range(1, n + 1)):
        mapping = dict(zip(ground, image))
        r = inst.relabel(s, mapping)
        key = inst.serialize(r)
        if best_key is None or key < best_key:
            best_key, best = key, (r, mapping)
    cached[s] = best
    return best


@dataclass(frozen=True)
class OrbitClass:
    instance: str
    degree: int
    rep: object
    key: object
    cid: str


@dataclass
class StructureConstantTable:
    instance: str
    which_delta: int
    which_mu: int
    N: int
    classes: tuple
    product: dict  # (cid, cid) -> {cid: coeff}
    coproduct: dict  # cid -> {(cid, cid): coeff}
    by_id: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.by_id:
            self.by_id = {c.cid: c for c in self.classes}

    def degrees(self):
        out = {}
        for c in self.classes:
            out.setdefault(c.degree, []).append(c)
        return out

    def dims(self):
        degs = self.degrees()
        return [len(degs.get(n, ())) for n in range(self.N + 1)]

    def unit_class(self):
        (e,) = [c for c in self.classes if c.degree == 0]
        return e

    def to_json(self):
        return {
            "instance": self.instance,
            "which_delta": self.which_delta,
            "which_mu": self.which_mu,
            "N": self.N,
            "code_version": CODE_VERSION,
            "classes": [
                {"id": c.cid, "degree": c.degree, "repr": _jsonify(c.key)}
                for c in self.classes
            ],
            "product": [
                {
                    "a": a,
                    "b": b,
                    "result": [
                        {"c": cid, "coeff": coeff}
                        for cid, coeff in sorted(out.items())
                    ],
                }
                for (a, b), out in sorted(self.product.items())
            ],
            "coproduct": [
                {
                    "a": cid,
                    "result": [
                        {"left": x, "right": y, "coeff": coeff}
                        for (x, y), coeff in sorted(out.items())
                    ],
                }
                for cid, out in sorted(self.coproduct.items())
            ],
        }


def table_from_json(data) -> StructureConstantTable:
    classes = tuple(
        OrbitClass(data["instance"], c["degree"], None, _tupleize(c["repr"]), c["id"])
        for c in data["classes"]
    )
    product = {
        (row["a"], row["b"]): {cell["c"]: cell["coeff"] for cell in row["result"]}
        for row in data["product"]
    }
    coproduct = {
        row["a"]: {
            (cell["left"], cell["right"]): cell["coeff"] for cell in row["result"]
        }
        for row in data["coproduct"]
    }
    return StructureConstantTable(
        data["instance"],
        data["which_delta"],
        data["which_mu"],
        data["N"],
        classes,
        product,
        coproduct,
    )


def _tupleize(x):
    if isinstance(x, list):
        return tuple(_tupleize(v) for v in x)
    return x


def _class_id(instance, degree, key):
    blob = json.dumps([instance, degree, _jsonify(key)], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class _ClassRegistry:
    def __init__(self, inst):
        self.inst = inst
        self.by_key = {}

    def class_of(self, s):
        rep, _ = canonical_form(self.inst, s)
        key = self.inst.serialize(rep)
        cls = self.by_key.get(key)
        if cls is None:
            degree = len(self.inst.ground_of(rep))
            cls = OrbitClass(self.inst.name, degree, rep, key, _class_id(self.inst.name, degree, key))
            self.by_key[key] = cls
        return cls


_VERIFIED = {}


def _ensure_intertwined(inst, N, verify):
    if verify == "force":
        return
    depth = min(N, inst.cap, VERIFY_DEPTH_CAP)
    key = (inst.name, depth)
    report = _VERIFIED.get(key)
    if report is None:
        report = check_intertwined(inst, depth)
        _VERIFIED[key] = report
    if not report.passed:
        raise NotIntertwined(
            f"{inst.name} fails intertwining at nmax={depth}: stage={report.stage}"
        )


def fock_tables(
    inst: SpeciesInstance, which_delta=1, which_mu=2, N=3, verify="auto", cache_dir=None
) -> StructureConstantTable:
    """Integer structure constants of the Fock Hopf algebra up to degree N.

    The intertwining precondition is verified once per instance (depth
    capped at 4); pass verify="force" to skip it for negative-control
    experiments.  When cache_dir (or PRECUT_CACHE_DIR) is set, tables are
    persisted content-addressed by (instance, coproducts, N, code version).
    """
    if which_delta == which_mu:
        raise ValueError("which_delta and which_mu must differ")
    _ensure_intertwined(inst, N, verify)
    cache_path = _cache_path(inst.name, which_delta, which_mu, N, cache_dir)
    if cache_path and os.path.exists(cache_path):
        with open(cache_path) as fh:
            return table_from_json(json.load(fh))

    registry = _ClassRegistry(inst)
    per_degree = {}
    for n in range(N + 1):
        ground = tuple(range(1, n + 1))
        seen = {}
        for s in inst.elements(ground):
            cls = registry.class_of(s)
            seen[cls.cid] = cls
        per_degree[n] = sorted(seen.values(), key=lambda c: c.key)
    classes = tuple(c for n in range(N + 1) for c in per_degree[n])

    coproduct = {}
    for cls in classes:
        n = cls.degree
        ground = tuple(range(1, n + 1))
        acc = {}
        for mask in range(1 << n):
            down = frozenset(ground[i] for i in range(n) if mask >> i & 1)
            if not is_cut(inst.pi(which_delta, cls.rep), down):
                continue
            up = frozenset(ground) - down
            pair = (
                registry.class_of(inst.restrict(cls.rep, down)).cid,
                registry.class_of(inst.restrict(cls.rep, up)).cid,
            )
            acc[pair] = acc.get(pair, 0) + 1
        coproduct[cls.cid] = acc

    product = {}
    for a in classes:
        for b in classes:
            if a.degree + b.degree > N:
                continue
            shift = {i: a.degree + i for i in range(1, b.degree + 1)}
            v = inst.relabel(b.rep, shift) if b.degree else b.rep
            acc = {}
            for s in mu(inst, which_mu, a.rep, v):
                cid = registry.class_of(s).cid
                acc[cid] = acc.get(cid, 0) + 1
            product[(a.cid, b.cid)] = acc

    table = StructureConstantTable(
        inst.name, which_delta, which_mu, N, classes, product, coproduct
    )
    if cache_path:
        _atomic_write(cache_path, json.dumps(table.to_json(), sort_keys=True, indent=1))
    return table


def _cache_path(instance, which_delta, which_mu, N, cache_dir):
    cache_dir = cache_dir or os.environ.get("PRECUT_CACHE_DIR")
    if not cache_dir:
        return None
    blob = json.dumps([instance, which_delta, which_mu, N, CODE_VERSION])
    name = hashlib.sha256(blob.encode()).hexdigest()[:24] + ".json"
    return os.path.join(cache_dir, name)


def _atomic_write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


# -- axioms ----------------------------------------------------------------


def _scale(vec, c):
    return {k: v * c for k, v in vec.items()}


def _add(acc, vec):
    for k, v in vec.items():
        acc[k] = acc.get(k, 0) + v
    return acc


def _clean(vec):
    return {k: v for k, v in vec.items() if v}


def verify_hopf_axioms(table: StructureConstantTable, N=None) -> VerificationReport:
    """Exact integer checks of unit, counit, associativity, coassociativity
    and the bialgebra compatibility up to degree N."""
    N = table.N if N is None else N
    e = table.unit_class().cid
    deg = {c.cid: c.degree for c in table.classes}
    cls = [c.cid for c in table.classes if c.degree <= N]

    for a in cls:
        if table.product.get((e, a)) != {a: 1} or table.product.get((a, e)) != {a: 1}:
            return VerificationReport(False, STAGE_UNIT, {"class": a})
    for a in cls:
        cop = table.coproduct[a]
        left_counit = _clean({y: c for (x, y), c in cop.items() if x == e})
        right_counit = _clean({x: c for (x, y), c in cop.items() if y == e})
        if left_counit != {a: 1} or right_counit != {a: 1}:
            return VerificationReport(False, STAGE_COUNIT, {"class": a})

    for a in cls:
        for b in cls:
            for c in cls:
                if deg[a] + deg[b] + deg[c] > N:
                    continue
                left = {}
                for w, cw in table.product[(a, b)].items():
                    _add(left, _scale(table.product[(w, c)], cw))
                right = {}
                for w, cw in table.product[(b, c)].items():
                    _add(right, _scale(table.product[(a, w)], cw))
                if _clean(left) != _clean(right):
                    return VerificationReport(
                        False, STAGE_ASSOC, {"classes": [a, b, c]}
                    )

    for a in cls:
        left = {}
        for (x, y), c in table.coproduct[a].items():
            for (x1, x2), c2 in table.coproduct[x].items():
                key = (x1, x2, y)
                left[key] = left.get(key, 0) + c * c2
        right = {}
        for (x, y), c in table.coproduct[a].items():
            for (y1, y2), c2 in table.coproduct[y].items():
                key = (x, y1, y2)
                right[key] = right.get(key, 0) + c * c2
        if _clean(left) != _clean(right):
            return VerificationReport(False, STAGE_COASSOC, {"class": a})

    for a in cls:
        for b in cls:
            if deg[a] + deg[b] > N:
                continue
            left = {}
            for w, cw in table.product[(a, b)].items():
                for pair, c in table.coproduct[w].items():
                    left[pair] = left.get(pair, 0) + cw * c
            right = {}
            for (a1, a2), ca in table.coproduct[a].items():
                for (b1, b2), cb in table.coproduct[b].items():
                    for x, cx in table.product[(a1, b1)].items():
                        for y, cy in table.product[(a2, b2)].items():
                            key = (x, y)
                            right[key] = right.get(key, 0) + ca * cb * cx * cy
            if _clean(left) != _clean(right):
                def rows(vec):
                    return [
                        {"left": x, "right": y, "coeff": c}
                        for (x, y), c in sorted(_clean(vec).items())
                    ]

                return VerificationReport(
                    False,
                    STAGE_COMPAT,
                    {
                        "classes": [a, b],
                        "delta_of_product": rows(left),
                        "product_of_deltas": rows(right),
                    },
                )
    return VerificationReport(True)


def graded_dual(table: StructureConstantTable) -> StructureConstantTable:
    """Transpose the pairing: dual products are coproduct constants and
    vice versa."""
    product = {}
    coproduct = {cid: {} for cid in (c.cid for c in table.classes)}
    deg = {c.cid: c.degree for c in table.classes}
    for w, cop in table.coproduct.items():
        for (x, y), c in cop.items():
            product.setdefault((x, y), {})[w] = c
    for (x, y), out in table.product.items():
        for w, c in out.items():
            coproduct[w][(x, y)] = c
    # dual product cells absent from any coproduct are zero maps
    for a in table.classes:
        for b in table.classes:
            if a.degree + b.degree <= table.N:
                product.setdefault((a.cid, b.cid), {})
    return StructureConstantTable(
        table.instance + "^dual",
        table.which_mu,
        table.which_delta,
        table.N,
        table.classes,
        product,
        {cid: _clean(v) for cid, v in coproduct.items()},
    )


# -- isomorphism search -----------------------------------------------------


def _tables_comparable(ta, tb, N):
    da = [len([c for c in ta.classes if c.degree == n]) for n in range(N + 1)]
    db = [len([c for c in tb.classes if c.degree == n]) for n in range(N + 1)]
    return da == db


def _class_fingerprint(table, cls):
    """Cheap isomorphism invariant: degree patterns of the class's coproduct
    and of its products with itself."""
    deg = {c.cid: c.degree for c in table.classes}
    cop = sorted(
        (deg[x], deg[y], c) for (x, y), c in table.coproduct[cls.cid].items()
    )
    square = table.product.get((cls.cid, cls.cid), {})
    prod = sorted(square.values())
    return (cls.degree, tuple(cop), tuple(prod))


def check_isomorphism_by_constants(ta, tb, N=None):
    """Degree-respecting class bijection matching all constants, or None.

    Backtracks one class at a time; a candidate image must share the degree
    fingerprint and reproduce the class's full coproduct, which is already
    determined at assignment time (all its terms lie in lower degrees or
    involve the class itself).
    """
    N = min(ta.N, tb.N) if N is None else N
    if not _tables_comparable(ta, tb, N):
        return None
    per_a = {n: sorted((c for c in ta.classes if c.degree == n), key=lambda c: c.key) for n in range(N + 1)}
    per_b = {n: sorted((c for c in tb.classes if c.degree == n), key=lambda c: c.key) for n in range(N + 1)}
    fp_a = {c.cid: _class_fingerprint(ta, c) for c in ta.classes}
    fp_b = {c.cid: _class_fingerprint(tb, c) for c in tb.classes}

    def coproduct_matches(a_cid, b_cid, trial):
        image = dict(trial)
        image[a_cid] = b_cid
        want = {}
        for (x, y), c in ta.coproduct[a_cid].items():
            want[(image[x], image[y])] = want.get((image[x], image[y]), 0) + c
        return _clean(want) == _clean(tb.coproduct[b_cid])

    def assign_degree(degree, mapping):
        a_list = per_a[degree]
        b_list = per_b[degree]

        def rec(i, trial, used):
            if i == len(a_list):
                if _constants_match(ta, tb, trial, degree, N):
                    return extend(trial, degree + 1)
                return None
            a = a_list[i]
            for b in b_list:
                if b.cid in used or fp_b[b.cid] != fp_a[a.cid]:
                    continue
                if not coproduct_matches(a.cid, b.cid, trial):
                    continue
                trial[a.cid] = b.cid
                used.add(b.cid)
                out = rec(i + 1, trial, used)
                if out is not None:
                    return out
                del trial[a.cid]
                used.discard(b.cid)
            return None

        return rec(0, dict(mapping), set())

    def extend(mapping, degree):
        if degree > N:
            return mapping
        return assign_degree(degree, mapping)

    return extend({}, 0)


def _constants_match(ta, tb, mapping, degree, N):
    """Check all constants fully determined by classes of degree <= degree."""
    known = set(mapping)

    def mapped(vec):
        return {mapping[k]: v for k, v in vec.items()}

    for (a, b), out in ta.product.items():
        if a in known and b in known and all(w in known for w in out):
            db = tb.product.get((mapping[a], mapping[b]))
            if db is None or _clean(mapped(out)) != _clean(db):
                return False
    for a, cop in ta.coproduct.items():
        if a in known and all(x in known and y in known for x, y in cop):
            db = tb.coproduct.get(mapping[a])
            target = {(mapping[x], mapping[y]): c for (x, y), c in cop.items()}
            if db is None or _clean(target) != _clean(db):
                return False
    return True


def _solve_affine(rows, nvars):
    """Exact Gaussian elimination on [coeffs | rhs]; returns (pivots, reduced)
    or None when inconsistent."""
    from fractions import Fraction

    mat = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for col in range(nvars):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        mat[r] = [v / mat[r][col] for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    for row in mat[r:]:
        if row[-1]:
            return None
    return pivots, mat[: len(pivots)]


def check_isomorphism_by_change_of_basis(ta, tb, N=None, order_key=None):
    """Unitriangular integer transition intertwining both structures.

    Classes in each degree are ordered by order_key (default: serialization
    key); the returned dict maps degree -> matrix rows (tuples of ints), row
    i giving the expansion of the i-th source class in target classes.
    A None result means: not found under this triangular ansatz.
    """
    N = min(ta.N, tb.N) if N is None else N
    if not _tables_comparable(ta, tb, N):
        return None
    key = order_key or (lambda c: c.key)
    per_a = {n: sorted((c for c in ta.classes if c.degree == n), key=key) for n in range(N + 1)}
    per_b = {n: sorted((c for c in tb.classes if c.degree == n), key=key) for n in range(N + 1)}

    phi = {}  # cid of A-class -> {cid of B-class: int}
    matrices = {}
    for n in range(N + 1):
        a_classes, b_classes = per_a[n], per_b[n]
        m = len(a_classes)
        if n == 0:
            phi[a_classes[0].cid] = {b_classes[0].cid: 1}
            matrices[0] = ((1,),)
            continue
        unknown_index = {}
        for i in range(m):
            for j in range(i + 1, m):
                unknown_index[(i, j)] = len(unknown_index)
        nvars = len(unknown_index)

        def entry_terms(i, j):
            """(constant, var_index or None) for matrix entry (i, j)."""
            if i == j:
                return 1, None
            if j < i:
                return 0, None
            return 0, unknown_index[(i, j)]

        rows = []

        def add_equation(lin, const):
            # lin: {var: coeff}; equation lin·x = const
            row = [0] * (nvars + 1)
            for var, coeff in lin.items():
                row[var] = coeff
            row[-1] = const
            rows.append(row)

        b_pos = {c.cid: k for k, c in enumerate(b_classes)}
        a_pos = {c.cid: k for k, c in enumerate(a_classes)}

        # product constraints: phi(a.b) = phi(a) phi(b) for p+q = n, p,q >= 1
        for p in range(1, n):
            q = n - p
            for a in per_a[p]:
                for b in per_a[q]:
                    out = ta.product[(a.cid, b.cid)]
                    rhs_vec = {}
                    for a_img, ca in phi[a.cid].items():
                        for b_img, cb in phi[b.cid].items():
                            _add(rhs_vec, _scale(tb.product[(a_img, b_img)], ca * cb))
                    for tau in b_classes:
                        lin = {}
                        const = rhs_vec.get(tau.cid, 0)
                        for w, cw in out.items():
                            base, var = entry_terms(a_pos[w], b_pos[tau.cid])
                            const -= cw * base
                            if var is not None:
                                lin[var] = lin.get(var, 0) + cw
                        add_equation(lin, const)

        # coproduct constraints: (phi⊗phi) Delta_A(w) = Delta_B(phi w)
        e_a = ta.unit_class().cid
        e_b = tb.unit_class().cid
        for w in a_classes:
            lhs_const = {}
            lhs_lin = {}
            for (x, y), c in ta.coproduct[w.cid].items():
                if x == e_a and y == w.cid:
                    # contributes c * (e ⊗ phi(w)): unknown row of w
                    for tau in b_classes:
                        base, var = entry_terms(a_pos[w.cid], b_pos[tau.cid])
                        keyt = (e_b, tau.cid)
                        if base:
                            lhs_const[keyt] = lhs_const.get(keyt, 0) + c * base
                        if var is not None:
                            lhs_lin.setdefault(keyt, {})[var] = (
                                lhs_lin.get(keyt, {}).get(var, 0) + c
                            )
                elif y == e_a and x == w.cid:
                    for tau in b_classes:
                        base, var = entry_terms(a_pos[w.cid], b_pos[tau.cid])
                        keyt = (tau.cid, e_b)
                        if base:
                            lhs_const[keyt] = lhs_const.get(keyt, 0) + c * base
                        if var is not None:
                            lhs_lin.setdefault(keyt, {})[var] = (
                                lhs_lin.get(keyt, {}).get(var, 0) + c
                            )
                else:
                    for x_img, cx in phi[x].items():
                        for y_img, cy in phi[y].items():
                            keyt = (x_img, y_img)
                            lhs_const[keyt] = lhs_const.get(keyt, 0) + c * cx * cy
            # rhs: sum_tau phi[w][tau] * Delta_B(tau)
            rhs_lin = {}
            rhs_const = {}
            for tau in b_classes:
                base, var = entry_terms(a_pos[w.cid], b_pos[tau.cid])
                for pair, c in tb.coproduct[tau.cid].items():
                    if base:
                        rhs_const[pair] = rhs_const.get(pair, 0) + c * base
                    if var is not None:
                        rhs_lin.setdefault(pair, {})[var] = (
                            rhs_lin.get(pair, {}).get(var, 0) + c
                        )
            keys = set(lhs_const) | set(lhs_lin) | set(rhs_const) | set(rhs_lin)
            for keyt in keys:
                lin = dict(lhs_lin.get(keyt, {}))
                for var, coeff in rhs_lin.get(keyt, {}).items():
                    lin[var] = lin.get(var, 0) - coeff
                const = rhs_const.get(keyt, 0) - lhs_const.get(keyt, 0)
                add_equation(lin, const)

        if nvars == 0:
            solution = {}
        else:
            solved = _solve_affine(rows, nvars)
            if solved is None:
                return None
            pivots, reduced = solved
            free = [v for v in range(nvars) if v not in pivots]
            if len(free) > 12:
                return None
            solution = None
            for assignment in itertools.product((0, 1), repeat=len(free)):
                values = [None] * nvars
                for v, val in zip(free, assignment):
                    values[v] = val
                ok = True
                for prow, col in zip(reduced, pivots):
                    val = prow[-1] - sum(
                        prow[v] * values[v] for v in free
                    )
                    if val.denominator != 1:
                        ok = False
                        break
                    values[col] = int(val)
                if ok and all(v is not None for v in values):
                    solution = {v: values[v] for v in range(nvars)}
                    break
            if solution is None:
                return None

        mat = []
        for i in range(m):
            row = []
            for j in range(m):
                base, var = entry_terms(i, j)
                row.append(base if var is None else solution[var])
            mat.append(tuple(row))
        matrices[n] = tuple(mat)
        for i, a in enumerate(a_classes):
            phi[a.cid] = _clean({b_classes[j].cid: mat[i][j] for j in range(m)})

    if not _verify_transition(ta, tb, phi, N):
        return None
    return matrices


def _verify_transition(ta, tb, phi, N):
    deg = {c.cid: c.degree for c in ta.classes}
    for (a, b), out in ta.product.items():
        if deg[a] + deg[b] > N:
            continue
        lhs = {}
        for w, cw in out.items():
            _add(lhs, _scale(phi[w], cw))
        rhs = {}
        for a_img, ca in phi[a].items():
            for b_img, cb in phi[b].items():
                _add(rhs, _scale(tb.product[(a_img, b_img)], ca * cb))
        if _clean(lhs) != _clean(rhs):
            return False
    for a, cop in ta.coproduct.items():
        if deg[a] > N:
            continue
        lhs = {}
        for (x, y), c in cop.items():
            for x_img, cx in phi[x].items():
                for y_img, cy in phi[y].items():
                    key = (x_img, y_img)
                    lhs[key] = lhs.get(key, 0) + c * cx * cy
        rhs = {}
        for tau, ct in phi[a].items():
            for pair, c in tb.coproduct[tau].items():
                rhs[pair] = rhs.get(pair, 0) + ct * c
        if _clean(lhs) != _clean(rhs):
            return False
    return True


def graded_dimensions(inst: SpeciesInstance, N):
    """Orbit-class counts per degree, without building structure constants."""
    out = []
    for n in range(N + 1):
        ground = tuple(range(1, n + 1))
        keys = set()
        for s in inst.elements(ground):
            rep, _ = canonical_form(inst, s)
            keys.add(inst.serialize(rep))
        out.append(len(keys))
    return out


def orbit_size(inst, s):
    """Number of distinct relabelings of s on its own ground."""
    ground = sorted(inst.ground_of(s))
    seen = set()
    for image in itertools.permutations(ground):
        mapping = dict(zip(ground, image))
        seen.add(inst.relabel(s, mapping))
    return len(seen)


def coproduct_via_orbit_standard_splits(inst, which, cls):
    """Oracle for the class coproduct: orbit totals of standard splits,
    renormalized by |stab| / (k! (n-k)!); asserts exact integrality."""
    registry = _ClassRegistry(inst)
    n = cls.degree
    ground = tuple(range(1, n + 1))
    stab = factorial(n) // orbit_size(inst, cls.rep)
    totals = {}
    seen = set()
    for image in itertools.permutations(ground):
        mapping = dict(zip(ground, image))
        s = inst.relabel(cls.rep, mapping)
        if s in seen:
            continue
        seen.add(s)
        for k in range(n + 1):
            down = frozenset(ground[:k])
            if not is_cut(inst.pi(which, s), down):
                continue
            pair = (
                registry.class_of(inst.restrict(s, down)).cid,
                registry.class_of(inst.restrict(s, frozenset(ground) - down)).cid,
                k,
            )
            totals[pair] = totals.get(pair, 0) + 1
    out = {}
    for (x, y, k), total in totals.items():
        scaled = total * stab
        denom = factorial(k) * factorial(n - k)
        assert scaled % denom == 0, "orbit-averaged coproduct must be integral"
        out[(x, y)] = out.get((x, y), 0) + scaled // denom
    return out
