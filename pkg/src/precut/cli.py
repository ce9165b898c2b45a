"""Command-line surface: enumeration, verification, avoidance, Fock tables,
square checks and small calculators for preorders, parking chains and pairs.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import fock
from .errors import PrecutError
from .instances import (
    AVOIDANCE_PRESETS,
    build_instance,
    build_preset,
    cc_matrix,
    generate_pair,
)
from .instances.pairs import MEMBERSHIP
from .preorder import (
    bubble_partition,
    bubbles,
    closure,
    component_partition,
    cuts,
    is_coarse,
    is_discrete,
    is_partition_order,
    is_poset,
    is_total_order,
    is_total_preorder,
    join,
    meet,
    minimal_total_refinement,
    opposite,
    preorder_from_json,
    restrict,
)
from .avoidance import is_irreducible
from .setn import check_dual_commutation, check_partial_pullback, square_from_json
from .species import check_bimonoid, check_intertwined, check_species_over_preorders


def _emit(data, as_json):
    if as_json:
        print(json.dumps(data, sort_keys=True, indent=1, default=str))
    else:
        _emit_text(data)


def _emit_text(data, indent=""):
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, dict) or _nested_list(v):
                print(f"{indent}{k}:")
                _emit_text(v, indent + "  ")
            else:
                print(f"{indent}{k}: {_inline(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, dict) or _nested_list(v):
                _emit_text(v, indent)
                print()
            else:
                print(f"{indent}{_inline(v)}")
    else:
        print(f"{indent}{_inline(data)}")


def _nested_list(v):
    return isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)


def _inline(v):
    if isinstance(v, list):
        return json.dumps(v)
    return v


def _load_instance(args):
    name = args.instance
    if getattr(args, "avoid", None):
        preset = args.avoid
        if preset not in AVOIDANCE_PRESETS:
            raise PrecutError(f"unknown avoidance preset {preset!r}")
        parent, _, _ = AVOIDANCE_PRESETS[preset]
        if parent is not None and name not in (None, parent):
            raise PrecutError(f"preset {preset!r} applies to {parent!r}, not {name!r}")
        return build_preset(preset)
    params = {}
    if getattr(args, "palette", None) is not None:
        params["palette"] = args.palette
    return build_instance(name, **params)


def cmd_enum(args):
    inst = _load_instance(args)
    ground = tuple(range(1, args.n + 1))
    if args.classes:
        registry = fock._ClassRegistry(inst)
        seen = {}
        for s in inst.elements(ground):
            cls = registry.class_of(s)
            seen[cls.cid] = cls
        listing = [
            {"id": c.cid, "repr": fock._jsonify(c.key)}
            for c in sorted(seen.values(), key=lambda c: c.key)
        ]
        _emit({"instance": inst.name, "degree": args.n, "classes": listing}, args.json)
    else:
        listing = [fock._jsonify(inst.serialize(s)) for s in inst.elements(ground)]
        _emit({"instance": inst.name, "degree": args.n, "elements": listing}, args.json)
    return 0


def cmd_verify(args):
    inst = _load_instance(args)
    checks = {
        "preorders": lambda degs: check_species_over_preorders(inst, args.nmax, degrees=degs),
        "intertwined": lambda degs: check_intertwined(inst, args.nmax, degrees=degs),
        "bimonoid": lambda degs: check_bimonoid(inst, args.coproduct, args.nmax, degrees=degs),
    }
    run = checks[args.check]
    if args.threads > 1:
        # populate the enumeration caches before fan-out; workers then only read
        for n in range(args.nmax + 1):
            inst.elements(tuple(range(1, n + 1)))
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(lambda n: run([n]), range(args.nmax + 1)))
        report = next((r for r in reports if not r.passed), reports[-1])
    else:
        report = run(None)
    _emit(
        {"instance": inst.name, "check": args.check, "nmax": args.nmax, **report.to_json()},
        args.json,
    )
    return 0 if report.passed else 1


def cmd_avoid(args):
    if args.preset not in AVOIDANCE_PRESETS:
        raise PrecutError(f"unknown avoidance preset {args.preset!r}")
    inst = build_preset(args.preset)
    out = {"preset": args.preset, "instance": inst.name}
    if args.check_irreducible:
        parent_name, aset, _ = AVOIDANCE_PRESETS[args.preset]
        if aset is None:
            raise PrecutError(f"preset {args.preset!r} has no single irreducibility claim")
        parent = build_instance(parent_name)
        report = is_irreducible(parent, args.check_irreducible, aset, args.nmax)
        out["irreducible"] = report.to_json()
        _emit(out, args.json)
        return 0 if report.passed else 1
    out["dimensions"] = fock.graded_dimensions(inst, args.nmax)
    _emit(out, args.json)
    return 0


def cmd_fock(args):
    inst = _load_instance(args)
    table = fock.fock_tables(
        inst,
        which_delta=args.delta,
        which_mu=args.mu,
        N=args.N,
        verify="force" if args.force else "auto",
        cache_dir=args.cache_dir,
    )
    axioms = fock.verify_hopf_axioms(table)
    summary = {
        "instance": inst.name,
        "N": args.N,
        "dimensions": table.dims(),
        "axioms_pass": axioms.passed,
    }
    if not axioms.passed:
        summary["axioms_failure"] = axioms.to_json()
    if args.out:
        data = table.to_json()
        if args.format == "csv":
            _write_csv(args.out, table)
        else:
            with open(args.out, "w") as fh:
                json.dump(data, fh, sort_keys=True, indent=1)
        summary["written"] = args.out
    _emit(summary, args.json)
    return 0 if axioms.passed else 1


def _write_csv(path, table):
    with open(path, "w") as fh:
        fh.write("kind,a,b,left,right,c,coeff\n")
        for (a, b), out in sorted(table.product.items()):
            for c, coeff in sorted(out.items()):
                fh.write(f"product,{a},{b},,,{c},{coeff}\n")
        for a, out in sorted(table.coproduct.items()):
            for (x, y), coeff in sorted(out.items()):
                fh.write(f"coproduct,{a},,{x},{y},,{coeff}\n")


def cmd_check_square(args):
    data = json.load(open(args.file)) if args.file != "-" else json.load(sys.stdin)
    sq = square_from_json(data)
    if args.mode == "pullback":
        res = check_partial_pullback(sq)
    else:
        res = check_dual_commutation(sq)
    _emit({"mode": args.mode, **res.to_json()}, args.json)
    return 0 if res.ok else 1


def _read_preorder(text):
    return preorder_from_json(json.loads(text))


def cmd_preorder(args):
    op = args.op
    if op == "closure":
        data = json.loads(args.p)
        out = closure(data["ground"], [tuple(pair) for pair in data["pairs"]]).to_json()
        _emit(out, args.json)
        return 0
    p = _read_preorder(args.p)
    q = _read_preorder(args.q) if args.q else None
    if op in ("meet", "join") and q is None:
        raise PrecutError(f"{op} needs --q")
    if op == "meet":
        out = meet(p, q).to_json()
    elif op == "join":
        out = join(p, q).to_json()
    elif op == "opposite":
        out = opposite(p).to_json()
    elif op == "cuts":
        out = [sorted(c.down) for c in cuts(p)]
    elif op == "bubbles":
        out = [sorted(b) for b in bubbles(p)]
    elif op == "bubble-partition":
        out = bubble_partition(p).to_json()
    elif op == "components":
        out = component_partition(p).to_json()
    elif op == "minimal-total":
        out = minimal_total_refinement(p).to_json()
    elif op == "restrict":
        out = restrict(p, set(json.loads(args.subset))).to_json()
    elif op == "predicates":
        out = {
            "total_preorder": is_total_preorder(p),
            "total_order": is_total_order(p),
            "poset": is_poset(p),
            "partition_order": is_partition_order(p),
            "discrete": is_discrete(p),
            "coarse": is_coarse(p),
        }
    else:
        raise PrecutError(f"unknown preorder op {op!r}")
    _emit(out, args.json)
    return 0


def cmd_parking(args):
    from .instances.parking import (
        break_points,
        dilation_sequence,
        filtration_preorder,
        parking_chains,
        parkize,
    )

    if args.enumerate is not None:
        chains = parking_chains(tuple(range(1, args.enumerate + 1)))
        _emit(
            {
                "n": args.enumerate,
                "count": len(chains),
                "chains": [[list(part) for part in chain] for chain in chains],
            },
            args.json,
        )
        return 0
    if not args.chain:
        raise PrecutError("parking needs --chain or --enumerate")
    data = json.loads(args.chain)
    ground = tuple(data["ground"])
    raw = [set(part) for part in data["chain"]]
    out = {
        "dilation": list(dilation_sequence(raw, ground)),
        "parkization": [list(part) for part in parkize(raw, ground)],
        "break_points": list(break_points(raw, ground)),
        "preorder": filtration_preorder(raw, ground).to_json(),
    }
    _emit(out, args.json)
    return 0


def cmd_pairs(args):
    if args.op == "membership":
        data = json.loads(args.data)
        p = preorder_from_json(data["p"])
        q = preorder_from_json(data["q"])
        out = {kind: member(p, q) for kind, member in MEMBERSHIP.items()}
        _emit(out, args.json)
        return 0
    if args.op == "matrix":
        data = json.loads(args.data)
        p = preorder_from_json(data["p"])
        q = preorder_from_json(data["q"])
        _emit([list(row) for row in cc_matrix(p, q)], args.json)
        return 0
    if args.op == "generate":
        data = json.loads(args.data)
        f1 = preorder_from_json(data["frame1"])
        f2 = preorder_from_json(data["frame2"])
        def refs(key):
            return {
                frozenset(item["bubble"]): preorder_from_json(item["preorder"])
                for item in data.get(key, [])
            }
        pair = generate_pair(data["kind"], f1, f2, refs("refine1"), refs("refine2"))
        _emit({"p": pair.p.to_json(), "q": pair.q.to_json()}, args.json)
        return 0
    raise PrecutError(f"unknown pairs op {args.op!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="precut")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON output")
    common.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", parents=[common], help="list elements or orbit classes per degree")
    p.add_argument("--instance", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--classes", action="store_true")
    p.add_argument("--avoid")
    p.add_argument("--palette", type=int)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("verify", parents=[common], help="run a species verification sweep")
    p.add_argument("--instance", required=True)
    p.add_argument("--check", choices=("preorders", "intertwined", "bimonoid"), required=True)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--coproduct", type=int, choices=(1, 2), default=1)
    p.add_argument("--avoid")
    p.add_argument("--palette", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("avoid", parents=[common], help="avoidance presets and irreducibility checks")
    p.add_argument("--preset", required=True)
    p.add_argument("--check-irreducible", type=int, choices=(1, 2), dest="check_irreducible")
    p.add_argument("--nmax", type=int, default=3)
    p.set_defaults(func=cmd_avoid)

    p = sub.add_parser("fock", parents=[common], help="compute graded structure constants")
    p.add_argument("--instance", required=True)
    p.add_argument("--avoid")
    p.add_argument("--palette", type=int)
    p.add_argument("--delta", type=int, choices=(1, 2), default=1)
    p.add_argument("--mu", type=int, choices=(1, 2), default=2)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--force", action="store_true")
    p.add_argument("--cache-dir", default=os.environ.get("PRECUT_CACHE_DIR"))
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("check-square", parents=[common], help="partial pullback / dual commutation")
    p.add_argument("--file", default="-")
    p.add_argument("--mode", choices=("pullback", "dual-commute"), default="pullback")
    p.set_defaults(func=cmd_check_square)

    p = sub.add_parser("preorder", parents=[common], help="lattice calculator")
    p.add_argument("--op", required=True)
    p.add_argument("--p", required=True, help="preorder JSON")
    p.add_argument("--q", help="second preorder JSON")
    p.add_argument("--subset", help="JSON list of labels for restrict")
    p.set_defaults(func=cmd_preorder)

    p = sub.add_parser("parking", parents=[common], help="parkization calculator")
    p.add_argument("--chain", help='JSON {"ground": [...], "chain": [[...], ...]}')
    p.add_argument("--enumerate", type=int, help="list all parking filtrations on 1..N")
    p.set_defaults(func=cmd_parking)

    p = sub.add_parser("pairs", parents=[common], help="pair membership, generators, matrices")
    p.add_argument("--op", choices=("membership", "matrix", "generate"), required=True)
    p.add_argument("--data", required=True, help="JSON payload")
    p.set_defaults(func=cmd_pairs)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, FileNotFoundError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
