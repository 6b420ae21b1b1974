"""Command-line interface.

One subcommand per library capability; all of them read the network file
format and report either as plain text or, with ``--json``, as a stable
versioned JSON document.  Exit codes: 0 for success or a positive
answer, 1 for a negative answer (inconsistent, not entailed, not
redundant), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import algebra, baselines, geometry, network, reasoning, redundancy
from .calculus import RCC5, RCC8, get_calculus, verify_relation_algebra
from .errors import RccError

SCHEMA = 1


def _report(args, command, outcome, metrics=None, artifacts=None, extra=None):
    doc = {
        "schema": SCHEMA,
        "command": command,
        "outcome": outcome,
        "metrics": metrics or {},
        "artifacts": artifacts or [],
    }
    if extra:
        doc.update(extra)
    if args.json:
        print(json.dumps(doc, indent=1, sort_keys=True))
    return doc


def _load_net(args, path):
    net = network.load(path)
    return net


def _resolve_sub(name):
    if name in (None, "auto"):
        return None
    return algebra.by_name(name)


def _write_or_print(args, text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return [path]
    if not args.json:
        sys.stdout.write(text)
    return []


def cmd_verify_tables(args):
    names = ["RCC5", "RCC8"] if args.calculus == "all" else [args.calculus]
    ok = True
    lines = []
    for name in names:
        rep = verify_relation_algebra(get_calculus(name))
        ok &= rep.passed
        lines.append(str(rep))
    _report(args, "verify-tables", "pass" if ok else "fail",
            extra={"reports": lines})
    if not args.json:
        print("\n".join(lines))
    return 0 if ok else 1


def cmd_subalg(args):
    sub = algebra.by_name(args.name)
    members = [sub.calculus.format(m) for m in sub.sorted_masks()]
    _report(args, "subalg", "ok",
            metrics={"members": len(members)},
            extra={"name": sub.name, "calculus": sub.calculus.name,
                   "members": members,
                   "flags": {"contains_all_basic": sub.contains_all_basic,
                             "closed": sub.closed,
                             "distributive": sub.distributive,
                             "tractable": sub.tractable}})
    if not args.json:
        for m in members:
            print(m)
    return 0


def cmd_closure(args):
    net = _load_net(args, args.net)
    res = reasoning.a_closure(net)
    if not res.consistent:
        _report(args, "closure", "inconsistent",
                metrics={"updates": res.updates},
                extra={"input": net.digest(), "witness": list(res.witness)})
        if not args.json:
            i, k, j = res.witness
            print(f"inconsistent: entry ({i + 1},{j + 1}) emptied via "
                  f"{k + 1}")
        return 1
    artifacts = _write_or_print(args, network.save(res.network), args.out)
    _report(args, "closure", "consistent",
            metrics={"updates": res.updates},
            artifacts=artifacts, extra={"input": net.digest()})
    return 0


def cmd_consistent(args):
    net = _load_net(args, args.net)
    ok = reasoning.is_consistent(net, _resolve_sub(args.subalgebra),
                                 guard=args.guard)
    _report(args, "consistent", "consistent" if ok else "inconsistent",
            extra={"input": net.digest()})
    if not args.json:
        print("consistent" if ok else "inconsistent")
    return 0 if ok else 1


def cmd_solve(args):
    net = _load_net(args, args.net)
    scenario = reasoning.solve(net, guard=args.guard)
    if scenario is None:
        _report(args, "solve", "no-scenario", extra={"input": net.digest()})
        if not args.json:
            print("no consistent scenario")
        return 1
    artifacts = _write_or_print(args, network.save(scenario), args.out)
    _report(args, "solve", "scenario", artifacts=artifacts,
            extra={"input": net.digest()})
    return 0


def cmd_entails(args):
    net = _load_net(args, args.net)
    rel = net.calculus.relation(args.relation)
    i, j = args.i - 1, args.j - 1
    ok = reasoning.entails(net, i, j, rel, guard=args.guard)
    _report(args, "entails", "entailed" if ok else "not-entailed",
            extra={"input": net.digest()})
    if not args.json:
        print("entailed" if ok else "not entailed")
    return 0 if ok else 1


def cmd_redundant(args):
    net = _load_net(args, args.net)
    ok = redundancy.is_redundant(net, args.i - 1, args.j - 1,
                                 guard=args.guard)
    _report(args, "redundant", "redundant" if ok else "not-redundant",
            extra={"input": net.digest()})
    if not args.json:
        print("redundant" if ok else "not redundant")
    return 0 if ok else 1


def cmd_minimal_check(args):
    net = _load_net(args, args.net)
    ok = reasoning.check_minimal(net, guard=args.guard)
    _report(args, "minimal-check", "minimal" if ok else "not-minimal",
            extra={"input": net.digest()})
    if not args.json:
        print("minimal" if ok else "not minimal")
    return 0 if ok else 1


def _pairs_1based(pairs):
    return [[i + 1, j + 1] for i, j in sorted(pairs)]


def cmd_prime(args):
    net = _load_net(args, args.net)
    t0 = time.perf_counter()
    if args.order:
        order = []
        for chunk in args.order.split(","):
            a, b = chunk.split("-")
            order.append((int(a) - 1, int(b) - 1))
        out_net = redundancy.prime_iterative(net, order, guard=args.guard)
        method = "iterative"
        checks = 0
    elif args.subalgebra not in (None, "auto") \
            or redundancy.detect_distributive(net) is not None:
        rep = redundancy.core_algorithm1(net, _resolve_sub(args.subalgebra))
        out_net, method, checks = rep.network, "algorithm1", rep.checks
    else:
        out_net = redundancy.prime_iterative(net, guard=args.guard)
        method = "iterative"
        checks = 0
    elapsed = time.perf_counter() - t0
    removed = sorted(set(net.constraint_pairs())
                     - set(out_net.constraint_pairs()))
    artifacts = _write_or_print(args, network.save(out_net), args.out)
    _report(args, "prime", "ok",
            metrics={"checks": checks, "seconds": elapsed},
            artifacts=artifacts,
            extra={"input": net.digest(), "method": method,
                   "removed": _pairs_1based(removed),
                   "kept": _pairs_1based(out_net.constraint_pairs())})
    if not args.json:
        print(f"method {method}: removed {len(removed)} constraints, "
              f"kept {out_net.constraint_count()}")
    return 0


def cmd_core(args):
    net = _load_net(args, args.net)
    t0 = time.perf_counter()
    rep = redundancy.core(net, guard=args.guard)
    elapsed = time.perf_counter() - t0
    artifacts = _write_or_print(args, network.save(rep.network), args.out)
    _report(args, "core", "ok",
            metrics={"checks": rep.checks, "seconds": elapsed},
            artifacts=artifacts,
            extra={"input": net.digest(),
                   "redundant": _pairs_1based(rep.redundant),
                   "trivially_redundant":
                       _pairs_1based(rep.trivially_redundant)})
    if not args.json:
        print(f"core kept {rep.network.constraint_count()} constraints; "
              f"{len(rep.nontrivial)} non-trivial redundant")
    return 0


def _compare_one(path, guard):
    rows, _ = baselines.compare([network.load(path)], guard=guard)
    return rows[0]


def cmd_compare(args):
    for name in args.algo.split(","):
        if name not in ("prime", "simpleext", "simple"):
            raise RccError(f"unknown algorithm {name!r}")
    if args.workers > 1 and len(args.nets) > 1:
        import concurrent.futures as cf

        try:
            with cf.ProcessPoolExecutor(max_workers=args.workers) as pool:
                rows = list(pool.map(_compare_one, args.nets,
                                     [args.guard] * len(args.nets)))
        except OSError as e:
            print(f"worker pool unavailable ({e}); running serially",
                  file=sys.stderr)
            rows = [_compare_one(p, args.guard) for p in args.nets]
        csv_text = baselines.rows_to_csv(rows)
    else:
        nets = [network.load(p) for p in args.nets]
        rows, csv_text = baselines.compare(nets, guard=args.guard)
    artifacts = []
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        artifacts = [args.out]
    _report(args, "compare", "ok",
            metrics={"instances": len(rows)}, artifacts=artifacts,
            extra={"rows": [vars(r) for r in rows]})
    if not args.json:
        for name in args.algo.split(","):
            kept = [getattr(r, f"{name}_kept") for r in rows]
            print(f"{name}: kept {kept}")
        if not args.out:
            sys.stdout.write(csv_text)
    return 0


def cmd_geom2net(args):
    with open(args.regions, encoding="utf-8") as fh:
        regions = geometry.regions_from_json(fh.read())
    net = geometry.scenario_from_regions(regions)
    artifacts = _write_or_print(args, network.save(net), args.out)
    _report(args, "geom2net", "ok",
            metrics={"regions": len(regions)}, artifacts=artifacts)
    return 0


def cmd_reconstitute(args):
    net = _load_net(args, args.net)
    with open(args.regions, encoding="utf-8") as fh:
        regions = geometry.regions_from_json(fh.read())
    full = geometry.hybrid_reconstitute(net, regions)
    artifacts = _write_or_print(args, network.save(full), args.out)
    _report(args, "reconstitute", "ok", artifacts=artifacts,
            extra={"input": net.digest()})
    return 0


def cmd_gen_regions(args):
    regions = geometry.generate_regions(args.n, args.seed, args.profile)
    text = geometry.regions_to_json(regions)
    artifacts = _write_or_print(args, text + "\n", args.out)
    _report(args, "gen-regions", "ok",
            metrics={"regions": len(regions)}, artifacts=artifacts)
    return 0


def _bench_one(size, seed, profile, sub_name):
    regions = geometry.generate_regions(size, seed, profile)
    scenario = geometry.scenario_from_regions(regions)
    sub = algebra.by_name(sub_name)
    import random as _random

    weak = redundancy.weaken_scenario(scenario, sub,
                                      _random.Random(seed + size))
    rows, _ = baselines.compare([weak])
    return rows[0]


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",") if s]
    sub_name = args.subalgebra if args.subalgebra not in (None, "auto") \
        else "D8_41"
    rows = []
    if args.workers > 1 and sizes:
        import concurrent.futures as cf

        try:
            with cf.ProcessPoolExecutor(max_workers=args.workers) as pool:
                rows = list(pool.map(
                    _bench_one, sizes, [args.seed] * len(sizes),
                    [args.profile] * len(sizes), [sub_name] * len(sizes)))
        except OSError as e:
            print(f"worker pool unavailable ({e}); running serially",
                  file=sys.stderr)
            rows = []
    if not rows:
        rows = [_bench_one(size, args.seed, args.profile, sub_name)
                for size in sizes]
    csv_text = baselines.rows_to_csv(rows)
    artifacts = []
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        artifacts = [args.out]
    metrics = {"instances": len(rows)}
    if len(rows) >= 2:
        ns = np.array([r.n for r in rows], dtype=float)
        kept = np.array([r.prime_kept for r in rows], dtype=float)
        times = np.array([max(r.prime_time, 1e-9) for r in rows])
        slope_fit = np.polyfit(np.log(ns), np.log(times), 1)
        lin = np.polyfit(ns, kept, 1)
        pred = np.polyval(lin, ns)
        ss_res = float(((kept - pred) ** 2).sum())
        ss_tot = float(((kept - kept.mean()) ** 2).sum())
        metrics["time_loglog_slope"] = float(slope_fit[0])
        metrics["kept_linear_r2"] = 1.0 - ss_res / ss_tot if ss_tot else 1.0
        metrics["kept_linear_coeff"] = float(lin[0])
    _report(args, "bench", "ok", metrics=metrics, artifacts=artifacts,
            extra={"rows": [vars(r) for r in rows]})
    if not args.json:
        if not args.out:
            sys.stdout.write(csv_text)
        for key in ("time_loglog_slope", "kept_linear_r2"):
            if key in metrics:
                print(f"{key}: {metrics[key]:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a JSON report instead of plain text")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for all randomized commands")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for batch commands")
    common.add_argument("--guard", type=int, default=reasoning.DEFAULT_GUARD,
                        help="size limit for the backtracking oracle")
    common.add_argument("--subalgebra", default="auto",
                        choices=["auto", "BHAT5", "BHAT8", "D5_14", "D5_20",
                                 "D8_41", "D8_64", "H5"],
                        help="subalgebra to assume instead of auto-detection")

    parser = argparse.ArgumentParser(
        prog="rcckit",
        description="RCC5/RCC8 reasoning, redundancy, and geometry tools")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("verify-tables", cmd_verify_tables,
            help="check the embedded tables")
    p.add_argument("calculus", nargs="?", default="all",
                   choices=["RCC5", "RCC8", "all"])

    p = add("subalg", cmd_subalg, help="print a built-in subalgebra")
    p.add_argument("name")

    for name, func, extra_out in (
            ("closure", cmd_closure, True),
            ("consistent", cmd_consistent, False),
            ("solve", cmd_solve, True)):
        p = add(name, func)
        p.add_argument("net")
        if extra_out:
            p.add_argument("-o", "--out")

    p = add("entails", cmd_entails, help="does the network entail i REL j?")
    p.add_argument("net")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("relation")

    p = add("redundant", cmd_redundant,
            help="is constraint (i,j) redundant?")
    p.add_argument("net")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)

    p = add("minimal-check", cmd_minimal_check,
            help="is every basic in every entry feasible?")
    p.add_argument("net")

    p = add("prime", cmd_prime, help="compute a prime subnetwork")
    p.add_argument("net")
    p.add_argument("-o", "--out")
    p.add_argument("--order",
                   help="iterative removal order, e.g. '1-2,2-3,1-3'")

    p = add("core", cmd_core, help="per-constraint redundancy sweep")
    p.add_argument("net")
    p.add_argument("-o", "--out")

    p = add("compare", cmd_compare, help="prime vs SimpleExt vs Simple")
    p.add_argument("nets", nargs="+")
    p.add_argument("--algo", default="prime,simpleext,simple")
    p.add_argument("--out")

    p = add("geom2net", cmd_geom2net, help="RCC8 scenario from region JSON")
    p.add_argument("regions")
    p.add_argument("-o", "--out")

    p = add("reconstitute", cmd_reconstitute,
            help="rebuild a full network from prime + geometry")
    p.add_argument("net")
    p.add_argument("regions")
    p.add_argument("-o", "--out")

    p = add("gen-regions", cmd_gen_regions,
            help="deterministic synthetic regions")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--profile", default="mixed",
                   choices=["scattered", "nested", "mixed"])
    p.add_argument("-o", "--out")

    p = add("bench", cmd_bench, help="scalability harness")
    p.add_argument("--sizes", default="25,50,100")
    p.add_argument("--profile", default="nested",
                   choices=["scattered", "nested", "mixed"])
    p.add_argument("--out")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RccError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
