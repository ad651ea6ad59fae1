"""Command-line entry point.

Subcommands: build, verify, decode, distance, simulate, threshold,
plotdata, reproduce.  Flags override values from an optional JSON config
file (--config), which override defaults; every run writes a manifest
holding the fully resolved configuration so it can be replayed with
--config manifest.json.  Exit codes: 0 success, 2 invariant failure,
3 solver budget exceeded, 4 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .builder import DEFAULT_SEEDS, HolographicCode, build_code
from .decoder import CodeDecoder
from .distance import bit_distance, fit_distance_scaling, word_distance
from .gf2 import PauliVector
from .seeds import (
    CATALOG,
    blank_tile,
    fixed_tile,
    is_block_perfect,
    is_perfect,
)
from .sim import (
    estimate_threshold,
    plot_data,
    read_curve_csv,
    simulate_code,
    write_curve_csv,
)
from .tiling import REFERENCE_BOUNDARY_COUNTS, SUPPORTED, build_tiling, counts

EXIT_OK = 0
EXIT_INVARIANT = 2
EXIT_TIMEOUT = 3
EXIT_BAD_INPUT = 4


def _threads_default():
    env = os.environ.get("HOLOCODE_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def _write_manifest(path, subcommand, config):
    manifest = {
        "subcommand": subcommand,
        "config": config,
        "package_version": __version__,
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _resolved(args, keys):
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


# -- build ------------------------------------------------------------------


def cmd_build(args):
    code = build_code(args.family, args.variant, args.radius, args.seed_code)
    n, k = code.n, code.k
    print(f"family={code.family} variant={code.variant} R={code.radius} "
          f"seed={code.seed_name}")
    print(f"n={n} k={k} rate={k / n:.6f} css={code.css}")
    if args.out:
        code.save(args.out)
        keys = ["family", "variant", "radius", "seed_code", "out"]
        _write_manifest(args.out + ".manifest.json", "build",
                        _resolved(args, keys))
        print(f"wrote {args.out}.tab / {args.out}.json")
    return EXIT_OK


# -- verify -----------------------------------------------------------------


def _verify_checks(max_radius):
    from .seeds import five_qubit_tensor, scf_tensor, steane_tensor

    yield "seed steane block-perfect", lambda: is_block_perfect(steane_tensor())
    yield "seed steane not perfect", lambda: not is_perfect(steane_tensor())
    yield "seed scf block-perfect", lambda: is_block_perfect(scf_tensor())
    yield "seed scf not perfect", lambda: not is_perfect(scf_tensor())
    yield "seed five_qubit perfect", lambda: is_perfect(five_qubit_tensor())
    for name, make in CATALOG.items():
        yield f"seed {name} tableau invariants", _check_validate(make)
    yield "blank tile scf is [[6,0]]", lambda: (
        blank_tile(scf_tensor()).n == 6 and blank_tile(scf_tensor()).k == 0
    )
    yield "fixed tile scf is [[5,0]]", lambda: (
        fixed_tile(scf_tensor()).n == 5 and fixed_tile(scf_tensor()).k == 0
    )

    def tiling_check(fam, var, R, expect):
        def run():
            g = build_tiling(fam, R, var)
            return counts(g)[0] == expect
        return run

    for (fam, var), ns in REFERENCE_BOUNDARY_COUNTS.items():
        for R, expect in enumerate(ns, start=1):
            yield f"tiling {fam}/{var} R={R} n={expect}", tiling_check(fam, var, R, expect)

    def code_check(fam, var, R):
        def run():
            code = build_code(fam, var, R)
            code.validate()
            return True
        return run

    for fam, var in sorted(SUPPORTED):
        for R in range(1, max_radius + 1):
            yield f"code invariants {fam}/{var} R={R}", code_check(fam, var, R)


def _check_validate(make):
    def run():
        make().validate()
        return True
    return run


def cmd_verify(args):
    failures = 0
    for name, check in _verify_checks(args.max_radius):
        try:
            ok = check()
        except Exception as exc:  # structural failure surfaces as diagnostic
            ok = False
            name = f"{name} ({exc})"
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1
    print(f"{failures} failure(s)")
    return EXIT_OK if failures == 0 else EXIT_INVARIANT


# -- decode -----------------------------------------------------------------


def _parse_syndrome(text, bits):
    text = text.strip()
    if text.startswith("0x") or text.startswith("0X"):
        value = int(text, 16)
    elif set(text) <= {"0", "1"} and len(text) > 1:
        value = int(text[::-1], 2)  # written left-to-right, bit 0 first
    else:
        value = int(text, 0)
    if value >> bits:
        raise ValueError(f"syndrome longer than {bits} bits")
    return value


def cmd_decode(args):
    code = HolographicCode.load(args.code)
    dec = CodeDecoder(code, objective=args.objective, timeout=args.timeout,
                      engine="search")
    n_checks = code.n - code.k
    y = _parse_syndrome(args.syndrome, n_checks)
    if code.css and args.mode != "symplectic":
        nx = dec.sx.n_rows
        syn = (y & ((1 << nx) - 1), y >> nx)
    else:
        syn = y
    corr, certified = dec.decode(syn)
    print(f"correction: {corr.to_string()}")
    print(f"weight: {corr.weight()}")
    print(f"certified: {certified}")
    return EXIT_OK if certified else EXIT_TIMEOUT


# -- distance ---------------------------------------------------------------


def cmd_distance(args):
    code = build_code(args.family, args.variant, args.radius, args.seed_code)
    if args.qubit == "all":
        qubits = list(range(code.k))
    elif args.qubit == "central":
        qubits = [0]
    else:
        qubits = [int(args.qubit)]
    rows = []
    any_uncertified = False
    for q in qubits:
        db = bit_distance(code, q, sector=args.sector, timeout=args.timeout)
        row = {"family": code.family, "variant": code.variant,
               "R": code.radius, "n": code.n, "qubit": q,
               "layer": code.logicals[q].layer,
               "bit_distance": db.value, "bit_certified": db.certified}
        if code.k > 1:
            dw = word_distance(code, q, sector=args.sector,
                               timeout=args.timeout)
            row["word_distance"] = dw.value
            row["word_certified"] = dw.certified
            any_uncertified |= not dw.certified
        any_uncertified |= not db.certified
        rows.append(row)
        print(json.dumps(row, sort_keys=True))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=1, sort_keys=True)
            fh.write("\n")
        keys = ["family", "variant", "radius", "seed_code", "qubit",
                "sector", "timeout", "out"]
        _write_manifest(args.out + ".manifest.json", "distance",
                        _resolved(args, keys))
    return EXIT_TIMEOUT if any_uncertified else EXIT_OK


# -- simulate / threshold / plotdata ----------------------------------------


def cmd_simulate(args):
    code = build_code(args.family, args.variant, args.radius, args.seed_code)
    weights = args.weights
    if weights not in ("all", "auto"):
        weights = [int(w) for w in weights.split(",")]
    target = 0 if args.target == "central" else int(args.target)
    curve = simulate_code(
        code, target_qubit=target, trials_per_weight=args.trials_per_weight,
        seed=args.seed, weights=weights, threads=args.threads,
        timeout=args.timeout,
    )
    write_curve_csv(curve, args.out)
    keys = ["family", "variant", "radius", "seed_code", "weights",
            "trials_per_weight", "seed", "target", "timeout", "out"]
    config = _resolved(args, keys)
    _write_manifest(args.out + ".manifest.json", "simulate", config)
    timeouts = sum(r.timeouts for r in curve.records)
    print(f"wrote {args.out} ({len(curve.records)} weights, "
          f"{timeouts} decoder timeouts)")
    return EXIT_OK if timeouts == 0 else EXIT_TIMEOUT


def cmd_threshold(args):
    curves = [read_curve_csv(p) for p in args.results]
    try:
        p_th, bracket, pairs = estimate_threshold(curves)
    except ValueError as exc:
        print(json.dumps({"error": str(exc)}))
        return EXIT_INVARIANT
    out = {"p_th": p_th, "bracket": list(bracket),
           "pairs": [{"radii": list(p["radii"]), "crossing": p["crossing"]}
                     for p in pairs]}
    text = json.dumps(out, indent=1, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        _write_manifest(args.out + ".manifest.json", "threshold",
                        {"results": args.results, "out": args.out})
    return EXIT_OK


def cmd_plotdata(args):
    curve = read_curve_csv(args.results)
    import numpy as np

    ps = np.linspace(args.p_min, args.p_max, args.p_steps)
    rows = plot_data(curve, ps)
    with open(args.out, "w") as fh:
        fh.write("p,p_failure,sigma\n")
        for p, v, s in rows:
            fh.write(f"{p!r},{v!r},{s!r}\n")
    _write_manifest(args.out + ".manifest.json", "plotdata",
                    _resolved(args, ["results", "p_min", "p_max", "p_steps", "out"]))
    print(f"wrote {args.out}")
    return EXIT_OK


# -- reproduce --------------------------------------------------------------

DESK_SCALE_RADIUS = 4


def cmd_reproduce(args):
    os.makedirs(args.out_dir, exist_ok=True)
    rid = args.id
    if rid == "table3":
        return _reproduce_table3(args)
    if rid == "fig5":
        return _reproduce_fig5(args)
    if rid in ("fig3a", "fig3b", "fig3c"):
        return _reproduce_fig3(args)
    raise ValueError(f"unknown reproduction id: {rid}")


def _reproduce_table3(args):
    rows = []
    rc = EXIT_OK
    for fam, var in (("heptagon", "max"), ("pentagon", "reduced"),
                     ("pentagon", "zero")):
        for R in range(1, args.max_radius + 1):
            if R > DESK_SCALE_RADIUS:
                print(f"warning: {fam}/{var} R={R} is above desk scale; "
                      "results may be uncertified", file=sys.stderr)
            code = build_code(fam, var, R)
            db = bit_distance(code, 0, timeout=args.timeout)
            row = {"family": fam, "variant": var, "R": R, "n": code.n,
                   "k": code.k, "bit_distance": db.value,
                   "bit_certified": db.certified}
            if code.k > 1:
                dw = word_distance(code, 0, timeout=args.timeout)
                row.update(word_distance=dw.value, word_certified=dw.certified)
            rows.append(row)
            print(json.dumps(row, sort_keys=True))
            if not db.certified:
                rc = EXIT_TIMEOUT
    path = os.path.join(args.out_dir, "table3.json")
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=1, sort_keys=True)
        fh.write("\n")
    _write_manifest(os.path.join(args.out_dir, "manifest.json"), "reproduce",
                    _resolved(args, ["id", "max_radius", "timeout", "out_dir"]))
    return rc


def _reproduce_fig5(args):
    points_b = []
    points_w = []
    rc = EXIT_OK
    for R in range(1, args.max_radius + 1):
        code = build_code("heptagon", "max", R)
        db = bit_distance(code, 0, timeout=args.timeout)
        dw = word_distance(code, 0, timeout=args.timeout)
        points_b.append((code.n, db.value, db.certified))
        points_w.append((code.n, dw.value, dw.certified))
        if not (db.certified and dw.certified):
            rc = EXIT_TIMEOUT
    out = {"bit_points": points_b, "word_points": points_w}
    cert_b = [(n, d) for n, d, c in points_b if c]
    cert_w = [(n, d) for n, d, c in points_w if c]
    if len(cert_b) >= 3:
        exp, ci = fit_distance_scaling(cert_b)
        out["bit_exponent"] = exp
        out["bit_ci95"] = list(ci)
    if len(cert_w) >= 3:
        exp, ci = fit_distance_scaling(cert_w)
        out["word_exponent"] = exp
        out["word_ci95"] = list(ci)
    text = json.dumps(out, indent=1, sort_keys=True)
    print(text)
    with open(os.path.join(args.out_dir, "fig5.json"), "w") as fh:
        fh.write(text + "\n")
    _write_manifest(os.path.join(args.out_dir, "manifest.json"), "reproduce",
                    _resolved(args, ["id", "max_radius", "timeout", "out_dir"]))
    return rc


def _reproduce_fig3(args):
    spec = {
        "fig3a": ("heptagon", "max", None),
        "fig3b": ("pentagon", "reduced", None),
        "fig3c": ("pentagon", "zero", None),
    }[args.id]
    fam, var, _ = spec
    radii = [int(r) for r in args.radii.split(",")]
    curves = []
    rc = EXIT_OK
    for R in radii:
        if args.id == "fig3c" and R > 2:
            print(f"warning: {fam}/{var} R={R} joint decoding is above desk "
                  "scale; expect long runtimes", file=sys.stderr)
        code = build_code(fam, var, R)
        curve = simulate_code(code, target_qubit=0,
                              trials_per_weight=args.trials, seed=args.seed,
                              weights="auto", threads=args.threads,
                              timeout=args.timeout)
        path = os.path.join(args.out_dir, f"{args.id}_R{R}.csv")
        write_curve_csv(curve, path)
        print(f"wrote {path}")
        curves.append(curve)
    out = {}
    if len(curves) >= 2:
        try:
            p_th, bracket, pairs = estimate_threshold(curves)
            out = {"p_th": p_th, "bracket": list(bracket),
                   "pairs": [{"radii": list(p["radii"]),
                              "crossing": p["crossing"]} for p in pairs]}
        except ValueError as exc:
            out = {"error": str(exc)}
            rc = EXIT_INVARIANT
    text = json.dumps(out, indent=1, sort_keys=True)
    print(text)
    with open(os.path.join(args.out_dir, f"{args.id}_threshold.json"), "w") as fh:
        fh.write(text + "\n")
    _write_manifest(os.path.join(args.out_dir, "manifest.json"), "reproduce",
                    _resolved(args, ["id", "radii", "trials", "seed",
                                     "timeout", "out_dir"]))
    return rc


# -- parser -----------------------------------------------------------------


def make_parser():
    top = argparse.ArgumentParser(prog="holocode", description=__doc__)
    top.add_argument("--config", help="JSON file with default argument values")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def family_flags(p, seed=True):
        p.add_argument("--family", required=True,
                       choices=["heptagon", "pentagon"])
        p.add_argument("--variant", required=True,
                       choices=["max", "reduced", "zero"])
        p.add_argument("--radius", type=int, required=True)
        if seed:
            p.add_argument("--seed-code", dest="seed_code", default=None,
                           choices=list(CATALOG))

    p = sub.add_parser("build", help="build a code and write it to disk")
    family_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run structural invariant checks")
    p.add_argument("--max-radius", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="decode one syndrome")
    p.add_argument("--code", required=True, help="code file prefix")
    p.add_argument("--syndrome", required=True,
                   help="binary (left-to-right, X checks first) or hex")
    p.add_argument("--mode", choices=["css", "symplectic"], default="css")
    p.add_argument("--objective", choices=["hamming", "pauli"],
                   default="pauli")
    p.add_argument("--timeout", type=float, default=60.0)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("distance", help="bit/word distances")
    family_flags(p)
    p.add_argument("--qubit", default="central",
                   help="central, all, or a qubit index")
    p.add_argument("--sector", choices=["x", "z", "min"], default="min")
    p.add_argument("--timeout", type=float, default=3600.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("simulate", help="Monte Carlo failure curve")
    family_flags(p)
    p.add_argument("--weights", default="auto",
                   help="all, auto, or comma-separated weights")
    p.add_argument("--trials-per-weight", dest="trials_per_weight", type=int,
                   default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", default="central")
    p.add_argument("--threads", type=int, default=_threads_default())
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("threshold", help="crossing of failure curves")
    p.add_argument("results", nargs="+", help="curve CSV files")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("plotdata", help="mixed curve table for plotting")
    p.add_argument("results", help="curve CSV file")
    p.add_argument("--p-min", dest="p_min", type=float, default=0.0)
    p.add_argument("--p-max", dest="p_max", type=float, default=0.3)
    p.add_argument("--p-steps", dest="p_steps", type=int, default=61)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("reproduce", help="canned desk-scale pipelines")
    p.add_argument("id", choices=["table3", "fig3a", "fig3b", "fig3c", "fig5"])
    p.add_argument("--max-radius", dest="max_radius", type=int, default=3)
    p.add_argument("--radii", default="2,3")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=_threads_default())
    p.add_argument("--timeout", type=float, default=3600.0)
    p.add_argument("--out-dir", dest="out_dir", default=None)
    p.set_defaults(func=cmd_reproduce)

    return top


def main(argv=None) -> int:
    parser = make_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # Config/manifest values are injected as flags unless already given,
    # so explicit flags win and replaying a manifest reproduces the run.
    if "--config" in argv:
        idx = argv.index("--config")
        path = argv[idx + 1]
        del argv[idx:idx + 2]
        with open(path) as fh:
            loaded = json.load(fh)
        config = loaded.get("config", loaded)
        sub = loaded.get("subcommand")
        if sub and (not argv or argv[0] != sub):
            argv.insert(0, sub)
        for key, value in config.items():
            if value is None:
                continue
            if key == "id":
                if len(argv) < 2 or argv[1].startswith("-"):
                    argv.insert(1, str(value))
            elif key == "results":
                vals = value if isinstance(value, list) else [value]
                argv.extend(str(v) for v in vals)
            else:
                flag = "--" + key.replace("_", "-")
                if flag not in argv:
                    argv.extend([flag, str(value)])
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0, None) else 0
    if getattr(args, "out_dir", "missing") is None:
        args.out_dir = f"reproduce_{args.id}"
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
