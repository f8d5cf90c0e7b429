"""Command-line front end emitting plot-ready CSV/JSON artifacts.

Every run writes its outputs plus a manifest echoing the full configuration;
`hexlat rerun MANIFEST` reproduces the artifacts byte for byte.  Numbers in
CSV files carry 15 significant digits.  Exit status: 2 for usage errors
(argparse), 1 for computation failures, 0 on success.
"""

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("HEXLAT_THREADS")
    if env:
        return int(env)
    return os.cpu_count() or 1


def _fmt(x):
    if isinstance(x, float) and x == int(x) and abs(x) < 1e15:
        return repr(x)
    return f"{x:.15g}"


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v)
                              for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _manifest(outdir, command, params, outputs):
    man = {"command": command, "params": params, "outputs": sorted(outputs),
           "tool": "hexlat", "version": "0.1.0"}
    _write_json(Path(outdir) / f"{command}-manifest.json", man)


def _outdir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_states(args):
    from .states import enumerate_states, symmetry_classes
    out = _outdir(args)
    idx = enumerate_states(args.lh)
    sym = symmetry_classes(args.lh)
    rows = [(int(s), format(int(s), f"0{args.lh}b"), int(sym.class_of[i]))
            for i, s in enumerate(idx.states)]
    f1 = out / f"states-lh{args.lh}.csv"
    _write_csv(f1, ["state", "bits", "class"], rows)
    f2 = out / f"states-lh{args.lh}-classes.json"
    _write_json(f2, {"lh": args.lh, "count": idx.count,
                     "classes": sym.count,
                     "orbit_sizes": [int(x) for x in sym.orbit_sizes]})
    _manifest(out, "states", {"lh": args.lh}, [f1.name, f2.name])
    return 0


def _compute_polynomial(args, threads):
    from .modular import reconstruct_partition
    primes = "auto" if args.primes == "auto" else int(args.primes)
    rep = reconstruct_partition(args.lh, args.lv, args.boundary,
                                primes=primes, threads=threads)
    return rep


def cmd_partition(args):
    out = _outdir(args)
    rep = _compute_polynomial(args, _threads(args))
    poly = rep.polynomial
    name = f"partition-{args.boundary}-{args.lh}x{args.lv}.json"
    _write_json(out / name, {
        "lh": args.lh, "lv": args.lv, "boundary": args.boundary,
        "degree": poly.degree,
        "coeffs": [str(c) for c in poly.coeffs],
        "primes_used": len(rep.primes),
    })
    _manifest(out, "partition",
              {"lh": args.lh, "lv": args.lv, "boundary": args.boundary,
               "primes": args.primes}, [name])
    return 0


def cmd_zeros(args):
    from .roots import classify_zeros, find_zeros
    out = _outdir(args)
    rep = _compute_polynomial(args, _threads(args))
    zset = find_zeros(rep.polynomial, precision_bits=args.precision_bits,
                      tol=args.tol)
    labels = classify_zeros(zset)
    necklace = set(id(z) for z in labels["necklace"])
    rows = []
    for i, z in enumerate(zset.zeros):
        if abs(z.imag) < 1e-9 * max(1.0, abs(z)) and z.real < 0:
            label = "axis"
        elif id(z) in necklace:
            label = "necklace"
        else:
            label = "arc"
        rows.append((i, float(z.real), float(z.imag), zset.residual, label))
    name = f"zeros-{args.boundary}-{args.lh}x{args.lv}.csv"
    _write_csv(out / name, ["n", "re", "im", "residual", "label"], rows)
    ends = {"z_d": labels["z_d"],
            "z_c": [labels["z_c"].real, labels["z_c"].imag]
            if labels["z_c"] else None}
    name2 = f"zeros-{args.boundary}-{args.lh}x{args.lv}-endpoints.json"
    _write_json(out / name2, ends)
    _manifest(out, "zeros",
              {"lh": args.lh, "lv": args.lv, "boundary": args.boundary,
               "primes": args.primes, "precision_bits": args.precision_bits,
               "tol": args.tol}, [name, name2])
    return 0


def cmd_equimodular(args):
    from .eigen import axis_endpoint, curve_report, trace_equimodular
    out = _outdir(args)
    rows = []
    trace = trace_equimodular(args.lh, args.sector, eps=args.epsilon,
                              max_points=args.max_points)
    for p in trace.points:
        mods = tuple(m if m == m else "" for m in p.mods)
        pa, pb = (f"{p.momenta[0]:.6f}", f"{p.momenta[1]:.6f}") \
            if p.momenta else ("0", "0")
        rows.append((float(p.z.real), float(p.z.imag), *mods,
                     p.multiplicity, pa, pb, p.flag))
    name = f"equimodular-{args.sector}-lh{args.lh}.csv"
    _write_csv(out / name,
               ["re", "im", "mod1", "mod2", "mod3", "multiplicity",
                "sectorP_a", "sectorP_b", "flag"], rows)
    rep = curve_report(args.lh, args.sector)
    zd, ratio = axis_endpoint(args.lh, args.sector)
    name2 = f"equimodular-{args.sector}-lh{args.lh}-report.json"
    _write_json(out / name2, {
        "lh": args.lh, "sector": args.sector,
        "axis_crossings": [[x, r] for x, r in rep.axis_crossings],
        "y_branching": rep.y_branching,
        "leftmost_crossing": rep.leftmost_crossing,
        "z_d": zd, "ratio_at_z_d": ratio,
    })
    _manifest(out, "equimodular",
              {"lh": args.lh, "sector": args.sector, "epsilon": args.epsilon},
              [name, name2])
    return 0


def cmd_kappa_curve(args):
    from .exact import (axis_crossings, baxter_equimodular_curve, kappa_minus,
                        kappa_plus)
    out = _outdir(args)
    pts, crossings = baxter_equimodular_curve(resolution=args.resolution)
    rows = []
    for z in sorted(pts, key=lambda w: (w.real, w.imag)):
        kp = kappa_plus(z).value
        km = kappa_minus(z).value
        phase = float(np.angle(kp / km))
        rows.append((float(z.real), float(z.imag), abs(kp), abs(km), phase))
    name = "kappa-curve.csv"
    _write_csv(out / name, ["re", "im", "mod_high", "mod_low", "phase"], rows)
    name2 = "kappa-curve-crossings.json"
    _write_json(out / name2, {"negative": crossings[0], "positive": crossings[1]})
    _manifest(out, "kappa-curve", {"resolution": args.resolution},
              [name, name2])
    return 0


def cmd_density(args):
    from .analysis import density_profile, density_ratio_fit
    from .roots import classify_zeros, find_zeros
    out = _outdir(args)
    rep = _compute_polynomial(args, _threads(args))
    zset = find_zeros(rep.polynomial, precision_bits=args.precision_bits,
                      tol=args.tol)
    labels = classify_zeros(zset)
    prof = density_profile(labels["axis"])
    rows = list(zip([float(x) for x in prof.positions[:-1]],
                    [float(d) for d in prof.density],
                    [float(d) for d in list(prof.derivative) + [math.nan]]))
    name = f"density-{args.boundary}-{args.lh}x{args.lv}.csv"
    _write_csv(out / name, ["z", "D", "Dprime"], rows)
    try:
        alpha, z_f = density_ratio_fit(prof, (-4.0, -0.14))
        fit = {"alpha": alpha, "z_f": z_f, "window": [-4.0, -0.14]}
    except ValueError:
        fit = None
    name2 = f"density-{args.boundary}-{args.lh}x{args.lv}-fit.json"
    _write_json(out / name2, {"n_axis_zeros": prof.count, "ratio_fit": fit})
    _manifest(out, "density",
              {"lh": args.lh, "lv": args.lv, "boundary": args.boundary,
               "primes": args.primes, "precision_bits": args.precision_bits,
               "tol": args.tol}, [name, name2])
    return 0


def cmd_fss(args):
    from .analysis import fss_amplitudes, fss_local_slopes, slope_extrapolate
    out = _outdir(args)
    rows = [line.split(",") for line
            in Path(args.series).read_text().strip().splitlines()[1:]]
    series = [(float(a), float(b)) for a, b in rows]
    exponents = [eval_fraction(e) for e in args.exponents.split(",")]
    fit = fss_amplitudes(series, exponents)
    slopes = fss_local_slopes(series, lag=args.lag)
    name = "fss-fit.json"
    _write_json(out / name, {
        "exponents": exponents,
        "amplitudes": [float(a) for a in fit.amplitudes],
        "refined": [float(a) for a in fit.refined],
        "scatter": [float(s) for s in fit.scatter],
        "residual": fit.residual,
        "window": list(fit.window),
        "slope_extrapolation": slope_extrapolate(slopes),
    })
    _manifest(out, "fss", {"series": str(args.series),
                           "exponents": args.exponents, "lag": args.lag},
              [name])
    return 0


def eval_fraction(text):
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def cmd_cardioid(args):
    from .analysis import cardioid_fit
    from .roots import classify_zeros, find_zeros
    out = _outdir(args)
    rep = _compute_polynomial(args, _threads(args))
    zset = find_zeros(rep.polynomial, precision_bits=args.precision_bits,
                      tol=args.tol)
    labels = classify_zeros(zset)
    arc = [z for z in zset.zeros if z.imag > 1e-9 and z not in labels["necklace"]]
    fit = cardioid_fit(arc)
    name = f"cardioid-{args.boundary}-{args.lh}x{args.lv}.json"
    _write_json(out / name, {"a": fit.a, "c": fit.c, "rms": fit.rms,
                             "n_points": len(arc)})
    _manifest(out, "cardioid",
              {"lh": args.lh, "lv": args.lv, "boundary": args.boundary,
               "primes": args.primes, "precision_bits": args.precision_bits,
               "tol": args.tol}, [name])
    return 0


def cmd_verify_identities(args):
    """Residual suites of the exact-function identities; exit 1 on failure."""
    import random

    from . import exact

    rng = random.Random(1234)
    report = {}
    ok = True

    worst = 0.0
    for _ in range(args.samples):
        x = rng.uniform(-0.9, -0.02)
        p = exact.eval_products(x)
        worst = max(worst, exact.f_minus(p.z_low, p.kappa_low))
        x = rng.uniform(0.02, 0.9)
        p = exact.eval_products(x)
        worst = max(worst, exact.f_plus(p.z_high, p.kappa_high))
    report["parametric_residual"] = worst
    ok &= worst < 1e-10

    worst = 0.0
    for _ in range(args.samples):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) or 1.0
        k = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for f in (exact.f_minus_raw, exact.f_plus_raw):
            lhs = z**44 * f(-1 / z, k / z)
            rhs = f(z, k)
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))
    report["inversion_symmetry"] = worst
    ok &= worst < 1e-8

    worst = 0.0
    for _ in range(args.samples):
        z = complex(rng.uniform(0.3, 2), rng.uniform(-1.5, 1.5))
        k = complex(rng.uniform(0.3, 2), rng.uniform(-1.5, 1.5))
        worst = max(worst, exact.rescaled_product_identity_residual(z, k))
    report["rescaled_product_identity"] = worst
    ok &= worst < 1e-8

    worst = 0.0
    for _ in range(args.samples):
        zeta = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(zeta) < 0.3:
            continue
        h1 = exact.hauptmodul(zeta**5)
        for image in (exact.h5_transform(zeta), -1 / zeta, exact.OMEGA5 * zeta):
            h2 = exact.hauptmodul(image**5)
            worst = max(worst, abs(h1 - h2) / max(1.0, abs(h1)))
    report["hauptmodul_invariance"] = worst
    ok &= worst < 1e-10

    worst = 0.0
    for zr in (11.5, 13.0, 15.0, 18.0, 2 + 2j, -3 + 4j):
        worst = max(worst, exact.w_relation_residual(zr))
    report["w_relation"] = worst
    ok &= worst < 1e-8

    report["passed"] = bool(ok)
    out = _outdir(args)
    name = "verify-identities.json"
    _write_json(out / name, report)
    _manifest(out, "verify-identities", {"samples": args.samples}, [name])
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if ok else 1


def cmd_rerun(args):
    man = json.loads(Path(args.manifest).read_text())
    argv = [man["command"].replace("_", "-")]
    for key, val in man["params"].items():
        argv.append(f"--{key.replace('_', '-')}")
        argv.append(str(val))
    argv += ["--out", str(Path(args.manifest).parent)]
    return main(argv)


def _add_lattice_args(p):
    p.add_argument("--lh", type=int, required=True)
    p.add_argument("--lv", type=int, required=True)
    p.add_argument("--boundary", choices=["cylindrical", "toroidal"],
                   default="cylindrical")
    p.add_argument("--primes", default="auto")
    _add_common(p)


def _add_common(p):
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=".")
    p.add_argument("--precision-bits", type=int, default=212)
    p.add_argument("--tol", type=float, default=1e-13)


def build_parser():
    ap = argparse.ArgumentParser(prog="hexlat",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("states", help="enumerate cut-line states and classes")
    p.add_argument("--lh", type=int, required=True)
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_states)

    p = sub.add_parser("partition", help="exact partition polynomial")
    _add_lattice_args(p)
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("zeros", help="all complex zeros of the polynomial")
    _add_lattice_args(p)
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("equimodular", help="trace eigenvalue crossing curves")
    p.add_argument("--lh", type=int, required=True)
    p.add_argument("--sector", choices=["full", "p0"], default="p0")
    p.add_argument("--epsilon", type=float, default=1e-2)
    p.add_argument("--max-points", type=int, default=400)
    p.add_argument("--out", default=".")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(fn=cmd_equimodular)

    p = sub.add_parser("kappa-curve", help="per-site equimodular curve")
    p.add_argument("--resolution", type=float, default=0.25)
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_kappa_curve)

    p = sub.add_parser("density", help="density of zeros on the negative axis")
    _add_lattice_args(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("fss", help="finite-size-scaling fits of a series CSV")
    p.add_argument("--series", required=True,
                   help="CSV with header and rows L,value")
    p.add_argument("--exponents", required=True,
                   help="comma list, fractions allowed (e.g. 12/5,17/5)")
    p.add_argument("--lag", type=int, default=3)
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_fss)

    p = sub.add_parser("cardioid", help="cardioid fit of the inner arc zeros")
    _add_lattice_args(p)
    p.set_defaults(fn=cmd_cardioid)

    p = sub.add_parser("verify-identities",
                       help="run the exact-function residual suites")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--out", default=".")
    p.set_defaults(fn=cmd_verify_identities)

    p = sub.add_parser("rerun", help="reproduce artifacts from a manifest")
    p.add_argument("manifest")
    p.set_defaults(fn=cmd_rerun)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except Exception as err:  # computation failure -> structured exit 1
        print(json.dumps({"error": type(err).__name__, "message": str(err)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
