"""Command-line surface.

Verbs: verify, kernel, duality, gram, ks-check, resolution, norm, delta,
catalog.  Levels are exact rationals "p/q".  A plain "key = value" config
file (default ./wcoset.cfg, overridable through the WCOSET_CONFIG environment
variable) may pin max-degree, seed, cap and the output directory; flags win.

Exit codes: 0 all checks pass; 1 a verification failed (the report is still
written); 2 invalid input (excluded level, parse error); 3 resource bound
exceeded.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from . import verify as ver
from .errors import InputError, ResourceBound
from .rootdata import PAIRS, h1
from .report import emit_report
from .scalars import T, parse_rat
from .screening import joint_kernel, residue_map

DEFAULTS = {"max-degree": 4, "seed": 20200713, "cap": 20000, "out-dir": "."}


def load_config() -> dict:
    cfg = dict(DEFAULTS)
    path = Path(os.environ.get("WCOSET_CONFIG", "wcoset.cfg"))
    if path.is_file():
        for line in path.read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"bad config line {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in cfg:
                raise InputError(f"unknown config key {key!r}")
            cfg[key] = value if key == "out-dir" else int(value)
    return cfg


def _level(s: str) -> Fraction:
    try:
        return parse_rat(s)
    except (ValueError, ZeroDivisionError, InputError) as e:
        raise argparse.ArgumentTypeError(f"cannot parse level {s!r}: {e}") from e


_LEVEL_FLAGS = ("--k1", "--k2")


def _normalize_argv(argv):
    """Join level flags with their (possibly negative rational) values."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LEVEL_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def guard_level(pair: str, n: int, k1: Fraction, strict_set: str = "S1") -> None:
    if k1 == -h1(pair, n):
        raise InputError(f"k1 = {k1} lies in the excluded set K1 = {{-{h1(pair, n)}}}")
    sets = cat.LevelData.from_k1(pair, n, k1).excluded_sets()
    if k1 in sets[strict_set]:
        raise InputError(
            f"k1 = {k1} lies in the excluded set {strict_set} = "
            f"{{{', '.join(sorted(str(x) for x in sets[strict_set]))}}}")
    if cat.is_admissible_k1(pair, n, k1):
        print(f"warning: k1 = {k1} is an admissible level; kernel dimensions "
              "may jump relative to generic levels", file=sys.stderr)


def _write(report, args, cfg, command: str) -> int:
    data = emit_report(report, args.format, command)
    if args.out:
        out = Path(args.out)
        if not out.is_absolute():
            out = Path(cfg["out-dir"]) / out
        out.write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0 if report.status == "pass" else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wcoset",
                                 description="exact screening-kernel workbench")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="report path (default stdout)")
        p.add_argument("--format", default="json", choices=["json", "csv", "text"])
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("verify", help="run the full verification battery")
    common(p)
    p.add_argument("--control", default=None, choices=ver.NEGATIVE_CONTROLS,
                   help="run one perturbed negative control instead")

    p = sub.add_parser("kernel", help="joint kernel dims of a catalog system")
    common(p)
    p.add_argument("--key", required=True)
    p.add_argument("--k1", type=_level, default=None)
    p.add_argument("--k2", type=_level, default=None)

    p = sub.add_parser("duality", help="coset kernel duality between the pair")
    common(p)
    p.add_argument("--pair", required=True, choices=PAIRS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=_level, required=True)
    p.add_argument("--random-levels", type=int, default=0,
                   help="additional seeded generic levels to test")
    p.add_argument("--symbolic-kernels", type=int, default=0, metavar="D",
                   help="also certify kernel dims over the function field "
                        "through degree D (slices capped at 64 columns)")

    p = sub.add_parser("gram", help="coset gram matrices, symbolic or specialized")
    common(p)
    p.add_argument("--pair", required=True, choices=PAIRS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=_level, default=None)
    p.add_argument("--symbolic", action="store_true")

    p = sub.add_parser("ks-check", help="Kazama-Suzuki field checks")
    common(p)
    p.add_argument("--pair", required=True, choices=PAIRS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k2", type=_level, default=None)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--perturb", default=None, choices=["drop-psi"])

    p = sub.add_parser("resolution", help="two-sided resolution checks")
    common(p)
    p.add_argument("--k1", type=_level, required=True)
    p.add_argument("--k2", type=_level, required=True)
    p.add_argument("--terms", type=int, default=2)

    p = sub.add_parser("norm", help="coset current norm degeneracy levels")
    common(p)
    p.add_argument("--pair", required=True, choices=PAIRS)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("delta", help="conformal dimension checks on random weights")
    common(p)
    p.add_argument("--samples", type=int, default=5)

    p = sub.add_parser("catalog", help="list catalog keys")
    common(p)
    return ap


def cmd_verify(args, cfg) -> int:
    if args.control:
        rep = ver.run_negative_control(args.control)
        code = _write(rep, args, cfg, f"verify:{args.control}")
        return code
    seed = args.seed if args.seed is not None else cfg["seed"]
    cap = args.cap if args.cap is not None else cfg["cap"]
    rng = random.Random(seed)
    battery = ver.full_battery(rng, cap=cap)
    return _write(battery, args, cfg, "verify")


def cmd_kernel(args, cfg) -> int:
    md = args.max_degree if args.max_degree is not None else cfg["max-degree"]
    cap = args.cap if args.cap is not None else cfg["cap"]
    spec = cat.get_realization(args.key, args.k1, args.k2)
    degrees = range(md + 1)
    maps = [residue_map(spec.system, op, degrees, cap) for op in spec.screenings]
    kr = joint_kernel(maps, degrees, sys=spec.system,
                      source=spec.system.zero_momentum(), cap=cap)
    rep = ver.Report("kernel", {"key": args.key,
                                "k1": str(args.k1) if args.k1 is not None else "",
                                "k2": str(args.k2) if args.k2 is not None else "",
                                "max_degree": md})
    for d, dim in kr.as_pairs():
        rep.per_degree.append(ver.PerDegree(d, dim))
    return _write(rep, args, cfg, "kernel")


def cmd_duality(args, cfg) -> int:
    md = args.max_degree if args.max_degree is not None else cfg["max-degree"]
    cap = args.cap if args.cap is not None else cfg["cap"]
    seed = args.seed if args.seed is not None else cfg["seed"]
    guard_level(args.pair, args.n, args.k1, "S1")
    rep = ver.check_coset_duality(args.pair, args.n, args.k1, md, cap,
                                  symbolic_kernels=args.symbolic_kernels)
    if args.random_levels:
        rng = random.Random(seed)
        x1, _ = cat.degeneracy_constants(args.pair, args.n)
        exclude = [Fraction(-h1(args.pair, args.n)), x1]
        for _ in range(args.random_levels):
            k = ver.generic_rational(rng, exclude)
            extra = ver.check_coset_duality(args.pair, args.n, k, md, cap,
                                            symbolic=False)
            rep.add_check(f"duality at random k1={k}", extra.status == "pass")
    return _write(rep, args, cfg, "duality")


def cmd_gram(args, cfg) -> int:
    from .scalars import RatFun
    k1 = T if (args.symbolic or args.k1 is None) else args.k1
    rep = ver.Report("gram", {"pair": args.pair, "n": args.n,
                              "k1": "t" if isinstance(k1, RatFun) else str(k1)})
    sub = cat.subregular_realization(args.pair, args.n, k1, "coset")
    ell = cat.dual_level(args.pair, args.n, k1)
    sup = cat.principal_super_realization(args.pair, args.n, ell, "coset")
    ga = [[str(x) for x in row] for row in sub.system.pairing]
    gb = [[str(x) for x in row] for row in sup.system.pairing]
    rep.add("gram(alpha~) = gram(beta~)", ga, gb)
    for row in ga:
        rep.add_check("row [" + ", ".join(row) + "]", True)
    return _write(rep, args, cfg, "gram")


def cmd_ks(args, cfg) -> int:
    if args.symbolic or args.k2 is None:
        k2 = T
    else:
        k2 = args.k2
    rep = ver.check_ks(args.pair, args.n, k2, perturb=args.perturb)
    return _write(rep, args, cfg, "ks-check")


def cmd_resolution(args, cfg) -> int:
    md = args.max_degree if args.max_degree is not None else 3
    cap = args.cap if args.cap is not None else cfg["cap"]
    rep = ver.check_resolution(args.k1, args.k2, md, args.terms, cap)
    return _write(rep, args, cfg, "resolution")


def cmd_norm(args, cfg) -> int:
    rep = ver.norm_degeneracy(args.pair, args.n)
    return _write(rep, args, cfg, "norm")


def cmd_delta(args, cfg) -> int:
    seed = args.seed if args.seed is not None else cfg["seed"]
    rng = random.Random(seed)
    samples = []
    for _ in range(args.samples):
        k1 = ver.generic_rational(rng, exclude=[Fraction(0)])
        k2 = ver.generic_rational(rng)
        m1 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        m2 = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        samples.append((k1, k2, m1, m2))
    rep = ver.check_delta(samples)
    return _write(rep, args, cfg, "delta")


def cmd_catalog(args, cfg) -> int:
    rep = ver.Report("catalog", {})
    for key in cat.catalog_keys():
        rep.add_check(key, True, expected="", computed="")
    return _write(rep, args, cfg, "catalog")


COMMANDS = {
    "verify": cmd_verify, "kernel": cmd_kernel, "duality": cmd_duality,
    "gram": cmd_gram, "ks-check": cmd_ks, "resolution": cmd_resolution,
    "norm": cmd_norm, "delta": cmd_delta, "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = ap.parse_args(_normalize_argv(list(argv)))
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        cfg = load_config()
        return COMMANDS[args.verb](args, cfg)
    except ResourceBound as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
