"""Command-line front end.

Every operation is reachable as a subcommand; `--json` emits one
CommandResult object with floats at 17 significant digits, deterministic
byte-for-byte across runs for identical argv (timings are therefore
reported as 0 in JSON mode).  Exit codes: 0 success or certified-true,
1 certified-false/indeterminate or verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from fractions import Fraction

from . import __version__, compgroup, isogeny, runge, trace, verify
from .arith import (
    gauss_sum,
    kloosterman_direct,
    kloosterman_fast,
    make_character,
)
from .runge import UpperHalfPoint

_THREADS_ENV = "QCBOUNDS_THREADS"


def _fmt_float(x: float) -> str:
    if x != x:
        return '"nan"'
    if x == math.inf:
        return '"inf"'
    if x == -math.inf:
        return '"-inf"'
    return format(float(x), ".17g")


def _to_json(obj) -> str:
    """Deterministic JSON with fixed float formatting."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return _to_json({"re": obj.real, "im": obj.imag})
    if isinstance(obj, Fraction):
        return _to_json(str(obj))
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(obj, dict):
        items = ", ".join(f"{_to_json(str(k))}: {_to_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return _to_json(obj.item())
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _emit(args, command: str, inputs: dict, result, certified=None, mode=None,
          elapsed_ms: int = 0) -> None:
    if args.json:
        record = {"command": command, "inputs": inputs, "result": result}
        if certified is not None:
            record["certified"] = certified
        if mode is not None:
            record["mode"] = mode
        record["elapsed_ms"] = 0  # kept deterministic for byte-identical output
        text = _to_json(record)
        print(text)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
    elif not args.quiet:
        print(f"{command}: {result}")
        if certified is not None:
            print(f"certified: {certified} (mode {mode}, {elapsed_ms} ms)")
    elif certified is not None:
        print(certified)


def _tau_point(args) -> UpperHalfPoint:
    return UpperHalfPoint(args.re, args.im)


def _matrix_list(mat) -> list[list[int]]:
    return [list(row) for row in mat]


def _cmd_kloosterman(args) -> int:
    fn = kloosterman_fast if args.fast else kloosterman_direct
    value = fn(args.m, args.n, args.c)
    _emit(args, "kloosterman", {"m": args.m, "n": args.n, "c": args.c, "fast": args.fast},
          {"value": value})
    return 0


def _cmd_gauss_sum(args) -> int:
    g = gauss_sum(make_character(args.D))
    _emit(args, "gauss-sum", {"D": args.D}, {"value": g, "modulus": abs(g)})
    return 0


def _cmd_character(args) -> int:
    chi = make_character(args.D)
    _emit(args, "character", {"D": args.D, "n": args.n}, {"value": chi(args.n)})
    return 0


def _cmd_certify(args) -> int:
    chi = make_character(args.disc)
    t0 = time.time()
    if args.mode == "numeric":
        cert = trace.certify_numeric(args.prime, chi, args.rel_tol)
    else:
        cert = trace.certify_nonvanishing(args.prime, chi)
    elapsed = int((time.time() - t0) * 1000)
    result = {"verdict": cert.verdict, "lower_bound": cert.lower_bound,
              "components": cert.components}
    if cert.diagnostic:
        result["diagnostic"] = cert.diagnostic
    _emit(
        args,
        "certify",
        {"disc": args.disc, "prime": args.prime, "mode": args.mode,
         "rel_tol": args.rel_tol},
        result,
        certified=cert.certified,
        mode=cert.mode,
        elapsed_ms=elapsed,
    )
    return 0 if cert.certified else 1


def _cmd_pairing(args) -> int:
    chi = make_character(args.disc)
    res = trace.pairing_numeric(args.m, args.level, chi, args.rel_tol)
    _emit(args, "pairing",
          {"m": args.m, "level": args.level, "disc": args.disc, "rel_tol": args.rel_tol},
          {"value": res.value, "error_bound": res.error_bound})
    return 0


def _cmd_threshold(args) -> int:
    _emit(args, "threshold", {"disc": args.disc},
          {"nonsplit_threshold": isogeny.nonsplit_threshold(args.disc)})
    return 0


def _cmd_thresholds(args) -> int:
    rep = isogeny.main_thresholds(args.disc)
    _emit(args, "thresholds", {"disc": args.disc},
          {"borel": rep.borel, "split_cartan": rep.split_cartan,
           "nonsplit_cartan": rep.nonsplit_cartan, "exceptional": rep.exceptional})
    return 0


def _cmd_runge_bound(args) -> int:
    _emit(args, "runge-bound", {"prime": args.prime},
          {"log_j_bound": runge.runge_j_bound(args.prime)})
    return 0


def _cmd_reduce_tau(args) -> int:
    tau = _tau_point(args)
    if args.prime:
        loc = runge.locate_near_cusp(tau, args.prime)
        result = {"cusp": loc.cusp, "re": loc.tau.re, "im": loc.tau.im,
                  "gamma": _matrix_list(loc.gamma)}
    else:
        red, gamma = runge.reduce_to_fundamental_domain(tau)
        result = {"re": red.re, "im": red.im, "gamma": _matrix_list(gamma)}
    _emit(args, "reduce-tau", {"re": args.re, "im": args.im, "prime": args.prime}, result)
    return 0


def _cmd_unit_g(args) -> int:
    val = runge.unit_g(_tau_point(args), args.prime)
    _emit(args, "unit-g", {"re": args.re, "im": args.im, "prime": args.prime},
          {"value": val, "log_abs": runge.log_abs_unit_g(_tau_point(args), args.prime)})
    return 0


def _cmd_j_invariant(args) -> int:
    val = runge.j_invariant(_tau_point(args))
    _emit(args, "j-invariant", {"re": args.re, "im": args.im}, {"value": val})
    return 0


def _cmd_component_group(args) -> int:
    group = compgroup.component_group(args.prime, args.ram)
    _emit(args, "component-group", {"prime": args.prime, "ram": args.ram},
          {"invariant_factors": group.invariant_factors,
           "order": group.order,
           "generator_images": {k: list(v) for k, v in group.generator_images.items()}})
    return 0


def _cmd_rho_table(args) -> int:
    rs = compgroup.rho_value_set(args.prime, args.ram)
    values = sorted(rs.values)
    _emit(args, "rho-table", {"prime": args.prime, "ram": args.ram},
          {"p_class": rs.p_class, "e": rs.e, "values": [str(v) for v in values]})
    return 0


def _cmd_verify(args) -> int:
    threads = args.threads or int(os.environ.get(_THREADS_ENV, "1"))
    results = verify.run_suite(args.suite, max_c=args.max_c, seed=args.seed,
                               threads=threads)
    summary = []
    all_passed = True
    for r in results:
        summary.append({"suite": r.name, "checks": r.checks, "passed": r.passed,
                        "failures": r.failures[:20]})
        all_passed &= r.passed
        if not args.json and not args.quiet:
            status = "PASS" if r.passed else "FAIL"
            print(f"[{status}] {r.name}: {r.checks} checks, "
                  f"{len(r.failures)} failures ({r.elapsed_s:.1f}s)")
            for msg in r.failures[:10]:
                print(f"    {msg}")
    if args.json:
        _emit(args, "verify", {"suite": args.suite, "seed": args.seed,
                               "max_c": args.max_c},
              {"suites": summary, "all_passed": all_passed})
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="suppress chatter")
    common.add_argument("--threads", type=int, default=0,
                        help=f"worker threads for verification sweeps "
                             f"(default 1; env {_THREADS_ENV})")
    common.add_argument("--out", metavar="PATH",
                        help="also write the JSON record to PATH")

    parser = argparse.ArgumentParser(
        prog="qcbounds",
        description="Explicit exponential-sum, trace-formula, Runge and "
        "component-group bounds for modular curves.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    s = add_parser("kloosterman", help="S(m,n;c)")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("c", type=int)
    s.add_argument("--fast", action="store_true",
                   help="factored evaluation instead of direct enumeration")
    s.set_defaults(func=_cmd_kloosterman)

    s = add_parser("gauss-sum", help="G(chi_D) and its modulus")
    s.add_argument("D", type=int)
    s.set_defaults(func=_cmd_gauss_sum)

    s = add_parser("character", help="chi_D(n)")
    s.add_argument("D", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(func=_cmd_character)

    s = add_parser("certify", help="nonvanishing certificate for (D, p)")
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--mode", choices=["closed-form", "numeric"], default="closed-form")
    s.add_argument("--rel-tol", type=float, default=1e-6, dest="rel_tol")
    s.set_defaults(func=_cmd_certify)

    s = add_parser("pairing", help="numeric (a_m, L_chi)_N with error bound")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--rel-tol", type=float, default=1e-6, dest="rel_tol")
    s.set_defaults(func=_cmd_pairing)

    s = add_parser("threshold", help="nonsplit-Cartan threshold 50 D^(1/4) log D")
    s.add_argument("--disc", type=int, required=True)
    s.set_defaults(func=_cmd_threshold)

    s = add_parser("thresholds", help="all four per-case prime thresholds")
    s.add_argument("--disc", type=int, required=True)
    s.set_defaults(func=_cmd_thresholds)

    s = add_parser("runge-bound", help="2 pi sqrt(p) + 6 log p + 8")
    s.add_argument("--prime", type=int, required=True)
    s.set_defaults(func=_cmd_runge_bound)

    s = add_parser("reduce-tau", help="fundamental-domain reduction / cusp location")
    s.add_argument("--re", type=float, required=True)
    s.add_argument("--im", type=float, required=True)
    s.add_argument("--prime", type=int, default=0)
    s.set_defaults(func=_cmd_reduce_tau)

    s = add_parser("unit-g", help="modular unit g(tau) = Delta(tau)/Delta(p tau)")
    s.add_argument("--re", type=float, required=True)
    s.add_argument("--im", type=float, required=True)
    s.add_argument("--prime", type=int, required=True)
    s.set_defaults(func=_cmd_unit_g)

    s = add_parser("j-invariant", help="j(tau)")
    s.add_argument("--re", type=float, required=True)
    s.add_argument("--im", type=float, required=True)
    s.set_defaults(func=_cmd_j_invariant)

    s = add_parser("component-group", help="component group of J0(p), ramification e")
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--ram", type=int, required=True)
    s.set_defaults(func=_cmd_component_group)

    s = add_parser("rho-table", help="possible reduction values rho(g(P))")
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--ram", type=int, required=True)
    s.set_defaults(func=_cmd_rho_table)

    s = add_parser("verify", help="run verification sweeps")
    s.add_argument("--suite", required=True,
                   choices=sorted(verify.SUITES) + ["all"])
    s.add_argument("--max-c", type=int, default=None, dest="max_c")
    s.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    s.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
