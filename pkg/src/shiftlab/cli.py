"""Command-line front end.

Every command emits a versioned JSON envelope (schema 1) with the command
echo, the normalized spec strings, the seed when randomness is involved, and
a result payload in which each asymptotic number carries an exactness flag or
a horizon. Output is deterministic for a fixed config and seed; wall time is
reported only when --timing is passed, precisely so that the default output
is byte-reproducible.

Exit codes: 0 success, 2 spec/usage error, 3 resource cap, 4 precision.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import beta as beta_mod
from . import chaos as chaos_mod
from . import langkit, sets, spacing
from .core import parse_point
from .errors import (
    PrecisionError,
    PreconditionError,
    ResourceCapExceeded,
    SearchFailure,
    ShiftlabError,
    SpecParseError,
    SpecValidationError,
)

SCHEMA = 1


def _envelope(command, spec_echo, result, seed=None, timing=None, cap_hit=False):
    env = {
        "schema": SCHEMA,
        "command": command,
        "spec": spec_echo,
        "result": result,
        "cap_hit": cap_hit,
    }
    if seed is not None:
        env["seed"] = seed
    if timing is not None:
        env["wall_time_s"] = timing
    return env


def _emit(env, fmt, out):
    if fmt == "json":
        out.write(json.dumps(env, sort_keys=True, indent=2))
        out.write("\n")
        return
    # csv: flatten the result payload into rows
    rows = _csv_rows(env["result"])
    for row in rows:
        out.write(",".join(str(c) for c in row))
        out.write("\n")


def _csv_rows(result):
    if isinstance(result, dict) and "rows" in result and isinstance(result["rows"], list):
        items = result["rows"]
        if items and isinstance(items[0], dict):
            header = sorted(items[0].keys())
            return [header] + [[r.get(h, "") for h in header] for r in items]
    if isinstance(result, dict) and "grid" in result:
        items = result["grid"]
        header = ["t", "F", "Fstar"]
        return [header] + [[r[h] for h in header] for r in items]
    if isinstance(result, dict):
        return [["key", "value"]] + [[k, json.dumps(v, sort_keys=True)]
                                     for k, v in sorted(result.items())]
    return [[json.dumps(result, sort_keys=True)]]


# -- command implementations --------------------------------------------------

def _cmd_entropy(args):
    spec = langkit.parse_shift_spec(args.shift)
    report = langkit.entropy_estimates(spec, args.kmax, strategy=args.strategy)
    return spec.label, report.to_json()


def _cmd_language(args):
    spec = langkit.parse_shift_spec(args.shift)
    lam = langkit.count_language(spec, args.k, strategy=args.strategy)
    result = {"k": args.k, "lambda": str(lam)}
    if args.list:
        words = langkit.enumerate_language(spec, args.k)
        if args.limit:
            words = words[:args.limit]
        result["words"] = ["".join(map(str, w)) for w in words]
    return spec.label, result


def _cmd_density(args):
    A = sets.parse_set_expr(args.set)
    fns = {
        "upper": sets.upper_density,
        "asymptotic": sets.asymptotic_density,
        "banach": sets.upper_banach_density,
    }
    res = fns[args.kind](A, H=args.horizon)
    return str(A), {"kind": args.kind, **res.to_json()}


def _cmd_sets_classify(args):
    A = sets.parse_set_expr(args.set)
    report = sets.classify(A, H=args.horizon,
                           ip_bound=args.ip_bound, node_cap=args.cap_states)
    return str(A), report.to_json()


def _cmd_sets_diff(args):
    A = sets.parse_set_expr(args.set)
    D = sets.difference_set(A, args.horizon)
    members = D.members(args.horizon)
    return str(A), {
        "horizon": args.horizon,
        "count": len(members),
        "members": members if len(members) <= args.limit else members[:args.limit],
        "truncated": len(members) > args.limit,
    }


def _cmd_beta_digits(args):
    spec = beta_mod.parse_beta(args.beta)
    w = beta_mod.beta_digits(spec, args.k)
    return spec.label, {"k": args.k, "digits": str(w), "exact": True}


def _cmd_beta_parry(args):
    spec = beta_mod.parse_beta(args.beta)
    w = beta_mod.beta_digits(spec, min(args.horizon, spec.digit_horizon))
    verdict = beta_mod.parry_check(w, args.horizon)
    return spec.label, {
        "horizon": args.horizon,
        "parry": verdict,
        "exact": verdict is not None,
    }


def _cmd_chaos_profile(args):
    x = parse_point(args.x, n=args.n)
    y = parse_point(args.y, n=args.n)
    profile = chaos_mod.distribution_profile(x, y)
    return {"x": str(x), "y": str(y)}, profile.to_json()


def _cmd_chaos_classify(args):
    x = parse_point(args.x, n=args.n)
    y = parse_point(args.y, n=args.n)
    profile = chaos_mod.distribution_profile(x, y)
    cls = chaos_mod.classify_pair(profile)
    return {"x": str(x), "y": str(y)}, {
        "profile": profile.to_json(), "class": cls.to_json()}


def _cmd_chaos_family(args):
    S = sets.parse_set_expr(args.set)
    fam = chaos_mod.build_scrambled_family(S, args.members, args.horizon,
                                           growth=args.growth)
    profiles = {}
    freqs = {}
    for i in range(args.members):
        for j in range(i + 1, args.members):
            key = "%d,%d" % (i, j)
            profiles[key] = chaos_mod.family_pair_profile(fam, i, j).to_json()
            freqs[key] = [{"checkpoint": cp, "diff": str(d), "equal": str(e)}
                          for cp, d, e in chaos_mod.family_pair_frequencies(fam, i, j)]
    return str(S), {
        "log": fam.log,
        "horizon": fam.horizon,
        "pair_profiles": profiles,
        "pair_frequencies": freqs,
    }


def _cmd_spacing_recurrence(args):
    R = sets.parse_set_expr(args.set)
    report = spacing.recurrence_entropy_probe(R, args.kmax)
    return str(R), report.to_json()


def _cmd_spacing_delta_star(args):
    A = sets.parse_set_expr(args.set)
    ok, counterexample = spacing.delta_star_bound_check(
        A, args.k, args.trials, args.horizon, args.seed)
    return str(A), {
        "k": args.k,
        "trials": args.trials,
        "horizon": args.horizon,
        "holds": ok,
        "counterexample": list(counterexample) if counterexample else None,
    }


_SELFTEST_FAMILIES = (
    "full:n=2",
    "spacing:P=complement:(finite:{1})",
    "spacing:P=evens",
    "beta:beta=quad:(1+1*sqrt5)/2",
    "beta:beta=1.5",
    "counting",
)


def _cmd_selftest(args):
    rows = []
    all_ok = True
    cap_hit = False
    for label in _SELFTEST_FAMILIES:
        spec = langkit.parse_shift_spec(label)
        status = "pass"
        detail = None
        try:
            for k in range(1, args.kmax + 1):
                fast = langkit.count_language(spec, k)
                brute = langkit.count_language(spec, k, strategy="brute_force")
                if fast != brute:
                    status = "fail"
                    detail = "k=%d fast=%d brute=%d" % (k, fast, brute)
                    all_ok = False
                    break
        except ResourceCapExceeded as e:
            status = "cap"
            detail = str(e)
            cap_hit = True
        rows.append({"family": spec.label, "status": status, "detail": detail})
    return rows, all_ok, cap_hit


# -- argument parsing ---------------------------------------------------------

def _add_common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true",
                   help="include wall time (breaks byte-reproducibility)")
    p.add_argument("--cap-states", type=int, default=2_000_000)
    p.add_argument("--cap-seconds", type=float, default=None,
                   help="advisory time budget, echoed in output")


def build_parser():
    ap = argparse.ArgumentParser(prog="shiftlab",
                                 description="subshift language and density workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="h_k upper bounds for a shift spec")
    p.add_argument("--shift", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--strategy", default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_entropy)

    p = sub.add_parser("language", help="count (and list) language words")
    p.add_argument("--shift", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", default=None)
    p.add_argument("--list", action="store_true")
    p.add_argument("--limit", type=int, default=64)
    _add_common(p)
    p.set_defaults(fn=_cmd_language)

    p = sub.add_parser("density", help="density of an integer set")
    p.add_argument("--set", required=True)
    p.add_argument("--kind", choices=("upper", "asymptotic", "banach"), default="upper")
    p.add_argument("--horizon", type=int, default=10_000)
    _add_common(p)
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("sets", help="integer-set analyses")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser("classify", help="finite-horizon structure report")
    q.add_argument("--set", required=True)
    q.add_argument("--horizon", type=int, default=10_000)
    q.add_argument("--ip-bound", type=int, default=None)
    _add_common(q)
    q.set_defaults(fn=_cmd_sets_classify)
    q = ssub.add_parser("diff", help="difference set to a horizon")
    q.add_argument("--set", required=True)
    q.add_argument("--horizon", type=int, default=256)
    q.add_argument("--limit", type=int, default=128)
    _add_common(q)
    q.set_defaults(fn=_cmd_sets_diff)

    p = sub.add_parser("beta", help="beta expansion tools")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    q = bsub.add_parser("digits", help="greedy digits of 1")
    q.add_argument("--beta", required=True)
    q.add_argument("--k", type=int, required=True)
    _add_common(q)
    q.set_defaults(fn=_cmd_beta_digits)
    q = bsub.add_parser("parry", help="shift-dominance check of the digit word")
    q.add_argument("--beta", required=True)
    q.add_argument("--horizon", type=int, default=10_000)
    _add_common(q)
    q.set_defaults(fn=_cmd_beta_parry)

    p = sub.add_parser("chaos", help="distribution functions and families")
    csub = p.add_subparsers(dest="subcommand", required=True)
    q = csub.add_parser("profile", help="exact F/F* for a periodic pair")
    q.add_argument("--x", required=True, help="point as pre;per")
    q.add_argument("--y", required=True)
    q.add_argument("--n", type=int, default=2)
    _add_common(q)
    q.set_defaults(fn=_cmd_chaos_profile)
    q = csub.add_parser("classify", help="DC classification of a periodic pair")
    q.add_argument("--x", required=True)
    q.add_argument("--y", required=True)
    q.add_argument("--n", type=int, default=2)
    _add_common(q)
    q.set_defaults(fn=_cmd_chaos_classify)
    q = csub.add_parser("family", help="scrambled family construction + measurement")
    q.add_argument("--set", required=True)
    q.add_argument("--members", type=int, default=2)
    q.add_argument("--horizon", type=int, required=True)
    q.add_argument("--growth", type=int, default=chaos_mod.DEFAULT_GROWTH)
    _add_common(q)
    q.set_defaults(fn=_cmd_chaos_family)

    p = sub.add_parser("spacing", help="spacing-shift probes")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("recurrence-probe", help="entropy of the complement spacing shift")
    q.add_argument("--set", required=True, help="candidate recurrence set R")
    q.add_argument("--kmax", type=int, required=True)
    _add_common(q)
    q.set_defaults(fn=_cmd_spacing_recurrence)
    q = psub.add_parser("delta-star", help="difference-intersection bound experiment")
    q.add_argument("--set", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--trials", type=int, default=1000)
    q.add_argument("--horizon", type=int, default=512)
    q.add_argument("--seed", type=int, required=True)
    _add_common(q)
    q.set_defaults(fn=_cmd_spacing_delta_star)

    p = sub.add_parser("selftest", help="oracle-equivalence suite")
    p.add_argument("--kmax", type=int, default=12)
    _add_common(p)
    p.set_defaults(fn=None)

    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "selftest":
            rows, all_ok, cap_hit = _cmd_selftest(args)
            timing = round(time.monotonic() - started, 3) if args.timing else None
            env = _envelope("selftest", {"kmax": args.kmax},
                            {"rows": rows, "all_pass": all_ok},
                            timing=timing, cap_hit=cap_hit)
            _emit(env, args.format, out)
            return 0 if all_ok else 1
        spec_echo, result = args.fn(args)
        command = args.command
        if getattr(args, "subcommand", None):
            command = "%s %s" % (args.command, args.subcommand)
        seed = getattr(args, "seed", None)
        timing = round(time.monotonic() - started, 3) if args.timing else None
        env = _envelope(command, spec_echo, result, seed=seed, timing=timing)
        if args.cap_seconds is not None:
            env["cap_seconds"] = args.cap_seconds
        _emit(env, args.format, out)
        return 0
    except (SpecParseError, SpecValidationError, PreconditionError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ResourceCapExceeded as e:
        print("resource cap: %s" % e, file=sys.stderr)
        return 3
    except PrecisionError as e:
        print("precision: %s" % e, file=sys.stderr)
        return 4
    except (SearchFailure, ShiftlabError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
