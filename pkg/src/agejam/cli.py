"""Command-line front end.

Subcommands:
  solve     optimal threshold and its closed-form performance for one lambda
  eval      closed-form performance of an explicit threshold
  sweep     lambda grid -> CSV (closed-form optimal rows, simulated baselines)
  simulate  Monte Carlo statistics for one policy
  verify    run the internal cross-validation suites

All commands are flag-driven; an optional plain key=value config file
(--config) supplies defaults that explicit flags override.  Floats are
printed with 12 significant digits.  Exit codes: 0 success, 1 verification
failure, 2 invalid parameters, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import closedform, search, sim
from .errors import DomainError, NoConvergence
from .model import Metric, to_chain, validate_params
from .verify import run_checks

SWEEP_COLUMNS = ("metric", "p", "q", "r", "lambda", "policy", "n_star",
                 "avg_age", "avg_active", "avg_reward", "se_reward", "seed",
                 "slots")

DEFAULT_SLOTS = 1_000_000
DEFAULT_BURN_IN = 10_000
DEFAULT_SEED = 42


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return "" if x is None else str(x)


def _metric(tag: str) -> Metric:
    return Metric.AOI if tag == "aoi" else Metric.AOII


def _params(args, lam=None):
    return validate_params(args.p, args.q, args.r,
                           args.lam if lam is None else lam)


def _add_system_flags(sub, with_lambda=True):
    sub.add_argument("--metric", choices=("aoi", "aoii"), required=True)
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--q", type=float, required=True)
    sub.add_argument("--r", type=float, required=True)
    if with_lambda:
        sub.add_argument("--lambda", dest="lam", type=float, required=True)


def cmd_solve(args) -> int:
    params = _params(args)
    chain_ = to_chain(params, _metric(args.metric))
    if args.method == "breakpoints":
        n_star = search.find_threshold_breakpoints(chain_, params.lam)
    elif args.method == "scan":
        n_star = search.find_threshold_scan(chain_, params.lam)
    else:
        n_star = search.find_threshold_alg1(chain_, params.lam)
    ev = closedform.average_reward(chain_, n_star, params.lam)
    print("n_star,avg_age,avg_active,reward")
    print(",".join(_fmt(v) for v in (ev.n, ev.avg_age, ev.avg_active, ev.reward)))
    return 0


def cmd_eval(args) -> int:
    params = _params(args)
    chain_ = to_chain(params, _metric(args.metric))
    ev = closedform.average_reward(chain_, args.n, params.lam)
    print("n,avg_age,avg_active,reward")
    print(",".join(_fmt(v) for v in (ev.n, ev.avg_age, ev.avg_active, ev.reward)))
    return 0


def _sweep_rows(args):
    metric = _metric(args.metric)
    policies = [s.strip() for s in args.policies.split(",") if s.strip()]
    for pol in policies:
        if pol not in ("optimal", "random", "opposite"):
            raise DomainError("policies", pol, "{optimal,random,opposite}")
    if args.lambda_start > args.lambda_end or args.lambda_step <= 0:
        raise DomainError("lambda grid",
                          (args.lambda_start, args.lambda_end, args.lambda_step),
                          "start <= end, step > 0")
    n_points = int(round((args.lambda_end - args.lambda_start)
                         / args.lambda_step)) + 1
    lams = [args.lambda_start + k * args.lambda_step for k in range(n_points)]
    lams = [lam for lam in lams if lam <= args.lambda_end + 1e-12]
    rows = []
    for lam in lams:
        params = validate_params(args.p, args.q, args.r, lam)
        chain_ = to_chain(params, metric)
        n_star = search.find_threshold_breakpoints(chain_, lam)
        for pol in policies:
            base = {"metric": args.metric, "p": params.p, "q": params.q,
                    "r": params.r, "lambda": lam, "policy": pol,
                    "se_reward": None, "seed": None, "slots": None}
            if pol == "optimal":
                ev = closedform.average_reward(chain_, n_star, lam)
                base.update(n_star=n_star, avg_age=ev.avg_age,
                            avg_active=ev.avg_active, avg_reward=ev.reward)
            else:
                policy = (sim.UniformRandom(0.5) if pol == "random"
                          else sim.OppositeThreshold(n_star))
                stats = sim.simulate_aggregate(params, metric, policy,
                                               args.slots, args.burn_in,
                                               args.seed)
                base.update(n_star=n_star if pol == "opposite" else None,
                            avg_age=stats.mean_state,
                            avg_active=stats.mean_active,
                            avg_reward=stats.mean_reward,
                            se_reward=stats.se_reward, seed=args.seed,
                            slots=args.slots)
            rows.append(base)
    rows.sort(key=lambda row: (row["lambda"], row["policy"]))
    return rows


def cmd_sweep(args) -> int:
    rows = _sweep_rows(args)
    tmp = args.out + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(SWEEP_COLUMNS) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(row[col]) for col in SWEEP_COLUMNS) + "\n")
        os.replace(tmp, args.out)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)
    return 0


def cmd_simulate(args) -> int:
    params = _params(args)
    metric = _metric(args.metric)
    if args.policy == "threshold":
        policy = sim.Threshold(args.n)
    elif args.policy == "random":
        policy = sim.UniformRandom(args.rho)
    else:
        policy = sim.OppositeThreshold(args.n)
    runner = sim.simulate_full if args.system == "full" else sim.simulate_aggregate
    stats = runner(params, metric, policy, args.slots, args.burn_in, args.seed)
    print("mean_state,mean_active,mean_reward,se_state,se_reward,seed,slots,burn_in")
    print(",".join(_fmt(v) for v in (
        stats.mean_state, stats.mean_active, stats.mean_reward,
        stats.se_state, stats.se_reward, stats.seed, stats.slots,
        stats.burn_in)))
    return 0


def cmd_verify(args) -> int:
    results = run_checks(args.level)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status},{res.name},{res.detail}")
        failed = failed or not res.passed
    return 1 if failed else 0


def _load_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="agejam", description=__doc__)
    parser.add_argument("--config", help="key=value defaults file")
    subs = parser.add_subparsers(dest="command", required=True)

    p_solve = subs.add_parser("solve", help="optimal threshold for one lambda")
    _add_system_flags(p_solve)
    p_solve.add_argument("--method", choices=("alg1", "breakpoints", "scan"),
                         default="breakpoints")
    p_solve.set_defaults(func=cmd_solve)

    p_eval = subs.add_parser("eval", help="closed-form record for threshold n")
    _add_system_flags(p_eval)
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = subs.add_parser("sweep", help="lambda sweep to CSV")
    p_sweep.add_argument("--metric", choices=("aoi", "aoii"), required=True)
    p_sweep.add_argument("--p", type=float, required=True)
    p_sweep.add_argument("--q", type=float, required=True)
    p_sweep.add_argument("--r", type=float, required=True)
    p_sweep.add_argument("--lambda-start", type=float, required=True)
    p_sweep.add_argument("--lambda-end", type=float, required=True)
    p_sweep.add_argument("--lambda-step", type=float, default=0.1)
    p_sweep.add_argument("--policies", default="optimal,random,opposite")
    p_sweep.add_argument("--slots", type=int, default=DEFAULT_SLOTS)
    p_sweep.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN)
    p_sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_sim = subs.add_parser("simulate", help="Monte Carlo run for one policy")
    _add_system_flags(p_sim)
    p_sim.add_argument("--policy", choices=("threshold", "random", "opposite"),
                       required=True)
    p_sim.add_argument("--n", type=int, default=0)
    p_sim.add_argument("--rho", type=float, default=0.5)
    p_sim.add_argument("--system", choices=("aggregate", "full"),
                       default="aggregate")
    p_sim.add_argument("--slots", type=int, default=DEFAULT_SLOTS)
    p_sim.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN)
    p_sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sim.set_defaults(func=cmd_simulate)

    p_verify = subs.add_parser("verify", help="run self-check suites")
    p_verify.add_argument("--level", choices=("fast", "full"), default="fast")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # Install config-file values as subcommand defaults so explicit flags win.
    config_path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            config_path = argv[i + 1]
        elif tok.startswith("--config="):
            config_path = tok.split("=", 1)[1]
    if config_path:
        raw = _load_config(config_path)
        subparsers = parser._subparsers._group_actions[0].choices
        for sub in subparsers.values():
            known = {a.dest for a in sub._actions}
            sub.set_defaults(**{k: _coerce(sub, k, v) for k, v in raw.items()
                                if k in known})
            # Config-supplied values satisfy required flags.
            for action in sub._actions:
                if action.dest in raw:
                    action.required = False
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def _coerce(sub_parser, dest: str, raw: str):
    for action in sub_parser._actions:
        if action.dest == dest and action.type is not None:
            return action.type(raw)
    return raw


if __name__ == "__main__":
    sys.exit(main())
