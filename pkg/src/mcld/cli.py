"""Command-line front end: ``mcld <subcommand> ...``.

Every subcommand except ``construct`` prints a JSON report with the run
configuration (seed and caps included), named checks sorted by name, the
result payload and timings.  Exit codes: 0 all checks pass, 1 some check
failed, 2 usage or input error, 3 only resource caps prevented checks.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .caps import DEFAULT_CAPS, CapExceeded, Caps
from .covers import build_cover, min_cover_size, psi_b_witness, sauer_bound
from .dimensions import BoundViolation, dimension_report, littlestone_dim, mld
from .experiments import Check, check, end_to_end, tightness
from .hypothesis import (ClassError, HypothesisClass, all_functions, amplify, binary_restrictions,
                         make_point_function_class, make_threshold_class, make_threshold_pair_class,
                         product_class, random_class)
from .online import (BitwiseLearner, SOA, UnrealizableError, WeightedMajority, adversary_search,
                     run_sequence, wm_regret_bound)
from .privacy import (accuracy_eval, data_universe, dp_verify, exp_mech_learner, neighbors,
                      plan_equal, reduction_distribution, reduction_learner, union_bound_rows)
from .repdim import (ALPHA, BETA, ProbabilisticRepresentation, is_probabilistic_representation,
                     point_mass, repdim_bruteforce, wm_repdim_experiment)
from .rng import make_rng
from .trees import TreeError, heap_from_json, random_input_tree, tree_to_json

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def fr(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


class Report:
    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.checks: list[Check] = []
        self.result: dict = {}
        self.timings: dict = {}
        self._t0 = time.perf_counter()

    def add(self, c: Check) -> None:
        self.checks.append(c)

    def skipped(self, name: str, err: CapExceeded, anchor: str = "") -> None:
        self.checks.append(Check(name, err.value, err.limit, "skipped-cap", anchor or err.cap))

    def exit_code(self) -> int:
        verdicts = {c.verdict for c in self.checks}
        if "fail" in verdicts:
            return EXIT_FAIL
        if "skipped-cap" in verdicts:
            return EXIT_CAP
        return EXIT_PASS

    def to_json(self, timings: bool = True) -> dict:
        out = {"command": self.command, "version": __version__, "config": self.config,
               "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
               "result": self.result}
        if timings:
            out["timings"] = dict(self.timings, total_seconds=time.perf_counter() - self._t0)
        return out


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def load_class(path: str) -> HypothesisClass:
    return HypothesisClass.from_json(_load_json(path))


def load_points(path: str) -> tuple:
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("points", data.get("sample"))
    if not isinstance(data, list):
        raise ValueError("dataset JSON must be a list of [x, y] pairs or {\"points\": [...]}")
    return tuple((int(x), int(y)) for x, y in data)


def _caps(args) -> Caps:
    over = {}
    for item in getattr(args, "cap", None) or []:
        name, _, val = item.partition("=")
        if name not in DEFAULT_CAPS.as_dict():
            raise ValueError(f"unknown cap {name!r}")
        over[name] = int(val)
    return dataclasses.replace(DEFAULT_CAPS, **over)


def _config(args, caps: Caps) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "cap", "out")}
    cfg["caps"] = caps.as_dict()
    return cfg


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


# construct -------------------------------------------------------------------

def cmd_construct(args, caps):
    if args.threshold_pair is not None:
        H = make_threshold_pair_class(args.threshold_pair)
    elif args.threshold is not None:
        H = make_threshold_class(args.threshold)
    elif args.amplify is not None:
        H = amplify(load_class(args.amplify[0]), int(args.amplify[1]), caps)
    elif args.point is not None:
        H = make_point_function_class(int(args.point[0]), int(args.point[1]))
    elif args.product is not None:
        if args.k is None:
            raise ValueError("--product needs --k")
        H = product_class([load_class(p) for p in args.product], args.k, caps)
    else:
        H = all_functions(int(args.all_functions[0]), int(args.all_functions[1]))
    return H.to_json()


# dims ------------------------------------------------------------------------

def cmd_dims(args, caps):
    H = load_class(args.file)
    rep = Report("dims", _config(args, caps))
    want_b = args.psi in ("b", "all")
    t = time.perf_counter()
    try:
        r = dimension_report(H, caps, with_psi_b=None if want_b else False, strict=False)
    except CapExceeded as e:
        rep.skipped("dimension_report", e)
        return rep
    rep.timings["dimensions_seconds"] = time.perf_counter() - t
    res = {"mld": r.mld, "binary_dims": r.binary_dims, "k": r.k, "bits": H.bits}
    if args.psi in ("n", "all"):
        res["psi_n"] = r.psi_n
    if args.psi in ("bin", "all"):
        res["psi_bin"] = r.psi_bin
    if want_b:
        res["psi_b"] = r.psi_b
        if r.psi_b is None:
            rep.add(Check("psi_b_computed", 3 ** (H.k + 1), caps.max_psi_b_maps, "skipped-cap",
                          "full collapsing-map family too large"))
    if args.uniform or args.psi == "all":
        res["psi_bin_uniform"] = r.psi_bin_uniform
    rep.result = res
    for b in r.bounds_checked:
        rep.add(Check(b.name, b.lhs, b.rhs, "pass" if b.holds else "fail", b.anchor))
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(rep.to_json(timings=False), fh, indent=2)
    return rep


# covers ----------------------------------------------------------------------

def cmd_covers(args, caps):
    H = load_class(args.file)
    rep = Report("covers", _config(args, caps))
    if args.tree:
        z = heap_from_json(_load_json(args.tree))
    else:
        z = random_input_tree(make_rng(args.seed), H.domain_size, args.depth)
    if z.depth != args.depth:
        raise TreeError(f"tree depth {z.depth} differs from --depth {args.depth}")
    d = mld(H, caps)
    try:
        cert = build_cover(H, z, caps)
    except CapExceeded as e:
        rep.skipped("cover_built", e)
        return rep
    rep.result = {"mld": d, "depth": z.depth, "cover_size": cert.size, "tree": cert.to_json()["tree"]}
    rep.add(check("cover_verified", cert.verified, True, cert.verified, "0-cover definition"))
    if z.depth >= d:
        s = sauer_bound(d, H.k, z.depth)
        rep.result["sauer_bound"] = s
        rep.add(check("cover_le_sauer_bound", cert.size, s, cert.size <= s,
                      "sum_{i<=d} C(n,i) k^i"))
    else:
        cap = (H.k + 1) ** z.depth
        rep.add(check("cover_le_all_sequences", cert.size, cap, cert.size <= cap, "(k+1)^n"))
    if args.exact:
        try:
            m = min_cover_size(H, z, caps)
            rep.result["min_cover_size"] = m
            rep.add(check("min_cover_le_built", m, cert.size, m <= cert.size, "minimality"))
        except CapExceeded as e:
            rep.skipped("min_cover_le_built", e)
    if args.witness:
        try:
            d_b, T, w = psi_b_witness(H, caps)
            data = {"psi_b": d_b, "psi_tree": tree_to_json(T), **w.to_json()}
            with open(args.witness, "w") as fh:
                json.dump(data, fh, indent=2)
            rep.result["psi_b"] = d_b
            rep.add(check("witness_pairs_diverge", w.certified, True, w.certified,
                          "stripped tree forces distinct cover trees"))
            if d_b <= 2:
                m = min_cover_size(H, w.tree, caps)
                rep.result["witness_min_cover"] = m
                rep.add(check("witness_min_cover_ge_2_pow_psi_b", m, 2 ** d_b, m >= 2 ** d_b,
                              "N(0,H,d_B) >= 2^d_B"))
        except CapExceeded as e:
            rep.skipped("witness_min_cover_ge_2_pow_psi_b", e)
    return rep


# online ----------------------------------------------------------------------

def _learner(args, H, horizon, caps):
    if args.learner == "soa":
        return lambda: SOA(H, caps)
    if args.learner == "bitwise":
        return lambda: BitwiseLearner(H, caps)
    return lambda: WeightedMajority(H.rows, H.k, max(horizon, 1), args.eta)


def cmd_online(args, caps):
    H = load_class(args.file)
    rep = Report("online", _config(args, caps))
    T = args.horizon
    make = _learner(args, H, T, caps)
    rng = make_rng(args.seed)
    if args.adversary:
        try:
            res = adversary_search(H, make, T, caps)
        except CapExceeded as e:
            rep.skipped("adversary_search", e)
            return rep
        seq = res.sequence
    else:
        f = H.rows[int(rng.integers(0, len(H)))]
        xs = rng.integers(0, H.domain_size, size=T)
        seq = [(int(x), f[int(x)]) for x in xs]
    trace = run_sequence(make(), seq, rng if args.learner == "wm" else None)
    rep.result = {"trace": trace.to_json(), "sequence": [list(s) for s in seq]}
    d = mld(H, caps)
    rep.result["mld"] = d
    if args.learner == "soa":
        rep.add(check("soa_mistakes_le_mld", trace.mistakes, d, trace.mistakes <= d,
                      "SOA mistake bound"))
    elif args.learner == "bitwise":
        s = sum(littlestone_dim(R, caps) for R in binary_restrictions(H))
        rep.add(check("bitwise_mistakes_le_sum_binary_ld", trace.mistakes, s, trace.mistakes <= s,
                      "sum of binary mistake bounds"))
    else:
        best = min(sum(e[x] != y for x, y in seq) for e in H.rows)
        regret = trace.mistakes - best
        bound = wm_regret_bound(len(H), max(T, 1))
        rep.result["expected_regret"] = regret
        if args.eta is None:
            rep.add(check("wm_regret_le_bound", regret, bound, regret <= bound + 1e-9,
                          "sqrt(ln(N) T / 2)"))
    return rep


# dp-verify -------------------------------------------------------------------

def cmd_dp_verify(args, caps):
    H = load_class(args.file)
    data = load_points(args.dataset)
    eps, delta = Fraction(args.eps), Fraction(args.delta)
    rep = Report("dp-verify", _config(args, caps))
    if args.mechanism == "expmech":
        mech = lambda ds: exp_mech_learner(H, ds, eps)
    else:
        plan = plan_equal(len(data), H.k)
        mech = lambda ds: reduction_distribution(H, ds, plan, eps, False)
    k_uni = 1 if args.mechanism == "expmech" else H.k
    pairs = [(data, nb) for nb in neighbors(data, data_universe(H.domain_size, k_uni))]
    if args.mode == "exact":
        r = dp_verify(mech, pairs, eps, delta)
        rep.result = r.to_json()
        rep.add(check("dp_exact", r.worst_slack, float(delta), r.passed, "(eps, delta)-DP on neighbours"))
    else:
        rng = make_rng(args.seed)
        worst = 0.0
        for a, b in pairs:
            for D1, D2 in ((a, b), (b, a)):
                p, q = mech(D1), mech(D2)
                c1 = _empirical(p, rng, args.samples)
                c2 = _empirical(q, rng, args.samples)
                f = math.exp(float(eps))
                slack = sum(max(0.0, c1.get(o, 0) - f * c2.get(o, 0)) for o in set(c1) | set(c2))
                worst = max(worst, slack)
        tol = 3.0 / math.sqrt(args.samples)
        rep.result = {"pairs": len(pairs), "estimated_worst_slack": worst, "tolerance": tol}
        rep.add(check("dp_monte_carlo", worst, float(delta) + tol, worst <= float(delta) + tol,
                      "(eps, delta)-DP, sampled estimate"))
    return rep


def _empirical(dist, rng, n):
    counts: dict = {}
    for _ in range(n):
        o = dist.sample(rng)
        counts[o] = counts.get(o, 0) + 1
    return {o: c / n for o, c in counts.items()}


# learn -----------------------------------------------------------------------

def cmd_learn(args, caps):
    H = load_class(args.file)
    sample = load_points(args.sample)
    eps = Fraction(args.eps)
    rep = Report("learn", _config(args, caps))
    plan = plan_equal(len(sample), H.k)
    run = reduction_learner(H, sample, plan, eps, make_rng(args.seed))
    errs = sum(1 for x, y in sample if run.hypothesis[x] != y)
    rep.result = {"hypothesis": list(run.hypothesis), "parts": [list(p) for p in run.parts],
                  "plan": plan.to_json(), "sample_errors": errs}
    if args.target is not None:
        f = H.rows[args.target]
        D = [Fraction(1, H.domain_size)] * H.domain_size
        err = accuracy_eval(run.hypothesis, D, f)
        rows = union_bound_rows(H, run, f)
        rep.result["error_uniform"] = fr(err)
        rep.add(check("pointwise_union_bound", max(a - b for a, b in rows), 0,
                      all(a <= b for a, b in rows), "1[g != f] <= sum_i 1[g_i != f_i]"))
    return rep


# repdim ----------------------------------------------------------------------

def cmd_repdim(args, caps):
    H = load_class(args.file)
    rep = Report("repdim", _config(args, caps))
    alpha, beta = Fraction(args.alpha), Fraction(args.beta)
    chosen = None
    if args.check:
        R = ProbabilisticRepresentation.from_json(_load_json(args.check))
        chk = is_probabilistic_representation(R, H, alpha, beta, args.tol, caps)
        rep.result["check"] = chk.to_json()
        rep.add(Check("representation_valid", chk.verdict, "pass",
                      chk.verdict if chk.verdict != "pass" else "pass", "probabilistic representation"))
        if chk.valid:
            chosen = R
            d = mld(H, caps)
            rep.add(check("mld_over_32_le_size", d / 32, R.size, d / 32 <= R.size + 1e-9,
                          "MLD/32 <= RepDim"))
    if args.bruteforce:
        try:
            b = repdim_bruteforce(H, alpha, beta, tol=args.tol, caps=caps)
            rep.result["bruteforce"] = b.to_json()
            if b.upper is not None:
                rep.add(check("lower_le_upper", b.lower, b.upper, b.lower <= b.upper + 1e-9,
                              "MLD/32 <= RepDim"))
                chosen = chosen or b.best
        except CapExceeded as e:
            rep.skipped("repdim_bruteforce", e)
    if args.wm_experiment:
        R = chosen or point_mass(H)
        try:
            e = wm_repdim_experiment(H, R, caps)
        except CapExceeded as err:
            rep.skipped("wm_experiment", err)
            return rep
        out = e.to_json()
        if e.sequence and args.trials > 0:
            rng = make_rng(args.seed)
            total = 0.0
            for _ in range(args.trials):
                # draw the class once, then sample every prediction
                i = int(rng.choice(len(R.P), p=[float(p) for p in R.P]))
                G = R.family[i]
                trace = run_sequence(WeightedMajority(G.rows, G.k, e.mld), e.sequence, rng)
                total += sum(r.prediction["sampled"] != r.y for r in trace.rounds)
            out["monte_carlo_mean_mistakes"] = total / args.trials
        rep.result["wm_experiment"] = out
        for name, ok in e.checks.items():
            rep.add(check(name, ok, True, ok, "representation learner mistake chain"))
    return rep


# verify-all ------------------------------------------------------------------

def _verify_class(rep: Report, tag: str, H: HypothesisClass, rng, caps: Caps) -> None:
    try:
        r = dimension_report(H, caps, strict=False)
    except CapExceeded as e:
        rep.skipped(f"{tag}/dimension_report", e)
        return
    for b in r.bounds_checked:
        rep.add(Check(f"{tag}/{b.name}", b.lhs, b.rhs, "pass" if b.holds else "fail", b.anchor))
    rep.result[tag] = r.to_json()
    n = max(1, min(r.mld, 3))
    z = random_input_tree(rng, H.domain_size, n)
    try:
        cert = build_cover(H, z, caps)
        m = min_cover_size(H, z, caps)
        ok = cert.verified and m <= cert.size
        if n >= r.mld:
            ok = ok and cert.size <= sauer_bound(r.mld, H.k, n)
        rep.add(check(f"{tag}/cover_sandwich", [m, cert.size], n, ok, "min <= built <= Sauer sum"))
    except CapExceeded as e:
        rep.skipped(f"{tag}/cover_sandwich", e)
    if r.psi_b is not None and r.psi_b <= 2:
        try:
            d_b, T, w = psi_b_witness(H, caps)
            m = min_cover_size(H, w.tree, caps)
            rep.add(check(f"{tag}/witness_min_cover", m, 2 ** d_b, m >= 2 ** d_b and w.certified,
                          "N(0,H,d_B) >= 2^d_B"))
        except CapExceeded as e:
            rep.skipped(f"{tag}/witness_min_cover", e)
    if len(H) <= 30 and r.mld <= 3:
        try:
            soa = adversary_search(H, lambda: SOA(H, caps), r.mld + 1, caps)
            rep.add(check(f"{tag}/soa_mistakes_le_mld", soa.mistakes, r.mld, soa.mistakes <= r.mld,
                          "SOA mistake bound"))
            bw = adversary_search(H, lambda: BitwiseLearner(H, caps), r.mld + 1, caps)
            s = sum(r.binary_dims)
            rep.add(check(f"{tag}/bitwise_mistakes_le_sum", bw.mistakes, s, bw.mistakes <= s,
                          "sum of binary mistake bounds"))
        except CapExceeded as e:
            rep.skipped(f"{tag}/online_bounds", e)


def cmd_verify_all(args, caps):
    rep = Report("verify-all", _config(args, caps))
    rng = make_rng(args.seed)
    classes = []
    if args.file:
        classes.append(load_class(args.file))
    if args.construct:
        kind, val = args.construct
        if kind != "threshold-pair":
            raise ValueError(f"unknown construction {kind!r}")
        classes.append(make_threshold_pair_class(int(val)))
    for _ in range(args.random):
        classes.append(random_class(rng))
    if not classes:
        raise ValueError("nothing to verify: give a FILE, --construct or --random")
    for i, H in enumerate(classes):
        _verify_class(rep, f"class{i:04d}", H, rng, caps)
    return rep


# tightness / end-to-end ------------------------------------------------------

def cmd_tightness(args, caps):
    rep = Report("tightness", _config(args, caps))
    for c in tightness(args.k, args.d, caps):
        rep.add(c)
    return rep


def cmd_end_to_end(args, caps):
    H = load_class(args.file)
    rep = Report("end-to-end", _config(args, caps))
    D = [Fraction(w) for w in args.dist.split(",")] if args.dist else None
    t = time.perf_counter()
    r = end_to_end(H, args.concept, args.n, Fraction(args.eps), args.seed, D, args.dp_positions)
    rep.timings["end_to_end_seconds"] = time.perf_counter() - t
    rep.result = r.to_json()
    for c in r.checks:
        rep.add(c)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcld", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", action="append", metavar="NAME=VALUE",
                        help="override a resource cap (also MCLD_<NAME> in the environment)")
    common.add_argument("--out", help="also write the JSON output to this file")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="emit a class JSON")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--threshold-pair", type=int, metavar="K")
    g.add_argument("--threshold", type=int, metavar="M")
    g.add_argument("--amplify", nargs=2, metavar=("FILE", "L"))
    g.add_argument("--point", nargs=2, type=int, metavar=("D", "M"))
    g.add_argument("--product", nargs="+", metavar="FILE")
    g.add_argument("--all-functions", nargs=2, type=int, metavar=("K", "M"))
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("dims", parents=[common], help="dimensions and their inequalities")
    c.add_argument("file")
    c.add_argument("--psi", choices=["n", "bin", "b", "all"], default="all")
    c.add_argument("--uniform", action="store_true")
    c.add_argument("--report")
    c.set_defaults(func=cmd_dims)

    c = sub.add_parser("covers", parents=[common], help="0-covers on an input tree")
    c.add_argument("file")
    c.add_argument("--depth", type=int, required=True)
    c.add_argument("--tree", help="input-tree JSON (default: seeded random tree)")
    c.add_argument("--exact", action="store_true")
    c.add_argument("--witness")
    c.set_defaults(func=cmd_covers)

    c = sub.add_parser("online", parents=[common], help="run an online learner")
    c.add_argument("file")
    c.add_argument("--learner", choices=["soa", "bitwise", "wm"], default="soa")
    c.add_argument("--horizon", type=int, required=True)
    c.add_argument("--adversary", action="store_true")
    c.add_argument("--eta", type=float)
    c.set_defaults(func=cmd_online)

    c = sub.add_parser("dp-verify", parents=[common], help="privacy check on a dataset's neighbours")
    c.add_argument("file")
    c.add_argument("--dataset", required=True)
    c.add_argument("--eps", required=True)
    c.add_argument("--delta", default="0")
    c.add_argument("--mode", choices=["exact", "mc"], default="exact")
    c.add_argument("--mechanism", choices=["expmech", "reduction"], default="expmech")
    c.add_argument("--samples", type=int, default=2000)
    c.set_defaults(func=cmd_dp_verify)

    c = sub.add_parser("learn", parents=[common], help="run the private reduction once")
    c.add_argument("file")
    c.add_argument("--reduction", action="store_true", required=True)
    c.add_argument("--sample", required=True)
    c.add_argument("--eps", required=True)
    c.add_argument("--target", type=int)
    c.set_defaults(func=cmd_learn)

    c = sub.add_parser("repdim", parents=[common], help="probabilistic representations")
    c.add_argument("file")
    c.add_argument("--check")
    c.add_argument("--alpha", default=str(ALPHA))
    c.add_argument("--beta", default=str(BETA))
    c.add_argument("--tol", type=float, default=1e-6)
    c.add_argument("--bruteforce", action="store_true")
    c.add_argument("--wm-experiment", action="store_true")
    c.add_argument("--trials", type=int, default=0)
    c.set_defaults(func=cmd_repdim)

    c = sub.add_parser("verify-all", parents=[common], help="run every check on classes")
    c.add_argument("file", nargs="?")
    c.add_argument("--random", type=int, default=0)
    c.add_argument("--construct", nargs=2, metavar=("KIND", "VALUE"))
    c.set_defaults(func=cmd_verify_all)

    c = sub.add_parser("tightness", parents=[common], help="gap constructions")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.set_defaults(func=cmd_tightness)

    c = sub.add_parser("end-to-end", parents=[common], help="sample, learn privately, audit")
    c.add_argument("file")
    c.add_argument("--concept", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--eps", required=True)
    c.add_argument("--dist", help="comma-separated point weights (default uniform)")
    c.add_argument("--dp-positions", type=int, help="limit the exact DP audit to the first P positions")
    c.set_defaults(func=cmd_end_to_end)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        caps = _caps(args)
        out = args.func(args, caps)
    except CapExceeded as e:
        print(json.dumps({"error": "cap exceeded", "cap": e.cap, "value": e.value,
                          "limit": e.limit}), file=sys.stderr)
        return EXIT_CAP
    except (ClassError, TreeError, UnrealizableError, BoundViolation, ValueError, KeyError,
            TypeError, OSError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_USAGE
    if isinstance(out, Report):
        _emit(out.to_json(), args.out)
        return out.exit_code()
    _emit(out, args.out)
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(main())
