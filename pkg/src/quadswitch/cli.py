"""Command-line surface: construct, switch, analyze codes, classify, verify.

Every command prints one JSON report (key-sorted, so byte-identical across
runs except for the "timings" block) and exits 0 only if every requested
check passed.  Graphs are exported as headerless graph6 plus a .labels
sidecar mapping vertex index to point integer.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import codes, distinguish, graph6, switching
from .gf2geom import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    GeometryError,
    canonical_form,
    count_external_lines_through,
    nonquadric_points,
    quadric_size,
)
from .srg import NotStronglyRegular, SrgParams, build_gamma, expected_params, verify_srg


def _params_dict(p: SrgParams) -> dict:
    return {
        "v": p.v,
        "k": p.k,
        "lambda": p.lam,
        "mu": p.mu,
        "r": p.r,
        "s": p.s,
        "f": p.f,
        "g": p.g,
    }


def expected_gamma_weight_distribution(n: int, kind: str) -> dict[int, int]:
    """Closed-form weight enumerator of the unswitched graph's code."""
    h = 1 << ((n - 1) // 2)
    if kind == ELLIPTIC:
        return {0: 1, 1 << (n - 1): (1 << n) - h - 1, (1 << (n - 1)) + h: (1 << n) + h}
    return {0: 1, (1 << (n - 1)) - h: (1 << n) - h, 1 << (n - 1): (1 << n) + h - 1}


class _Runner:
    """Accumulates named checks and stage timings for one invocation."""

    def __init__(self):
        self.checks: dict[str, bool] = {}
        self.timings: dict[str, float] = {}

    def check(self, name: str, ok: bool) -> bool:
        self.checks[name] = bool(ok)
        return bool(ok)

    def time(self, name: str, fn):
        t0 = time.perf_counter()
        out = fn()
        self.timings[name] = round(time.perf_counter() - t0, 6)
        return out

    @property
    def failures(self) -> list[str]:
        return sorted(name for name, ok in self.checks.items() if not ok)


def _code_report(graph) -> dict:
    code = codes.code_from_graph(graph)
    dist = codes.weight_distribution(code)
    words = codes.min_weight_codewords(code)
    return {
        "dimension": code.dim,
        "length": code.length,
        "min_weight": words[0].bit_count(),
        "min_word_count": len(words),
        "weight_distribution": [[w, c] for w, c in sorted(dist.items())],
    }


def _switch_pipeline(n: int, kind: str, t: int, variant: str, choice: int, runner: _Runner):
    form = canonical_form(n, kind)
    gamma = runner.time("build_gamma", lambda: build_gamma(form))
    cfg = runner.time("find_flag", lambda: switching.make_config(form, t, variant, choice))
    s = switching.build_S(cfg)
    cert = switching.validate_switching_set(gamma, s)
    switched = switching.gm_switch(gamma, s)
    t_set = switching.T_formula(cfg)
    return form, gamma, cfg, s, cert, switched, t_set


def _switch_report(gamma, cfg, s, cert, t_set) -> dict:
    ok_t = t_set == cert.half_class
    return {
        "alpha_basis": list(cfg.alpha.basis),
        "pi_basis": list(cfg.pi.basis),
        "pi2_basis": list(cfg.pi2.basis) if cfg.pi2 is not None else None,
        "s_size": len(s),
        "induced_degree": cert.induced_degree,
        "class_sizes": {
            "none": len(cert.none_class),
            "half": len(cert.half_class),
            "all": len(cert.all_class),
        },
        "t_size": len(t_set),
        "t_formula_equals_half_class": ok_t,
    }


def cmd_construct(args, runner: _Runner) -> dict:
    form = canonical_form(args.n, args.kind)
    gamma = runner.time("build_gamma", lambda: build_gamma(form))
    report: dict = {"graph": {"vertices": gamma.v, "edges": gamma.edge_count()}}
    if args.verify:
        params = runner.time("verify_srg", lambda: verify_srg(gamma))
        report["srg"] = _params_dict(params)
        runner.check("srg_matches_expected", params == expected_params(args.n, args.kind))
    if args.export_graph:
        graph6.write_files(gamma, args.export_graph)
        report["exported"] = args.export_graph
    return report


def cmd_switch(args, runner: _Runner) -> dict:
    _, gamma, cfg, s, cert, switched, t_set = _switch_pipeline(
        args.n, args.kind, args.t, args.variant, args.seed_choice, runner
    )
    report = {"switching": _switch_report(gamma, cfg, s, cert, t_set)}
    runner.check("t_formula_equals_half_class", t_set == cert.half_class)
    if args.verify:
        base = verify_srg(gamma)
        swp = runner.time("verify_srg", lambda: verify_srg(switched))
        report["srg"] = _params_dict(swp)
        runner.check("switched_srg_parameters_unchanged", swp == base)
    if args.code:
        report["code"] = runner.time("code", lambda: _code_report(switched))
    if args.export_graph:
        graph6.write_files(switched, args.export_graph)
        report["exported"] = args.export_graph
    return report


def cmd_code(args, runner: _Runner) -> dict:
    form = canonical_form(args.n, args.kind)
    gamma = runner.time("build_gamma", lambda: build_gamma(form))
    if args.t is None:
        graph = gamma
    else:
        cfg = switching.make_config(form, args.t, args.variant, args.seed_choice)
        graph = switching.gm_switch(gamma, switching.build_S(cfg))
    report = {"code": runner.time("code", lambda: _code_report(graph))}
    if args.t is None:
        expected = expected_gamma_weight_distribution(args.n, args.kind)
        got = dict((w, c) for w, c in report["code"]["weight_distribution"])
        runner.check("weight_distribution_matches_table", got == expected)
    return report


def _family_report_dict(rep: distinguish.FamilyReport) -> dict:
    return {
        "members": [
            {
                "name": m.name,
                "t": m.t,
                "variant": m.variant,
                "two_rank": m.sig.two_rank,
                "min_weight": m.sig.min_weight,
                "min_word_profiles": [
                    {"support_size": size, "induced_degrees": list(degs)}
                    for size, degs in m.sig.min_word_profiles
                ],
            }
            for m in rep.members
        ],
        "pairs": [
            {
                "first": p.first,
                "second": p.second,
                "distinct": p.distinct,
                "invariant": p.invariant,
                "cross_checked_isomorphic": p.cross_checked,
            }
            for p in rep.pairs
        ],
        "distinct_count": rep.distinct_count,
        "computed_switched": rep.computed_switched,
        "claimed_switched": rep.claimed_switched,
        "claim_discrepancy": rep.claim_discrepancy,
    }


def cmd_classify_family(args, runner: _Runner) -> dict:
    rep = runner.time("classify", lambda: distinguish.classify_family(args.n, args.kind))
    runner.check("all_pairs_separated", all(p.distinct for p in rep.pairs))
    if args.n == 5:
        runner.check(
            "cross_check_agrees",
            all(p.cross_checked is False for p in rep.pairs),
        )
    return {"family": _family_report_dict(rep)}


def verify_all(n: int, runner: _Runner) -> dict:
    """Every check the library makes at one projective dimension."""
    report: dict = {"n": n}

    sizes = {}
    for nn, kind in ((n - 1, PARABOLIC), (n, ELLIPTIC), (n, HYPERBOLIC)):
        form = canonical_form(nn, kind)
        got = form.zero_mask.bit_count()
        sizes[f"{kind}_{nn}"] = got
        runner.check(f"quadric_size_{kind}_n{nn}", got == quadric_size(nn, kind))
    report["quadric_sizes"] = sizes

    report["srg"] = {}
    gammas = {}
    for kind in (ELLIPTIC, HYPERBOLIC):
        form = canonical_form(n, kind)
        gamma = runner.time(f"build_gamma_{kind}", lambda f=form: build_gamma(f))
        gammas[kind] = (form, gamma)
        params = verify_srg(gamma)
        report["srg"][kind] = _params_dict(params)
        runner.check(f"srg_{kind}", params == expected_params(n, kind))

    if n == 5:
        lines = {}
        for kind, (form, _) in gammas.items():
            sign = 1 if kind == ELLIPTIC else -1
            want = (1 << (n - 2)) + sign * (1 << ((n - 3) // 2))
            counts = {count_external_lines_through(form, x) for x in nonquadric_points(form)}
            lines[kind] = sorted(counts)
            runner.check(f"external_lines_{kind}", counts == {want})
        report["external_lines_per_point"] = lines

    report["switches"] = {}
    for kind, (form, gamma) in gammas.items():
        base = verify_srg(gamma)
        base_code = codes.code_from_graph(gamma)
        for variant in ("t", "tt"):
            for t in switching.legal_t_range(n, kind, variant):
                tag = f"{kind}_{variant}{t}"
                cfg = switching.make_config(form, t, variant)
                s = switching.build_S(cfg)
                cert = switching.validate_switching_set(gamma, s)
                t_set = switching.T_formula(cfg)
                switched = switching.gm_switch(gamma, s)
                entry = _switch_report(gamma, cfg, s, cert, t_set)
                runner.check(f"t_formula_{tag}", t_set == cert.half_class)
                runner.check(
                    f"induced_degree_{tag}",
                    cert.induced_degree == (0 if variant == "t" else 1 << (t + 1)),
                )
                runner.check(f"s_size_{tag}", len(s) == 1 << (t + 1 + (variant == "tt")))
                runner.check(
                    f"t_size_{tag}",
                    len(t_set) == switching.expected_T_size(n, kind, t, variant),
                )
                runner.check(f"switched_srg_{tag}", verify_srg(switched) == base)

                code = codes.code_from_graph(switched)
                words = codes.min_weight_codewords(code)
                v_s = 0
                for i in s:
                    v_s |= 1 << i
                v_t = 0
                for i in t_set:
                    v_t |= 1 << i
                entry["code"] = {
                    "dimension": code.dim,
                    "min_weight": words[0].bit_count(),
                    "min_word_count": len(words),
                }
                runner.check(f"code_dim_{tag}", code.dim == n + 3)
                runner.check(
                    f"code_min_weight_{tag}",
                    words[0].bit_count() == (1 << (t + 1 + (variant == "tt"))),
                )
                runner.check(f"v_s_is_min_word_{tag}", v_s in words)
                runner.check(f"v_s_in_switched_code_{tag}", codes.contains(code, v_s))
                runner.check(f"v_t_in_switched_code_{tag}", codes.contains(code, v_t))
                runner.check(f"v_t_not_in_base_code_{tag}", not codes.contains(base_code, v_t))
                joined = codes.from_vectors(gamma.v, list(gamma.rows) + [v_s, v_t])
                runner.check(f"switched_code_is_augmented_base_{tag}", joined.basis == code.basis)
                report["switches"][tag] = entry

    report["codes"] = {}
    for kind, (form, gamma) in gammas.items():
        code = codes.code_from_graph(gamma)
        dist = codes.weight_distribution(code)
        report["codes"][kind] = {
            "dimension": code.dim,
            "weight_distribution": [[w, c] for w, c in sorted(dist.items())],
        }
        runner.check(f"gamma_code_dim_{kind}", code.dim == n + 1)
        runner.check(
            f"gamma_weight_distribution_{kind}",
            dist == expected_gamma_weight_distribution(n, kind),
        )

    report["families"] = {}
    for kind in (ELLIPTIC, HYPERBOLIC):
        rep = runner.time(f"classify_{kind}", lambda k=kind: distinguish.classify_family(n, k))
        report["families"][kind] = _family_report_dict(rep)
        runner.check(f"family_all_pairs_separated_{kind}", all(p.distinct for p in rep.pairs))
        expected_members = 1 + len(switching.legal_t_range(n, kind, "t")) + len(
            switching.legal_t_range(n, kind, "tt")
        )
        runner.check(f"family_count_{kind}", rep.distinct_count == expected_members)

    return report


def cmd_verify_all(args, runner: _Runner) -> dict:
    if args.n % 2 == 0 or args.n < 5:
        raise GeometryError("verify-all needs an odd n >= 5")
    return runner.time("verify_all", lambda: verify_all(args.n, runner))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadswitch",
        description="quadric graphs in PG(n,2), their switches, and their codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kinds=True):
        p.add_argument("--n", type=int, required=True, help="projective dimension")
        if kinds:
            p.add_argument("--kind", choices=[ELLIPTIC, HYPERBOLIC], required=True)
        p.add_argument("--out", help="also write the report to this file")

    p = sub.add_parser("construct", help="build the quadric graph")
    common(p)
    p.add_argument("--verify", action="store_true", help="check strong regularity")
    p.add_argument("--export-graph", help="write graph6 + .labels files")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("switch", help="switch the quadric graph")
    common(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--variant", choices=["t", "tt"], default="t")
    p.add_argument("--seed-choice", type=int, default=0, help="use the k-th flag instead of the first")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--code", action="store_true", help="report the switched graph's code")
    p.add_argument("--export-graph", help="write graph6 + .labels files")
    p.set_defaults(fn=cmd_switch)

    p = sub.add_parser("code", help="code of the graph (or of a switch)")
    common(p)
    p.add_argument("--t", type=int)
    p.add_argument("--variant", choices=["t", "tt"], default="t")
    p.add_argument("--seed-choice", type=int, default=0)
    p.set_defaults(fn=cmd_code)

    p = sub.add_parser("classify-family", help="signatures and pairwise evidence")
    common(p)
    p.set_defaults(fn=cmd_classify_family)

    p = sub.add_parser("verify-all", help="run every check at one dimension")
    common(p, kinds=False)
    p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    runner = _Runner()
    report: dict = {
        "request": {
            "command": args.command,
            "n": args.n,
            "kind": getattr(args, "kind", None),
            "t": getattr(args, "t", None),
            "variant": getattr(args, "variant", None),
            "seed_choice": getattr(args, "seed_choice", None),
        }
    }
    def emit() -> None:
        text = json.dumps(report, indent=2, sort_keys=True)
        print(text)
        if getattr(args, "out", None):
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(text)
                fh.write("\n")

    try:
        report.update(args.fn(args, runner))
    except (GeometryError, switching.SwitchingError, codes.CodeError, NotStronglyRegular) as exc:
        report["error"] = str(exc)
        report["checks"] = runner.checks
        emit()
        print(f"error: {exc}", file=sys.stderr)
        return 1

    report["checks"] = runner.checks
    report["timings"] = runner.timings
    emit()
    failures = runner.failures
    if failures:
        print("failed checks: " + ", ".join(failures), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
