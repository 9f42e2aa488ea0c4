"""Command-line front end: parse structure files, dispatch checkers, emit
human or machine reports with stable exit codes."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction

from . import lie, manifold
from .errors import DominationError, FuzzcheckError, ParseError, ResourceCapError
from .groups import (
    is_fuzzy_subgroup,
    is_fuzzy_topological_group,
    is_G_invariant,
    quotient_action,
    restrict_to_invariant,
    restrict_to_subgroup,
    validate_group,
    verify_action,
)
from .maps import is_fuzzy_homomorphism
from .parsers import (
    load_action,
    load_chart_table,
    load_classifier,
    load_fuzzy_set,
    load_group,
    load_map,
    load_relation,
    load_samples,
    load_structure_constants,
    load_topology,
)
from .report import EXIT_CAP, EXIT_USAGE, Report, fmt_value
from .sets import format_grade, level_set, parse_grade
from .topology import (
    DEFAULT_CLOSURE_CAP,
    FuzzyTopology,
    GradeLattice,
    check_map,
    generate,
    is_hausdorff,
    is_open_base,
    is_T1,
    verify_axioms,
)


def _verdict_report(command, provenance, verdict, metrics=None) -> Report:
    rep = Report(command, "pass" if verdict.ok else "fail", provenance,
                 metrics=dict(metrics or {}))
    if not verdict.ok:
        rep.witness["reason"] = verdict.reason
        if verdict.witness is not None:
            rep.witness["at"] = verdict.witness
    return rep


def _tolerances(args) -> manifold.Tolerances:
    fields = {f.name for f in dataclasses.fields(manifold.Tolerances)}
    overrides = {}
    for item in args.tolerance or []:
        if "=" not in item:
            raise FuzzcheckError(f"--tolerance expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        if name not in fields:
            raise FuzzcheckError(f"unknown tolerance {name!r}; known: {sorted(fields)}")
        overrides[name] = float(value)
    return manifold.Tolerances(**overrides)


def _build_topology(path, args) -> FuzzyTopology:
    ambient, generators, lattice = load_topology(path)
    if args.lattice_q is not None:
        lattice = GradeLattice(args.lattice_q)
    return generate(ambient, generators, lattice, cap=args.cap)


# --- command handlers -------------------------------------------------------

def cmd_check_subgroup(args) -> Report:
    group = load_group(args.group)
    v = validate_group(group)
    if not v:
        return _verdict_report("check-subgroup", "group-axioms", v)
    mu = load_fuzzy_set(args.fuzzy_set, carrier=group.carrier)
    return _verdict_report("check-subgroup", "fuzzy-subgroup-conditions",
                           is_fuzzy_subgroup(mu, group),
                           metrics={"order": len(group)})


def cmd_check_homomorphism(args) -> Report:
    f = load_map(args.map)
    gsrc = load_group(args.source_group)
    gtgt = load_group(args.target_group)
    return _verdict_report("check-homomorphism", "group-compatible-grade-map",
                           is_fuzzy_homomorphism(f, gsrc, gtgt))


def cmd_check_topology(args) -> Report:
    ambient, generators, lattice = load_topology(args.topology)
    if args.lattice_q is not None:
        lattice = GradeLattice(args.lattice_q)
    if args.literal:
        tau = FuzzyTopology(ambient, frozenset(generators), lattice)
    else:
        tau = generate(ambient, generators, lattice, cap=args.cap)
    rep = _verdict_report("check-topology", "fuzzy-topology-axioms",
                          verify_axioms(tau), metrics={"opens": len(tau.opens)})
    if args.base:
        base = [load_fuzzy_set(p, carrier=ambient.carrier) for p in args.base]
        bv = is_open_base(base, tau)
        rep.metrics["open_base"] = bv.ok
        if not bv.ok and rep.verdict == "pass":
            rep.verdict = "fail"
            rep.witness["reason"] = bv.reason
    return rep


def cmd_check_t1(args) -> Report:
    tau = _build_topology(args.topology, args)
    return _verdict_report("check-t1", "fuzzy-t1-separation", is_T1(tau),
                           metrics={"opens": len(tau.opens)})


def cmd_check_hausdorff(args) -> Report:
    tau = _build_topology(args.topology, args)
    return _verdict_report("check-hausdorff", "fuzzy-hausdorff-separation",
                           is_hausdorff(tau), metrics={"opens": len(tau.opens)})


def cmd_check_continuity(args) -> Report:
    f = load_map(args.map)
    tau_src = _build_topology(args.source_topology, args)
    tau_tgt = _build_topology(args.target_topology, args)
    flags = check_map(f, tau_src, tau_tgt)
    rep = Report(
        "check-continuity",
        "pass" if flags.continuous else "fail",
        "fuzzy-continuity-openness",
        metrics={
            "continuous": flags.continuous,
            "open": flags.open,
            "homeomorphism": flags.homeomorphism,
        },
    )
    if flags.witness is not None:
        rep.witness["at"] = flags.witness
    return rep


def cmd_check_topgroup(args) -> Report:
    group = load_group(args.group)
    tau = _build_topology(args.topology, args)
    return _verdict_report("check-topgroup", "fuzzy-topological-group",
                           is_fuzzy_topological_group(group, tau),
                           metrics={"opens": len(tau.opens)})


def cmd_check_action(args) -> Report:
    group = load_group(args.group)
    action = load_action(args.action, group)
    return _verdict_report("check-action", "group-action-laws", verify_action(action))


def cmd_check_invariant(args) -> Report:
    group = load_group(args.group)
    action = load_action(args.action, group)
    s = load_fuzzy_set(args.fuzzy_set, carrier=action.space)
    return _verdict_report("check-invariant", "action-invariant-subset",
                           is_G_invariant(action, s))


def _action_metrics(action) -> dict:
    metrics = {}
    for g in action.group.carrier:
        for x in action.space:
            metrics[f"act_{fmt_value(g)}_{fmt_value(x)}"] = action.act(g, x)
    return metrics


def cmd_restrict(args) -> Report:
    group = load_group(args.group)
    action = load_action(args.action, group)
    if args.subgroup:
        elements = args.subgroup.split(",")
        restricted = restrict_to_subgroup(action, elements)
        provenance = "subgroup-restricted-action"
    else:
        s = load_fuzzy_set(args.invariant, carrier=action.space)
        restricted = restrict_to_invariant(action, s)
        provenance = "invariant-restricted-action"
    v = verify_action(restricted)
    rep = _verdict_report("restrict", provenance, v)
    if v.ok:
        rep.metrics.update(_action_metrics(restricted))
    return rep


def cmd_quotient(args) -> Report:
    group = load_group(args.group)
    action = load_action(args.action, group)
    rho = load_relation(args.relation, action.space)
    quotient = quotient_action(action, rho)
    v = verify_action(quotient)
    rep = _verdict_report("quotient", "quotient-action", v)
    if v.ok:
        rep.metrics["classes"] = len(quotient.space)
        for g in quotient.group.carrier:
            for c in quotient.space:
                key = f"act_{fmt_value(g)}_{{{'|'.join(map(str, c))}}}"
                rep.metrics[key] = "{" + "|".join(map(str, quotient.act(g, c))) + "}"
    return rep


def cmd_check_lie(args) -> Report:
    sc = load_structure_constants(args.constants)
    return _verdict_report("check-lie", "lie-algebra-axioms", lie.validate_lie(sc),
                           metrics={"dim": sc.dim})


def _lie_inputs(args):
    sc = load_structure_constants(args.constants)
    mu = load_classifier(args.classifier, sc.dim)
    if args.samples:
        samples = load_samples(args.samples, sc.dim)
    else:
        _, _, samples = lie.cross_product_fixture()
        if sc.dim != 3:
            raise FuzzcheckError("--samples is required for dimensions other than 3")
    return sc, mu, samples


def cmd_check_lie_subalgebra(args) -> Report:
    sc, mu, samples = _lie_inputs(args)
    rep = _verdict_report("check-lie-subalgebra", "fuzzy-lie-subalgebra",
                          lie.is_fuzzy_lie_subalgebra(mu, sc, samples),
                          metrics={"sample_vectors": len(samples.vectors)})
    if rep.verdict == "pass":
        rep.notes.append("no violation on the sample set; not a universal proof")
    return rep


def cmd_check_lie_ideal(args) -> Report:
    sc, mu, samples = _lie_inputs(args)
    rep = _verdict_report("check-lie-ideal", "fuzzy-lie-ideal",
                          lie.is_fuzzy_lie_ideal(mu, sc, samples),
                          metrics={"sample_vectors": len(samples.vectors)})
    if rep.verdict == "pass":
        rep.notes.append("no violation on the sample set; not a universal proof")
    return rep


def cmd_level_set(args) -> Report:
    mu = load_fuzzy_set(args.fuzzy_set)
    t = parse_grade(args.threshold)
    members = level_set(mu, t)
    return Report("level-set", "pass", "level-subset",
                  metrics={"threshold": t, "members": ",".join(map(str, members)),
                           "size": len(members)})


def cmd_check_atlas(args) -> Report:
    tol = _tolerances(args)
    tables = [load_chart_table(p) for p in args.charts]
    report = manifold.check_tabulated_atlas(tables, tol,
                                            normalize_cover=args.normalize_cover)
    rep = Report(
        "check-atlas",
        "pass" if report.ok else "fail",
        "c1-atlas-checks",
        metrics={
            "charts": len(tables),
            "cover_deficiency": report.cover.max_deficiency,
            "transitions": len(report.pairs),
            "transitions_ok": report.transitions_ok,
        },
        notes=["tabulated charts: derivative checks use coarse difference quotients"],
    )
    if report.cover.worst_point is not None:
        rep.metrics["cover_worst_point"] = report.cover.worst_point
    for pc in report.pairs:
        rep.metrics[f"pair_{pc.source_label}_{pc.target_label}"] = pc.report.ok
    first_bad = next((pc for pc in report.pairs if not pc.report.ok), None)
    if first_bad is not None:
        rep.witness["reason"] = first_bad.report.reason
        if first_bad.report.witness is not None:
            rep.witness["at"] = first_bad.report.witness
    elif not report.cover.ok:
        rep.witness["reason"] = "cover supremum below 1"
        rep.witness["at"] = report.cover.worst_point
    return rep


def cmd_demo_circle(args) -> Report:
    tol = _tolerances(args)
    n = args.samples_per_chart
    phi = manifold.circle_phi_atlas(n, tol)
    psi = manifold.circle_psi_atlas(n, tol)
    phi_rep = manifold.check_atlas(phi, normalize_cover=args.normalize_cover)
    psi_rep = manifold.check_atlas(psi, normalize_cover=args.normalize_cover)
    cross = manifold.check_atlas(phi, psi, normalize_cover=args.normalize_cover)
    tr_phi = manifold.transition_map(phi, 0, 1)
    tr_psi = manifold.transition_map(psi, 0, 1)
    max_stab = max(
        [pc.report.max_stability_error for rep_ in (phi_rep, psi_rep, cross)
         for pc in rep_.pairs],
        default=0.0,
    )
    ok = (phi_rep.transitions_ok and psi_rep.transitions_ok and cross.transitions_ok
          and phi_rep.cover.ok and psi_rep.cover.ok)
    rep = Report(
        "demo-circle",
        "pass" if ok else "fail",
        "circle-atlas-fixture",
        metrics={
            "phi_cover_deficiency": phi_rep.cover.max_deficiency,
            "phi_cover_worst_point": phi_rep.cover.worst_point,
            "psi_cover_deficiency": psi_rep.cover.max_deficiency,
            "phi_transitions_ok": phi_rep.transitions_ok,
            "psi_transitions_ok": psi_rep.transitions_ok,
            "cross_transitions_ok": cross.transitions_ok,
            "phi21_at_0.25": tr_phi(0.25),
            "phi21_at_0.75": tr_phi(0.75),
            "psi21_at_0.6": tr_psi(0.6),
            "max_stability_error": max_stab,
            "samples_per_chart": n,
        },
    )
    if not ok:
        if not (phi_rep.cover.ok and psi_rep.cover.ok):
            rep.witness["reason"] = "cover supremum below 1 as the memberships are written"
            rep.witness["at"] = (phi_rep if not phi_rep.cover.ok else psi_rep).cover.worst_point
        else:
            bad = next(pc for rep_ in (phi_rep, psi_rep, cross)
                       for pc in rep_.pairs if not pc.report.ok)
            rep.witness["reason"] = f"{bad.source_label}->{bad.target_label}: {bad.report.reason}"
    return rep


def cmd_demo_gl(args) -> Report:
    report = manifold.gl_demo(args.n, args.count, seed=args.seed)
    return Report(
        "demo-gl",
        "pass" if report.ok else "fail",
        "invertible-matrix-demo",
        metrics={
            "n": report.n,
            "samples": report.samples,
            "max_det_gradient_error": report.max_det_gradient_error,
            "max_mult_instability": report.max_mult_instability,
            "max_inv_instability": report.max_inv_instability,
            "max_orthogonality_error": report.max_orthogonality_error,
            "inclusion_rank": report.inclusion_rank,
        },
    )


def cmd_demo_example(args) -> Report:
    sc, mu, samples = lie.cross_product_fixture()
    metrics = {"sample_vectors": len(samples.vectors)}
    witness = {}
    verdict = "pass"
    if args.part in ("subalgebra", "both"):
        sub = lie.is_fuzzy_lie_subalgebra(mu, sc, samples)
        metrics["subalgebra"] = "no-violation" if sub.ok else "violated"
        if not sub.ok:
            verdict = "fail"
            witness["subalgebra"] = sub.witness
    if args.part in ("ideal", "both"):
        ideal = lie.is_fuzzy_lie_ideal(mu, sc, samples)
        metrics["ideal"] = "violated" if not ideal.ok else "no-violation"
        if not ideal.ok:
            verdict = "fail"
            kind, x, y, got, bound = ideal.witness
            witness["x"] = x
            witness["y"] = y
            metrics["mu_bracket"] = got
            metrics["max_grade"] = bound
    rep = Report("demo-example-2-14", verdict, "cross-product-bracket-demo",
                 witness=witness, metrics=metrics)
    return rep


# --- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzcheck",
        description="Witness-producing checkers for fuzzy algebraic structures.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--lattice-q", type=int, default=None,
                        help="grade lattice resolution override")
    common.add_argument("--tolerance", action="append", metavar="NAME=VALUE",
                        help="numeric tolerance override (repeatable)")
    common.add_argument("--normalize-cover", action="store_true",
                        help="rescale chart memberships so positive sups count as 1")
    common.add_argument("--samples", default=None,
                        help="sample-set file for Lie checks")
    common.add_argument("--cap", type=int, default=DEFAULT_CLOSURE_CAP,
                        help="resource cap for topology closure size")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **positional):
        p = sub.add_parser(name, parents=[common])
        for arg, kwargs in positional.items():
            p.add_argument(arg, **kwargs)
        p.set_defaults(handler=handler)
        return p

    add("check-subgroup", cmd_check_subgroup,
        group={"help": "group file"}, fuzzy_set={"help": "fuzzy set file"})
    add("check-homomorphism", cmd_check_homomorphism,
        map={"help": "map file"}, source_group={}, target_group={})
    p = add("check-topology", cmd_check_topology, topology={"help": "topology file"})
    p.add_argument("--literal", action="store_true",
                   help="verify the listed family itself instead of its closure")
    p.add_argument("--base", nargs="*", default=None,
                   help="fuzzy set files to test as an open base")
    add("check-t1", cmd_check_t1, topology={})
    add("check-hausdorff", cmd_check_hausdorff, topology={})
    add("check-continuity", cmd_check_continuity,
        map={}, source_topology={}, target_topology={})
    add("check-topgroup", cmd_check_topgroup, group={}, topology={})
    add("check-action", cmd_check_action, group={}, action={})
    add("check-invariant", cmd_check_invariant, group={}, action={}, fuzzy_set={})
    p = add("restrict", cmd_restrict, group={}, action={})
    p.add_argument("--subgroup", default=None,
                   help="comma-separated subgroup elements")
    p.add_argument("--invariant", default=None,
                   help="invariant fuzzy set file")
    add("quotient", cmd_quotient, group={}, action={}, relation={})
    add("check-lie", cmd_check_lie, constants={})
    add("check-lie-subalgebra", cmd_check_lie_subalgebra, constants={}, classifier={})
    add("check-lie-ideal", cmd_check_lie_ideal, constants={}, classifier={})
    add("level-set", cmd_level_set, fuzzy_set={}, threshold={})
    p = add("check-atlas", cmd_check_atlas)
    p.add_argument("charts", nargs="+", help="chart table files")
    p = add("demo-circle", cmd_demo_circle)
    p.add_argument("--samples-per-chart", type=int, default=1024)
    p = add("demo-gl", cmd_demo_gl)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p = add("demo-example-2-14", cmd_demo_example)
    p.add_argument("--part", choices=("subalgebra", "ideal", "both"), default="both")
    return parser


def execute(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "restrict" and bool(args.subgroup) == bool(args.invariant):
        parser.error("restrict needs exactly one of --subgroup or --invariant")
    try:
        report = args.handler(args)
    except ResourceCapError as exc:
        sys.stdout.write(Report(args.command, "error", "resource-cap",
                                witness={"reason": str(exc)}).render(args.format))
        return EXIT_CAP
    except DominationError as exc:
        # Violated precondition with a concrete witness: a refutation, not bad input.
        rep = Report(args.command, "fail", "precondition",
                     witness={"reason": str(exc), "at": exc.witness})
        sys.stdout.write(rep.render(args.format))
        return rep.exit_code
    except (ParseError, FuzzcheckError, OSError, ValueError) as exc:
        sys.stdout.write(Report(args.command, "error", "input",
                                witness={"reason": str(exc)}).render(args.format))
        return EXIT_USAGE
    sys.stdout.write(report.render(args.format))
    return report.exit_code


def main() -> None:
    raise SystemExit(execute())


if __name__ == "__main__":
    main()
