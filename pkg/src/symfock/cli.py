"""Command-line front end.

Subcommands: decompose, build, verdicts, prob, experiment. Machine-readable
results go to files or stdout, diagnostics to stderr. Exit codes: 0 success,
1 usage or parse problem, 2 invariant failure during a run.

Fixing ``--seed`` makes every output byte-identical across runs except the
timing field inside metadata JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .experiments import (
    CensusConfig,
    require_invariant,
    run_distinguishability_robustness,
    run_fourier_comparison,
    run_mean_probabilities,
    run_unitary_robustness,
)
from .fock import ParticleType, enumerate_outputs, particle_count
from .permutations import cycle_decompose, eigenstructure
from .scattering import (
    prob_boson,
    prob_distinguishable,
    prob_fermion,
    prob_partial,
    transition_probability,
)
from .serialize import (
    VERDICT_COLUMNS,
    check_experiment_config,
    matrix_from_json,
    matrix_to_json,
    parse_occupation,
    parse_permutation,
    spec_from_json,
    spec_to_json,
    verdict_row,
    write_fit_csv,
    write_metadata,
    write_verdict_csv,
)
from .suppression import (
    EventVerdict,
    boson_suppressed,
    classify_event,
    fermion_suppressed,
    final_distribution,
)
from .svg import bar_chart, write_verdict_svg
from .unitaries import (
    SymmetryError,
    UnitarySpec,
    build_unitary,
    fourier_symmetry,
    fourier_unitary,
)


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract says 1
        raise UsageError(message)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from exc


def cmd_decompose(args) -> int:
    perm = parse_permutation(args.permutation, n=args.modes)
    cycles = cycle_decompose(perm)
    structure = eigenstructure(perm)
    print(f"permutation: {perm.cycle_string()}")
    print("one-line:", json.dumps(list(perm.one_line())))
    print("cycles:", " ".join("(" + " ".join(map(str, c)) + ")" for c in cycles))
    print("cycle lengths:", ", ".join(str(len(c)) for c in cycles))
    print("order:", perm.order())
    print("eigenvalues:", ", ".join(str(v) for v in structure.eigenvalues))
    return 0


def cmd_build(args) -> int:
    spec = spec_from_json(_load_json(args.spec))
    built = build_unitary(spec)
    payload = {
        "unitary": matrix_to_json(built.matrix),
        "eigenvalues": [str(v) for v in built.eigenvalues],
        "spec": spec_to_json(spec),
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        json.dump(payload, sys.stdout, indent=2)
        print()
    return 0


def _verdict_rows(built, input_state, kind: ParticleType):
    u, eigenvalues = built.matrix, built.eigenvalues
    perm = built.spec.permutation
    n_particles = particle_count(input_state)
    rows = []
    fermionic = kind is ParticleType.FERMION
    for s in enumerate_outputs(perm.n, n_particles, kind):
        law_b = boson_suppressed(eigenvalues, s)
        law_f = fermion_suppressed(perm, input_state, eigenvalues, s) if fermionic else None
        p_d = prob_distinguishable(u, input_state, s)
        if kind is ParticleType.BOSON:
            p = prob_boson(u, input_state, s)
            rows.append(EventVerdict(s, final_distribution(eigenvalues, s), law_b,
                                     p_boson=p, p_dist=p_d,
                                     event_class=classify_event(law_b, p, p_d)))
        elif fermionic:
            p = prob_fermion(u, input_state, s)
            rows.append(EventVerdict(s, final_distribution(eigenvalues, s), law_b,
                                     law_suppressed_fermion=law_f, p_fermion=p, p_dist=p_d,
                                     event_class=classify_event(law_f, p, p_d)))
        else:
            rows.append(EventVerdict(s, final_distribution(eigenvalues, s), law_b,
                                     p_dist=p_d,
                                     event_class=classify_event(False, p_d, p_d)))
    return rows


def cmd_verdicts(args) -> int:
    spec = spec_from_json(_load_json(args.spec))
    input_state = parse_occupation(args.input_state)
    require_invariant(spec.permutation, input_state)
    kind = ParticleType.parse(args.type)
    if kind is ParticleType.FERMION and any(x > 1 for x in input_state):
        raise UsageError("fermionic verdicts need a singly occupied input state")
    built = build_unitary(spec)
    rows = _verdict_rows(built, input_state, kind)
    if args.out:
        write_verdict_csv(args.out, rows)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(";".join(VERDICT_COLUMNS))
        for row in rows:
            print(";".join(verdict_row(row)))
    if args.svg:
        write_verdict_svg(args.svg, rows, title=f"{kind.value} events, "
                          f"{spec.permutation.cycle_string()} r={list(input_state)}")
        print(f"wrote {args.svg}", file=sys.stderr)
    classes = {}
    for row in rows:
        classes[row.event_class.value] = classes.get(row.event_class.value, 0) + 1
    print("class counts:", json.dumps(classes, sort_keys=True), file=sys.stderr)
    return 0


def cmd_prob(args) -> int:
    u = matrix_from_json(_load_json(args.unitary))
    r = parse_occupation(args.input_state)
    s = parse_occupation(args.output_state)
    if args.type == "partial":
        if not args.distinguishability:
            raise UsageError("--type partial needs --distinguishability S.json")
        gram = matrix_from_json(_load_json(args.distinguishability))
        base = ParticleType.parse(args.partial_statistics)
        value = prob_partial(u, r, s, gram, base)
    else:
        value = transition_probability(u, r, s, ParticleType.parse(args.type))
    print(f"{value:.15f}")
    return 0


def _experiment_unitary(payload):
    """Resolve the unitary + eigenvalue diagonal for robustness configs."""
    if "fourier" in payload:
        n, m = payload["fourier"]
        perm, eigenvalues = fourier_symmetry(n, m)
        return fourier_unitary(n), eigenvalues, perm
    perm = parse_permutation(payload["permutation"], n=len(payload["input_state"]))
    built = build_unitary(UnitarySpec(perm, rotation_seed=payload.get("rotation_seed")))
    return built.matrix, built.eigenvalues, perm


def cmd_experiment(args) -> int:
    payload = _load_json(args.config)
    problems = check_experiment_config(payload)
    if problems:
        raise UsageError("invalid experiment config:\n  " + "\n  ".join(problems))
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.bases is not None:
        payload["bases"] = args.bases
    kind = payload["kind"]
    out = args.out or "experiment"

    if kind == "mean-probabilities":
        types = tuple(ParticleType.parse(t) for t in payload.get("types", ["boson", "fermion", "dist"]))
        cfg = CensusConfig(
            permutation=parse_permutation(payload["permutation"], n=len(payload["input_state"])),
            input_state=tuple(payload["input_state"]),
            num_bases=payload.get("bases", 100),
            seed=payload.get("seed", 0),
            types=types,
            workers=args.threads,
        )
        result = run_mean_probabilities(cfg)
        for kind_, rows in result.tables.items():
            write_verdict_csv(f"{out}.{kind_.value}.csv", rows)
        write_metadata(f"{out}.meta.json", result.metadata | {
            "max_suppressed": {k.value: v for k, v in result.max_suppressed.items()},
        })
        if args.svg:
            first = result.tables[types[0]]
            write_verdict_svg(args.svg, first, title=f"mean probabilities ({types[0].value})")
        print(f"wrote {out}.*.csv and {out}.meta.json", file=sys.stderr)
        return 0

    if kind == "fourier-comparison":
        comparison = run_fourier_comparison(payload["modes"], payload["order"],
                                            tuple(payload["input_state"]))
        write_verdict_csv(f"{out}.boson.csv", comparison.boson_rows)
        if comparison.fermion_rows:
            write_verdict_csv(f"{out}.fermion.csv", comparison.fermion_rows,
                              old_fermion_flags=comparison.old_fermion_flags)
        write_metadata(f"{out}.meta.json", comparison.metadata | {
            "counts": comparison.counts,
            "witnesses": [list(s) for s in comparison.witnesses],
        })
        print(f"wrote {out}.*.csv and {out}.meta.json", file=sys.stderr)
        return 0

    unitary, eigenvalues, perm = _experiment_unitary(payload)
    particle = ParticleType.parse(payload.get("particle", "boson"))
    common = dict(
        input_state=tuple(payload["input_state"]),
        target_output=tuple(payload["target_output"]),
        particle=particle,
        grid=payload["grid"],
        samples=payload.get("samples", 2000),
        seed=payload.get("seed", 0),
        permutation=perm,
    )
    if kind == "unitary-robustness":
        fit = run_unitary_robustness(
            unitary, eigenvalues,
            distribution=payload.get("delta_distribution", "ring"), **common,
        )
    else:
        fit = run_distinguishability_robustness(
            unitary, eigenvalues,
            ensemble=payload.get("ensemble", "independent"),
            eta_scale=payload.get("eta_scale", 1.0), **common,
        )
    write_fit_csv(f"{out}.csv", fit)
    write_metadata(f"{out}.meta.json", fit.metadata | {
        "exponent": fit.exponent,
        "prefactor": fit.prefactor,
        "predicted_prefactor": fit.predicted_prefactor,
        "theory_exponent": fit.theory_exponent,
    })
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(bar_chart(fit.measured, title=f"mean deviation vs noise ({kind})"))
            fh.write("\n")
    print(f"exponent={fit.exponent:.4f} prefactor={fit.prefactor:.6g} "
          f"predicted={fit.predicted_prefactor:.6g}", file=sys.stderr)
    print(f"wrote {out}.csv and {out}.meta.json", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symfock", description=__doc__)
    parser.add_argument("--version", action="version", version=f"symfock {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="cycles, order and exact eigenvalues of a permutation")
    p.add_argument("--permutation", required=True,
                   help='cycle notation "(1 2 3)(4 5)" or one-line JSON array')
    p.add_argument("--modes", type=int, default=None, help="total mode count (pads fixed points)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("build", help="construct a symmetry-adapted unitary from a spec JSON")
    p.add_argument("--spec", required=True, help="UnitarySpec JSON file")
    p.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verdicts", help="full verdict table for one input state")
    p.add_argument("--spec", required=True, help="UnitarySpec JSON file")
    p.add_argument("--input-state", required=True, help="occupation list, e.g. [1,1,0,0]")
    p.add_argument("--type", default="boson", choices=["boson", "fermion", "dist"])
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--svg", default=None, help="optional bar-chart SVG path")
    p.set_defaults(func=cmd_verdicts)

    p = sub.add_parser("prob", help="one transition probability")
    p.add_argument("--unitary", required=True, help="matrix JSON file")
    p.add_argument("--input-state", required=True)
    p.add_argument("--output-state", required=True)
    p.add_argument("--type", default="boson", choices=["boson", "fermion", "dist", "partial"])
    p.add_argument("--distinguishability", default=None,
                   help="Gram matrix JSON (required for --type partial)")
    p.add_argument("--partial-statistics", default="boson", choices=["boson", "fermion"],
                   help="underlying statistics for --type partial")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("experiment", help="run an experiment config JSON")
    p.add_argument("--config", required=True, help="ExperimentConfig JSON file")
    p.add_argument("--out", default=None, help="output path prefix")
    p.add_argument("--svg", default=None, help="optional SVG path")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--bases", type=int, default=None, help="override the eigenbasis count")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: all cores)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", "") == "experiment" and args.threads is None:
            args.threads = os.cpu_count() or 1
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SymmetryError, ArithmeticError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
