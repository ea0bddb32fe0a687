"""Command-line entry point: ``infothresh <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import bounds, converse
from .channels import KINDS, ChannelSpec, apply
from .experiments import ESTIMATORS, ExperimentConfig, learn, run_error_rate
from .information import LN2
from .io import format_dataset, load_model, model_from_dict, parse_dataset
from .model import sample, validate
from .thresholds import METHODS, information_threshold, noisy_information_threshold
from .tree import SHAPES


def _delim(args) -> str:
    return "\t" if args.format == "tsv" else ","


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _add_model_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model (a TOML file, or a binary model built from flags)")
    g.add_argument("--model", type=Path, help="model TOML document")
    g.add_argument("--shape", choices=SHAPES, default="chain")
    g.add_argument("--nodes", "-p", type=int, default=3, help="node count for --shape")
    g.add_argument("--rho", type=_floats, default=[0.5],
                   help="edge correlations, one value or comma-separated per edge")
    g.add_argument("--tree-seed", type=int, default=None)


def _add_channel_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--channel", choices=KINDS, default=None)
    p.add_argument("--q", type=_floats, default=[0.0], help="channel parameter, scalar or per node")


def _model(args):
    if args.model is not None:
        return load_model(args.model)
    rho = args.rho if len(args.rho) > 1 else args.rho[0]
    return model_from_dict({"shape": args.shape, "p": args.nodes, "correlations": rho,
                            "tree_seed": args.tree_seed})


def _channel(args, p: int):
    if args.channel is None:
        return None
    return ChannelSpec.from_name(args.channel, args.q if len(args.q) > 1 else args.q[0], p)


def cmd_sample(args) -> int:
    model = _model(args)
    data = sample(model, args.n, args.seed)
    channel = _channel(args, model.p)
    if channel is not None:
        data = apply(channel, data, None if args.seed is None else args.seed + 1, symbols=model.symbols)
    text = format_dataset(data, _delim(args))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_learn(args) -> int:
    text = Path(args.dataset).read_text() if args.dataset != "-" else sys.stdin.read()
    data = parse_dataset(text)
    channel = ChannelSpec.bsc(args.q if len(args.q) > 1 else args.q[0], data.shape[1]) \
        if args.estimator == "corrected_correlation" else None
    tree = learn(data, args.estimator, channel)
    w = _delim(args)
    print(w.join(("i", "j")))
    for i, j in tree.edges:
        print(w.join((str(i), str(j))))
    return 0


def cmd_threshold(args) -> int:
    model = _model(args)
    rep = information_threshold(model, args.method)
    (e, u, v) = rep.argmin
    print(f"threshold_bits: {rep.value!r}")
    print(f"argmin: edge={e} pair={(u, v)}")
    print(f"method: {rep.method}")
    channel = _channel(args, model.p)
    if channel is not None:
        nrep = noisy_information_threshold(model, channel, "brute_force")
        ne, nu, nv = nrep.argmin
        verdict = "positive (consistent)" if nrep.value > 0 else "non-positive (raw Chow-Liu fails asymptotically)"
        print(f"noisy_threshold_bits: {nrep.value!r}")
        print(f"noisy_argmin: edge={ne} pair={(nu, nv)}")
        print(f"noisy_sign: {verdict}")
    return 0


def cmd_bound(args) -> int:
    tail = None
    if args.c is not None:
        tail = bounds.TailParams(args.c, args.c1, args.c2)
    query = bounds.BoundQuery(args.threshold, args.nodes, args.delta, args.regime, tail, args.C, args.form)
    res = bounds.sufficient_n(query)
    print(f"regime: {args.regime}")
    print(f"form: {args.form}")
    print(f"C: {query.constant!r}")
    print("logs: natural in the union-bound term, base 2 in n / log2(n)^2")
    if not res.feasible:
        print(f"n: infeasible ({res.reason})")
        return 0
    r = res.residuals
    print(f"n: {res.n}")
    print(f"side_residual: {r.side!r}")
    print(f"sample_residual: {r.sample!r}")
    for form in bounds.FORMS:
        fb = bounds.failure_probability_bound(res.n, query, form=form)
        print(f"failure_bound_{form}: {fb.value!r} vacuous={fb.vacuous}")
    return 0


def cmd_converse(args) -> int:
    fam = converse.binary_fano_family(args.nodes, args.rho_a, args.rho_b, args.ell)
    w = _delim(args)
    print(f"family: p={fam.p} M={fam.M} ell={fam.ell} models={len(fam.models)}")
    for i, m in fam.models.items():
        print(f"M{i}: edges={list(m.tree.edges)}")
    print(w.join(("i", "kl_M0_Mi_nats", "kl_Mi_M0_nats", "closed_M0_Mi", "closed_Mi_M0")))
    m0 = fam.models[0]
    for i in fam.indices:
        cf, cb = converse.kl_closed_forms(fam, i)
        try:
            ef = converse.kl_between_models(m0, fam.models[i])
            eb = converse.kl_between_models(fam.models[i], m0)
        except converse.CapacityError:
            ef = eb = float("nan")
        print(w.join(str(x) for x in (i, repr(ef), repr(eb), repr(cf), repr(cb))))
    print(w.join(("model", "threshold_nats")))
    print(w.join(("M0", repr(float(information_threshold(m0).value * LN2)))))
    for i in fam.indices:
        print(w.join((f"M{i}", repr(float(information_threshold(fam.models[i]).value * LN2)))))
    if args.eta is not None:
        print(f"fano_sample_bound: {converse.fano_sample_bound(args.nodes, args.eta)}")
    return 0


def cmd_experiment(args) -> int:
    config = ExperimentConfig.load(args.config)
    if args.seed is not None:
        config = replace(config, master_seed=args.seed)
    curve = run_error_rate(config, threads=args.threads)
    text = curve.to_csv(_delim(args))
    out = args.out or config.output
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    model = _model(args)
    rep = validate(model)
    print(rep)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infothresh", description=__doc__)
    parser.add_argument("--seed", type=int, default=None, help="random seed")
    parser.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    parser.add_argument("--format", choices=("csv", "tsv"), default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a dataset from a model")
    _add_model_args(p)
    _add_channel_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("learn", help="Chow-Liu tree of a dataset")
    p.add_argument("dataset", help="CSV/TSV file, or - for stdin")
    p.add_argument("--estimator", choices=ESTIMATORS, default="plugin_mi")
    p.add_argument("--q", type=_floats, default=[0.0], help="flip probabilities for corrected_correlation")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("threshold", help="exact (noisy) information threshold")
    _add_model_args(p)
    _add_channel_args(p)
    p.add_argument("--method", choices=METHODS, default="local")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("bound", help="sufficient sample size")
    p.add_argument("--regime", choices=bounds.REGIMES, default="finite_alphabet")
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--nodes", "-p", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--C", type=float, default=None, help="explicit bias constant")
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("--form", choices=bounds.FORMS, default="theorem")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("converse", help="Fano model family summary")
    p.add_argument("--nodes", "-p", type=int, default=5)
    p.add_argument("--rho-a", type=float, default=0.6)
    p.add_argument("--rho-b", type=float, default=0.3)
    p.add_argument("--ell", type=float, default=0)
    p.add_argument("--eta", type=float, default=None)
    p.set_defaults(func=cmd_converse)

    p = sub.add_parser("experiment", help="Monte Carlo error curve from a TOML config")
    p.add_argument("config", type=Path)
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("validate", help="check model assumptions")
    _add_model_args(p)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
