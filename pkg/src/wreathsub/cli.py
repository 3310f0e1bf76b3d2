"""Command-line interface.

    wreathsub check PROBLEM
    wreathsub ns basis|verify PROBLEM
    wreathsub ns rewrite PROBLEM WORD
    wreathsub kurosh system|decompose|verify PROBLEM
    wreathsub kurosh rewrite PROBLEM WORD
    wreathsub embed PROBLEM WORD

Exit status: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from . import kurosh as ku
from . import schreier as sc
from .action import FREE_GROUP, FREE_PRODUCT, Problem, build_coset_space, load_problem
from .errors import InputError, WrongKind
from .fingrp import Caps, symmetric_group
from .reporting import all_passed, check, render_report
from .sampling import MAX_SEED, make_rng
from .wreath import standard_embed

log = logging.getLogger("wreathsub")

COMMANDS = {
    ("check",): 0,
    ("ns", "basis"): 0,
    ("ns", "rewrite"): 1,
    ("ns", "verify"): 0,
    ("kurosh", "system"): 0,
    ("kurosh", "decompose"): 0,
    ("kurosh", "rewrite"): 1,
    ("kurosh", "verify"): 0,
    ("embed",): 1,
}

# targets used by the verify commands
VERIFY_TARGET_DEGREES = (2, 3)


@dataclass(frozen=True)
class Config:
    caps: Caps = field(default_factory=Caps)
    seed: int = 0
    format: str = "json"
    alpha0: Optional[int] = None
    samples: int = 200
    figures: Optional[str] = None


def parse_problem(path) -> Problem:
    try:
        return load_problem(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}")


def _need(problem: Problem, kind: str, command: str):
    if problem.kind != kind:
        raise WrongKind(f"'{command}' needs a {kind} problem, got {problem.kind}")


def _prefixed(prefix, checks):
    return [dict(c, name=f"{prefix}/{c['name']}") for c in checks]


def _trial_seeds(seed: int, count: int):
    rng = make_rng(seed)
    return [rng.randrange(MAX_SEED + 1) for _ in range(count)]


def dispatch(command: Sequence[str], problem: Problem, config: Config = Config(),
             word: Optional[str] = None) -> Tuple[int, dict]:
    command = tuple(command)
    if command not in COMMANDS:
        raise InputError(f"unknown command {' '.join(command)!r}")
    name = " ".join(command)
    cs = build_coset_space(problem, config.caps)

    if command == ("check",):
        report = {
            "kind": problem.kind,
            "group_order": cs.Q.order,
            "subgroup_order": cs.S.order,
            "index": cs.size,
            "checks": [check("problem_valid", True),
                       check("index_is_order_ratio", cs.size * cs.S.order == cs.Q.order)],
        }
        return 0, report

    if command[0] == "ns":
        _need(problem, FREE_GROUP, name)
        T = sc.build_transversal(cs)
        B = sc.schreier_basis(cs, T)
        if config.figures:
            for p in _figures(cs, config.figures, "ns", T.reps):
                log.info("wrote %s", p)
        if command[1] == "basis":
            report = sc.basis_report(cs, T, B)
        elif command[1] == "rewrite":
            h = cs.group.parse(word)
            tokens = sc.schreier_rewrite(cs, T, B, h)
            back = sc.evaluate_tokens(cs, B, tokens)
            fmt = cs.group.format
            report = {
                "word": fmt(h),
                "tokens": [{"token": f"b{k}" + ("" if s > 0 else "^-1"), "basis": k, "sign": s,
                            "word": fmt(B.elements[k].word)} for k, s in tokens],
                "evaluates_to": fmt(back),
                "checks": [check("round_trip", back == h)],
            }
        else:
            checks = sc.basis_checks(cs, T, B)
            for deg, trial in zip(VERIFY_TARGET_DEGREES, _trial_seeds(config.seed, len(VERIFY_TARGET_DEGREES))):
                K = symmetric_group(deg)
                rng = make_rng(trial)
                alpha = [K.elements[rng.randrange(K.order)] for _ in B]
                sub = sc.verify_ns_universal(cs, T, B, K, alpha, config.samples, trial)
                checks += _prefixed(f"K=S{deg}", sub["checks"])
            report = sc.basis_report(cs, T, B, checks)
        return (0 if all_passed(report) else 1), report

    if command[0] == "kurosh":
        _need(problem, FREE_PRODUCT, name)
        alpha0 = config.alpha0 or 0
        m = ku.syllable_metrics(cs)
        ks = ku.build_kurosh_system(cs, m, alpha0)
        yz = ku.yz_elements(cs, ks)
        dec = ku.decompose(cs, ks, yz)
        if config.figures:
            for p in _figures(cs, config.figures, "kurosh", ks.T[alpha0], m.coset_len):
                log.info("wrote %s", p)
        if command[1] == "system":
            report = ku.system_report(cs, ks, m)
        elif command[1] == "decompose":
            report = ku.decomposition_report(cs, ks, yz, dec)
        elif command[1] == "rewrite":
            h = cs.group.parse(word)
            report = ku.rewrite_report(cs, dec, h, ku.kurosh_rewrite(cs, ks, yz, dec, h))
        else:
            checks = (ku.check_kurosh_axioms(cs, ks, m) + ku.yz_checks(cs, ks, yz)
                      + ku.decomposition_checks(cs, ks, yz, dec))
            seeds = _trial_seeds(config.seed, len(VERIFY_TARGET_DEGREES) + 1)
            checks += _prefixed("K=H", ku.verify_identity_instantiation(
                cs, ks, yz, dec, max(1, config.samples // 2), seeds[0]))
            for deg, trial in zip(VERIFY_TARGET_DEGREES, seeds[1:]):
                K = symmetric_group(deg)
                rng = make_rng(trial)
                fmaps = ku.random_factor_maps(cs, dec, K, rng, config.caps.hom_limit)
                zmap = ku.random_z_map(dec, K, rng)
                checks += _prefixed(f"K=S{deg}", ku.verify_kurosh_universal(
                    cs, ks, yz, dec, K, fmaps, zmap, config.samples, trial))
            report = ku.decomposition_report(cs, ks, yz, dec, checks)
        return (0 if all_passed(report) else 1), report

    # embed
    g = cs.group.parse(word)
    if problem.kind == FREE_GROUP:
        T = sc.build_transversal(cs).reps
    else:
        T = ku.build_kurosh_system(cs, alpha0=config.alpha0 or 0).T[config.alpha0 or 0]
    element = standard_embed(cs, T, g)
    report = {"word": cs.group.format(g), **element.to_dict(cs.group)}
    return 0, report


def _figures(cs, outdir, stem, reps, lengths=None):
    from .plotting import write_figures

    return write_figures(cs, outdir, stem, reps, lengths)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="unsigned 64-bit seed (default 0)")
    common.add_argument("--samples", type=int, default=argparse.SUPPRESS,
                        help="sampled pairs for verify commands (default 200)")
    common.add_argument("--alpha0", type=int, default=argparse.SUPPRESS, help="base factor index (default 0)")
    common.add_argument("--max-group-order", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-index", type=int, default=argparse.SUPPRESS)
    common.add_argument("--figures", metavar="DIR", default=argparse.SUPPRESS,
                        help="also write coset-graph figures (PNG) into DIR")

    parser = argparse.ArgumentParser(prog="wreathsub", parents=[common],
                                     description="Subgroups of free groups and free products via wreath products.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="validate a problem file")
    p.add_argument("problem")
    for group, subs in (("ns", ("basis", "rewrite", "verify")),
                        ("kurosh", ("system", "decompose", "rewrite", "verify"))):
        gp = sub.add_parser(group, parents=[common])
        gsub = gp.add_subparsers(dest="action", required=True)
        for s in subs:
            sp = gsub.add_parser(s, parents=[common])
            sp.add_argument("problem")
            if s == "rewrite":
                sp.add_argument("word", help="word in token syntax, quoted as one argument")
    p = sub.add_parser("embed", parents=[common], help="standard embedding of a word")
    p.add_argument("problem")
    p.add_argument("word")
    return parser


def config_from_args(args) -> Config:
    caps = Caps(max_group_order=getattr(args, "max_group_order", Caps.max_group_order),
                max_index=getattr(args, "max_index", Caps.max_index))
    seed = getattr(args, "seed", 0)
    if not 0 <= seed <= MAX_SEED:
        raise InputError("--seed must be an unsigned 64-bit integer")
    samples = getattr(args, "samples", 200)
    if samples < 1:
        raise InputError("--samples must be positive")
    return Config(caps, seed, getattr(args, "format", "json"), getattr(args, "alpha0", None),
                  samples, getattr(args, "figures", None))


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    command = (args.command,) if args.command in ("check", "embed") else (args.command, args.action)
    try:
        config = config_from_args(args)
        problem = parse_problem(args.problem)
        code, report = dispatch(command, problem, config, getattr(args, "word", None))
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(report, config.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
