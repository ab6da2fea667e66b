"""Command-line surface for the verification workbench.

Exit codes: 0 = verified, 1 = a mathematical check failed (or the parameter
set is non-generic), 2 = usage or parse error.  With a fixed seed the JSON
reports are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .collections import (
    check_collection,
    collection_objects,
    left_mutation_step,
    object_label,
    serre_check,
    verify_generation,
)
from .hom import spectrum, twist_window
from .mf import cone, mf_to_json, reduce_mf
from .params import (
    DeformationParams,
    DuplicateRootError,
    NonzeroSumError,
    is_generic_isolated,
    params_from_roots,
)
from .rank_one import build_f_I, build_phi, build_phibar, rank1_normal_form, residue_field_stab, subset_label


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    s: tuple[Fraction, ...]
    t_check: tuple[Fraction, ...] | None
    order: tuple[int, ...] | None
    window: tuple[int, int] | None
    seed: int
    json_path: str | None
    parallel: int
    verbose: bool


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational list {text!r}: {exc}")


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}: {exc}")


def _parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return (int(lo), int(hi))
    except ValueError as exc:
        raise UsageError(f"bad window {text!r} (expected lo:hi): {exc}")


def _config_from_args(args) -> RunConfig:
    s = _parse_fraction_list(args.s)
    if len(s) < 2:
        raise UsageError("need at least two roots (--s a,b,...)")
    return RunConfig(
        s=s,
        t_check=_parse_fraction_list(args.t) if getattr(args, "t", None) else None,
        order=_parse_int_list(args.order) if getattr(args, "order", None) else None,
        window=_parse_window(args.window) if getattr(args, "window", None) else None,
        seed=args.seed,
        json_path=args.json,
        parallel=args.parallel,
        verbose=args.verbose,
    )


def _load_params(config: RunConfig) -> DeformationParams:
    params = params_from_roots(config.s)
    if config.t_check is not None:
        if tuple(config.t_check) != params.t:
            raise UsageError(
                f"--t values {list(map(str, config.t_check))} disagree with the "
                f"derived t-parameters {list(map(str, params.t))}"
            )
    return params


def _provenance(config: RunConfig, command: str, params: DeformationParams | None) -> dict:
    block = {
        "schema": 1,
        "tool": "gradedmf",
        "version": __version__,
        "command": command,
        "seed": config.seed,
        "s": [str(v) for v in config.s],
    }
    if params is not None:
        block["mu"] = params.mu
        block["h"] = params.h
        block["t"] = [str(v) for v in params.t]
        block["f"] = str(params.f)
    return block


def _emit(config: RunConfig, report: dict):
    text = json.dumps(report, indent=2)
    if config.json_path:
        with open(config.json_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    if config.verbose or not config.json_path:
        print(text)


def _default_order(params: DeformationParams) -> tuple[int, ...]:
    return tuple(range(1, params.mu + 1))


# -- commands -------------------------------------------------------------------


def cmd_check_generic(config: RunConfig) -> int:
    try:
        params = params_from_roots(config.s)
        cert = is_generic_isolated(params)
    except DuplicateRootError as exc:
        relaxed = params_from_roots(config.s, relax=True)
        cert = is_generic_isolated(relaxed)
        params = relaxed
        print(f"duplicate root: {exc}", file=sys.stderr)
    except NonzeroSumError as exc:
        raise UsageError(str(exc))
    if config.t_check is not None and tuple(config.t_check) != params.t:
        raise UsageError(
            f"--t values {list(map(str, config.t_check))} disagree with the "
            f"derived t-parameters {list(map(str, params.t))}"
        )
    print(f"f = {params.f}")
    print(f"t = [{', '.join(str(v) for v in params.t)}]")
    print(f"generic: {str(cert.is_generic).lower()}")
    print(f"certificate: {cert.describe()}")
    report = _provenance(config, "check-generic", params)
    report["result"] = {
        "generic": cert.is_generic,
        "certificate": cert.describe(),
        "agrees_with_distinctness": cert.agrees_with_distinctness,
    }
    _emit(config, report)
    return 0 if cert.is_generic else 1


def cmd_verify_collection(config: RunConfig) -> int:
    params = _load_params(config)
    order = config.order or _default_order(params)
    objects = collection_objects(params, order)
    report_obj = check_collection(
        params, objects, order=order, window=config.window, parallel=config.parallel
    )
    report = _provenance(config, "verify-collection", params)
    report["result"] = report_obj.to_json()
    _emit(config, report)
    status = "verified" if report_obj.verified else "FAILED"
    print(
        f"collection of length {len(objects)}: exceptional="
        f"{report_obj.is_exceptional_collection} strong={report_obj.is_strong} [{status}]"
    )
    if report_obj.failures:
        first = report_obj.failures[0]
        print(f"first failing pair: {first}")
    return 0 if report_obj.verified else 1


def cmd_spectrum(config: RunConfig, I, J) -> int:
    params = _load_params(config)
    F = build_f_I(params, I)
    G = build_f_I(params, J)
    spec = spectrum(params, F, G, window=config.window)
    report = _provenance(config, "spectrum", params)
    report["result"] = {
        "source": subset_label(I),
        "target": subset_label(J),
        "window": list(config.window or twist_window(params, F, G)),
        "phases": spec.to_json(),
        "dims_by_twist": [[n, d] for n, d in spec.by_twist],
    }
    _emit(config, report)
    print(f"spectrum {subset_label(I)} -> {subset_label(J)}: [{', '.join(spec.to_json())}]")
    return 0


def cmd_cone(config: RunConfig, I, J) -> int:
    params = _load_params(config)
    set_i, set_j = frozenset(I), frozenset(J)
    if set_i < set_j:
        phi = build_phi(params, set_i, set_j)
        kind = "inclusion"
    elif set_j < set_i:
        phi = build_phibar(params, set_i, set_j)
        kind = "projection"
    else:
        raise UsageError("--I and --J must be strictly nested one way or the other")
    reduced, stripped = reduce_mf(cone(phi))
    nf = rank1_normal_form(params, reduced)
    report = _provenance(config, "cone", params)
    report["result"] = {
        "morphism": kind,
        "I": sorted(set_i),
        "J": sorted(set_j),
        "stripped": stripped,
        "normal_form": {"subset": sorted(nf[0]), "twist": nf[1]},
        "object": mf_to_json(reduced),
    }
    _emit(config, report)
    print(f"cone({kind} {subset_label(set_i)} -> {subset_label(set_j)}) = {subset_label(*nf)}")
    return 0


def cmd_mutate(config: RunConfig, e_index: int, x_index: int) -> int:
    params = _load_params(config)
    order = config.order or _default_order(params)
    objects = collection_objects(params, order)
    if not (1 <= e_index <= len(objects) and 1 <= x_index <= len(objects)):
        raise UsageError(f"indices must lie in 1..{len(objects)}")
    result = left_mutation_step(params, objects[e_index - 1], objects[x_index - 1])
    report = _provenance(config, "mutate", params)
    report["result"] = {
        "across": e_index,
        "of": x_index,
        "label": object_label(params, result),
        "object": mf_to_json(result),
    }
    _emit(config, report)
    print(f"L_(E{e_index}) E{x_index} = {object_label(params, result)}")
    return 0


def cmd_serre(config: RunConfig, i: int) -> int:
    params = _load_params(config)
    order = config.order or _default_order(params)
    pre = check_collection(params, collection_objects(params, order), order=order,
                           window=config.window, parallel=config.parallel)
    if not pre.verified:
        print("collection is not strongly exceptional; aborting", file=sys.stderr)
        return 1
    result = serre_check(params, order, i, seed=config.seed)
    report = _provenance(config, "serre", params)
    report["result"] = {
        "i": i,
        "holds": result.holds,
        "verdict": result.verdict.status,
        "reason": result.verdict.reason,
        "chain": [object_label(params, obj) for obj in result.chain],
        "result": object_label(params, result.result),
        "expected": object_label(params, result.expected),
    }
    _emit(config, report)
    if result.holds:
        print(f"iso: tau^{params.mu - 1} E{i}")
    else:
        print(f"serre comparison failed for E{i}: {result.verdict.reason}")
    return 0 if result.holds else 1


def cmd_generation(config: RunConfig) -> int:
    params = _load_params(config)
    order = config.order or _default_order(params)
    report_obj = verify_generation(params, order, seed=config.seed)
    report = _provenance(config, "generation", params)
    report["result"] = report_obj.to_json()
    _emit(config, report)
    for line in report_obj.lines:
        status = "pass" if line.passed else "FAIL"
        print(f"[{status}] {line.line_id}: {line.description}")
    print(f"generation replay: {'all lines pass' if report_obj.all_passed else 'FAILURES'}")
    return 0 if report_obj.all_passed else 1


def cmd_stab(config: RunConfig, i: int) -> int:
    params = _load_params(config)
    from .collections import iso_equivalent

    rfs = residue_field_stab(params, i)
    verdict = iso_equivalent(params, rfs.stab, rfs.comparison, seed=config.seed)
    ok = rfs.cone_matches_expected_form and verdict.status == "iso"
    report = _provenance(config, "stab", params)
    report["result"] = {
        "i": i,
        "cone_matches_expected_form": rfs.cone_matches_expected_form,
        "iso": verdict.status,
        "stab": mf_to_json(rfs.stab),
        "comparison": mf_to_json(rfs.comparison),
    }
    _emit(config, report)
    print(f"residue-field stabilization vs cone comparison: {verdict.status}")
    return 0 if ok else 1


# -- argument wiring ---------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--s", required=True, help="roots, e.g. 1,0,-1 (rationals p/q allowed)")
    parser.add_argument("--t", help="optional t-values cross-checked against the roots")
    parser.add_argument("--order", help="collection order, e.g. 1,2")
    parser.add_argument("--window", help="twist window override lo:hi")
    parser.add_argument("--seed", type=int, default=0, help="seed for isomorphism certificates")
    parser.add_argument("--json", help="write the JSON report to this path")
    parser.add_argument("--parallel", type=int, default=1, help="worker threads for pair scans")
    parser.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedmf",
        description="exact checks for graded matrix factorizations of prod(x + s_i q)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-generic", help="genericity / isolated-singularity test")
    _add_common(p)

    p = sub.add_parser("verify-collection", help="strong exceptional collection check")
    _add_common(p)

    p = sub.add_parser("spectrum", help="phase spectrum of a pair of rank-one objects")
    _add_common(p)
    p.add_argument("--I", required=True, help="source subset, e.g. 1")
    p.add_argument("--J", required=True, help="target subset, e.g. 1,2")

    p = sub.add_parser("cone", help="reduced cone of the canonical morphism F_I -> F_J")
    _add_common(p)
    p.add_argument("--I", required=True)
    p.add_argument("--J", required=True)

    p = sub.add_parser("mutate", help="left mutation of one collection object across another")
    _add_common(p)
    p.add_argument("--e", type=int, required=True, help="index of the object mutated across")
    p.add_argument("--x", type=int, required=True, help="index of the object being mutated")

    p = sub.add_parser("serre", help="mutation-chain Serre comparison for E_i")
    _add_common(p)
    p.add_argument("--i", type=int, required=True)

    p = sub.add_parser("generation", help="replay the generation triangles")
    _add_common(p)

    p = sub.add_parser("stab", help="residue-field stabilization comparison")
    _add_common(p)
    p.add_argument("--i", type=int, default=1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "check-generic":
            return cmd_check_generic(config)
        if args.command == "verify-collection":
            return cmd_verify_collection(config)
        if args.command == "spectrum":
            return cmd_spectrum(config, _parse_int_list(args.I), _parse_int_list(args.J))
        if args.command == "cone":
            return cmd_cone(config, _parse_int_list(args.I), _parse_int_list(args.J))
        if args.command == "mutate":
            return cmd_mutate(config, args.e, args.x)
        if args.command == "serre":
            return cmd_serre(config, args.i)
        if args.command == "generation":
            return cmd_generation(config)
        if args.command == "stab":
            return cmd_stab(config, args.i)
        raise UsageError(f"unknown command {args.command}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (DuplicateRootError, NonzeroSumError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 1
    except (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
