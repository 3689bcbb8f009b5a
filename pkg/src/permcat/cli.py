"""Command line interface.

Subcommands: validate, free, endo, tensor-s, check-s, check-adjunction,
check-ring.  Exit codes: 0 all checks pass, 1 axiom violations, 2 input
error.  ``--report`` writes the structured report as canonical JSON; the
summary on stdout is deterministic.
"""
from __future__ import annotations

import argparse
import itertools
import sys

from .documents import DocumentError, dumps, parse_document
from .endo import basepoint_check, endo_multicat
from .errors import BoundExceededError, MalformedStructureError
from .free import FreePermCat, free_hom, free_on_multifunctor
from .multicat import Multifunctor, identity_multifunctor, terminal_multicat, validate_multicat
from .permcats import validate_nlinear, validate_permcat
from .perms import Profile
from .reports import CheckReport
from .rings import (
    validate_bipermutative,
    validate_braided_ring,
    validate_en_monoidal,
    validate_nfold_monoidal,
    validate_ring_category,
)
from .permcats import identity_smf
from .tensor import (
    s_constraint_map,
    s_functor,
    s_morphism,
    s_object,
    tensor_grid,
    tensor_of_multifunctors,
)
from .transforms import (
    check_epsilon_square_strict,
    check_eta_multifunctor,
    check_eta_square,
    check_rho_mark_square,
    check_triangles,
    epsilon_counterexample,
    mark_category,
)

RING_VALIDATORS = {
    "ring": validate_ring_category,
    "biperm": validate_bipermutative,
    "braided": validate_braided_ring,
    "nfold": validate_nfold_monoidal,
    "en": validate_en_monoidal,
}


def _read(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_document(handle.read())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}")


def _profile(text: str) -> Profile:
    return tuple(part for part in text.split(",") if part != "")


def _emit(report: CheckReport, out_path: str | None) -> int:
    print(report.summary())
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(dumps(report.as_json()))
    return 0 if report.passed else 1


def cmd_validate(args) -> int:
    kind, structure = _read(args.document)
    if kind == "multicat":
        report = validate_multicat(structure, max_arity=min(
            args.max_arity, structure.max_arity))
    elif kind == "permcat":
        report = validate_permcat(structure)
    elif kind in RING_VALIDATORS:
        report = RING_VALIDATORS[kind](structure)
    else:
        raise DocumentError(f"validate does not support kind {kind!r}")
    return _emit(report, args.report)


def cmd_free(args) -> int:
    kind, M = _read(args.document)
    if kind != "multicat":
        raise DocumentError("free needs a multicat document")
    F = FreePermCat(M, partial_homs=False)
    if args.hom:
        src, tgt = (_profile(args.hom[0]), _profile(args.hom[1]))
        try:
            morphisms = free_hom(M, src, tgt)
        except BoundExceededError as exc:
            raise DocumentError(str(exc))
        print(f"hom({','.join(src) or '()'} -> {','.join(tgt) or '()'}): "
              f"{len(morphisms)} morphisms")
        payload = []
        for mor in morphisms:
            payload.append({"index_map": {"domain": mor.index_map.domain,
                                          "codomain": mor.index_map.codomain,
                                          "images": list(mor.index_map.images)},
                            "operations": [str(op) for op in mor.ops]})
            print(f"  index map {list(mor.index_map.images)} "
                  f"operations {[str(op) for op in mor.ops]}")
        if args.report:
            with open(args.report, "w", encoding="utf-8") as handle:
                handle.write(dumps({"hom": payload,
                                    "source": list(src), "target": list(tgt)}))
        return 0
    window = F.enumerate_objects(args.max_len)
    small = F.enumerate_objects(min(args.max_len, 2))
    report = validate_permcat(F, objects=window, interchange_objects=small)
    return _emit(report, args.report)


def cmd_endo(args) -> int:
    kind, C = _read(args.document)
    if kind != "permcat":
        raise DocumentError("endo needs a permcat document")
    E = endo_multicat(C)
    if args.ops:
        target, profile = args.ops[0], _profile(args.ops[1])
        ops = E.ops(target, profile)
        print(f"operations({target}; {','.join(profile) or '()'}): {len(ops)}")
        for op in ops:
            print(f"  {op.mor}")
        if args.report:
            with open(args.report, "w", encoding="utf-8") as handle:
                handle.write(dumps({"target": target, "profile": list(profile),
                                    "operations": [str(op.mor) for op in ops]}))
        return 0
    report = validate_multicat(E, max_arity=args.max_arity)
    report = report.merged(basepoint_check(C, max_arity=args.max_arity))
    return _emit(report, args.report)


def _load_factors(paths) -> tuple:
    factors = []
    for path in paths:
        kind, M = _read(path)
        if kind != "multicat":
            raise DocumentError(f"{path}: tensor factors must be multicat documents")
        factors.append(M)
    return tuple(factors)


def cmd_tensor_s(args) -> int:
    Ms = _load_factors(args.documents)
    payload = {}
    if args.objects:
        if len(args.objects) != len(Ms):
            raise DocumentError("one --objects profile per factor document is needed")
        xs = tuple(_profile(p) for p in args.objects)
        image = s_object(Ms, xs)
        print(f"S{tuple(','.join(x) or '()' for x in xs)} = {list(image)}")
        payload["object_image"] = [list(map(str, cell)) if isinstance(cell, tuple)
                                   else str(cell) for cell in image]
        if args.constraint:
            b = int(args.constraint[0])
            hat = _profile(args.constraint[1])
            rho_map = s_constraint_map(b, tuple(len(x) for x in xs), len(hat))
            print(f"constraint {b} index map: {list(rho_map.images)}")
            payload["constraint_index_map"] = list(rho_map.images)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(dumps(payload))
    return 0


def cmd_check_s(args) -> int:
    Ms = _load_factors(args.documents)
    report = CheckReport("comparison-functor-suite")
    S = s_functor(Ms)
    frees = [FreePermCat(M, partial_homs=True) for M in Ms]
    windows = [F.enumerate_objects(args.max_len) for F in frees]
    homs = [{(a, b): F.hom(a, b) for a in w for b in w}
            for F, w in zip(frees, windows)]

    target = FreePermCat(tensor_grid(Ms))
    for xs in itertools.product(*windows):
        ids = tuple(F.identity(x) for F, x in zip(frees, xs))
        report.expect("preserves-identities",
                      S.on_mor(ids), target.identity(S.on_obj(xs)), ("id", xs))
    mor_lists = [[m for pair, ms in h.items() for m in ms] for h in homs]
    for fs in itertools.product(*mor_lists):
        for gs in itertools.product(*mor_lists):
            if any(g.source != f.target for f, g in zip(fs, gs)):
                continue
            try:
                lhs = S.on_mor(tuple(F.compose(g, f)
                                     for F, f, g in zip(frees, fs, gs)))
                rhs = target.compose(S.on_mor(gs), S.on_mor(fs))
            except BoundExceededError:
                continue
            report.expect("preserves-composition", lhs, rhs, (fs, gs))

    sub = validate_nlinear(S, objects=windows)
    report = report.merged(sub)
    if "classification" in sub.metadata:
        report.metadata["classification"] = sub.metadata["classification"]

    bound = max((M.max_arity or 2) for M in Ms)
    collapse_target = terminal_multicat(max(bound * len(Ms), 4))
    for label, Hs in [
            ("identities", tuple(identity_multifunctor(M) for M in Ms)),
            ("collapses", tuple(
                Multifunctor(M, collapse_target, lambda c: "*",
                             lambda op, M=M: f"i{len(M.profile_of(op))}")
                for M in Ms))]:
        tensor_H = tensor_of_multifunctors(Hs)
        F_tensor = free_on_multifunctor(tensor_H)
        FHs = [free_on_multifunctor(H) for H in Hs]
        Ns = tuple(H.target for H in Hs)
        for xs in itertools.product(*(w[:6] for w in windows)):
            lhs = s_object(Ns, tuple(FH.on_obj(x) for FH, x in zip(FHs, xs)))
            rhs = tuple(tensor_H.on_obj(c) for c in s_object(Ms, xs))
            report.expect("two-naturality", lhs, rhs, (label, xs))
        for fs in itertools.product(*(ms[:8] for ms in mor_lists)):
            lhs = s_morphism(Ns, tuple(FH.on_mor(f) for FH, f in zip(FHs, fs)))
            rhs = F_tensor.on_mor(s_morphism(Ms, fs))
            report.expect("two-naturality", lhs, rhs, (label, fs))
    return _emit(report, args.report)


def cmd_check_adjunction(args) -> int:
    kind_m, M = _read(args.multicat)
    if kind_m != "multicat":
        raise DocumentError("check-adjunction needs a multicat document first")
    kind_c, C = _read(args.permcat)
    if kind_c != "permcat":
        raise DocumentError("check-adjunction needs a permcat document second")
    report = check_eta_multifunctor(M, args.max_arity)
    report.structure = "adjunction-fragment-suite"
    grid = tensor_grid((M, M))
    bound = (M.max_arity or args.max_arity) * 2
    H = Multifunctor(grid, terminal_multicat(max(bound, 4)), lambda c: "*",
                     lambda op: f"i{grid.arity_of(op)}")
    report = report.merged(check_eta_square(H, (M, M),
                                            max_arity=min(args.max_arity, 2)))
    report = report.merged(check_triangles(M, C, max_len=args.max_len,
                                           max_arity=args.max_arity))
    witness = epsilon_counterexample()
    counter = CheckReport("counit-non-naturality")
    counter.expect("witness-found", witness.commutes, False, "bilinear sign fixture")
    report = report.merged(counter)
    report = report.merged(check_epsilon_square_strict())
    marked = mark_category(C)
    report = report.merged(validate_permcat(marked.category))
    report = report.merged(check_rho_mark_square_for(C))
    return _emit(report, args.report)


def check_rho_mark_square_for(C) -> CheckReport:
    return check_rho_mark_square(identity_smf(C))


def cmd_check_ring(args) -> int:
    kind, structure = _read(args.document)
    if kind != args.level:
        raise DocumentError(f"--level {args.level} needs a {args.level!r} document, "
                            f"got {kind!r}")
    report = RING_VALIDATORS[args.level](structure)
    return _emit(report, args.report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permcat",
        description="Validate finite multicategories and permutative "
                    "categories, and machine-check the free/endomorphism "
                    "comparison structure.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a structure document")
    p.add_argument("document")
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("free", help="free permutative category checks and homs")
    p.add_argument("document")
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--hom", nargs=2, metavar=("SRC", "TGT"),
                   help="comma-separated object profiles; empty for the unit")
    p.add_argument("--report")
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("endo", help="endomorphism multicategory checks")
    p.add_argument("document")
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--ops", nargs=2, metavar=("TARGET", "PROFILE"))
    p.add_argument("--report")
    p.set_defaults(func=cmd_endo)

    p = sub.add_parser("tensor-s", help="comparison functor images")
    p.add_argument("documents", nargs="+")
    p.add_argument("--objects", nargs="+", metavar="PROFILE")
    p.add_argument("--constraint", nargs=2, metavar=("B", "HAT_PROFILE"))
    p.add_argument("--report")
    p.set_defaults(func=cmd_tensor_s)

    p = sub.add_parser("check-s", help="comparison functor coherence suite")
    p.add_argument("documents", nargs="+")
    p.add_argument("--max-len", type=int, default=2)
    p.add_argument("--report")
    p.set_defaults(func=cmd_check_s)

    p = sub.add_parser("check-adjunction", help="unit/counit comparison suite")
    p.add_argument("multicat")
    p.add_argument("permcat")
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--report")
    p.set_defaults(func=cmd_check_adjunction)

    p = sub.add_parser("check-ring", help="ring-like structure validation")
    p.add_argument("document")
    p.add_argument("--level", choices=sorted(RING_VALIDATORS), required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_check_ring)
    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MalformedStructureError, BoundExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
