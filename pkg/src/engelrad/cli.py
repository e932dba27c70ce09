"""Command-line front end: ``engelrad <noun> <verb> [options]``.

Exit codes: 0 when every requested check passed, 1 when a check failed or an
experimental claim was falsified, 2 on input or usage errors.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import liealg, words
from .catalog import GROUP_NAMES, builtin_group, builtin_lie, export_text, ingest, lie_names
from .errors import EngelradError
from .exactfield import parse_field
from .fingroup import (FiniteGroup, conjugation_automorphism, cr_report, engel_automorphism_test,
                       engel_like_set, fitting_subgroup, identity_automorphism, identity_holds, parse_cycles,
                       solvable_radical, swap_automorphism)
from .report import Report, Timer
from .verify import SUITES, verify_suite


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, model: bool = True):
    if model:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--builtin", help="builtin model name, e.g. sl2, witt:7, sym:4, alt:5*alt:5")
        src.add_argument("--file", help="JSON model file")
        p.add_argument("--field", help="field for builtin Lie algebras: Q, GF(p) or GF(p,[c0,...,ck])")
    p.add_argument("--seq", help="sequence id or alias (e, u, s, w, v, r)")
    p.add_argument("--n", type=int, help="sequence index")
    p.add_argument("--max-iter", type=int, default=50, help="iteration bound (default 50)")
    p.add_argument("--strategy", choices=["full", "class-reps"], default="class-reps")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--conj-convention", choices=["left", "right"], default="right")
    p.add_argument("--reproducible", action="store_true", help="report millis as 0 so output is byte-stable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="engelrad", description="Engel-like characterizations of radicals.")
    nouns = parser.add_subparsers(dest="noun", metavar="noun")

    word = nouns.add_parser("word", help="sequences of words").add_subparsers(dest="verb", metavar="verb")
    for verb, hlp in (("generate", "print the n-th term"), ("check", "correctness and autocorrectness")):
        _common(word.add_parser(verb, help=hlp), model=False)

    lie = nouns.add_parser("lie", help="Lie algebras").add_subparsers(dest="verb", metavar="verb")
    for verb, hlp in (("info", "dimension, series and radicals"), ("identity", "is u_n an identity"),
                      ("engel", "Engel test of one element"), ("engel-set", "all Engel elements (finite fields)"),
                      ("vanishes", "u_n(x, y) = 0 for every x (finite fields)")):
        p = lie.add_parser(verb, help=hlp)
        _common(p)
        p.add_argument("--y", help="element, e.g. 'e_+' or 'e+e_2' or '[1,0,2]'")
        p.add_argument("--kind", choices=liealg.KINDS, default="v")
        p.add_argument("--method", choices=["auto", "symbolic", "numeric"], default="auto")

    grp = nouns.add_parser("group", help="finite groups").add_subparsers(dest="verb", metavar="verb")
    for verb, hlp in (("info", "order, classes and radicals"), ("identity", "is u_n an identity"),
                      ("engel-set", "all u-Engel elements"), ("cr", "CR-radical and isotypic components"),
                      ("aut-engel", "Engel test of an automorphism")):
        p = grp.add_parser(verb, help=hlp)
        _common(p)
        p.add_argument("--compare", choices=["fitting", "radical"])
        p.add_argument("--aut", default="id", help="id, swap, or conj:<cycles> such as 'conj:(1 2)'")

    cat = nouns.add_parser("catalog", help="builtin models").add_subparsers(dest="verb", metavar="verb")
    _common(cat.add_parser("list", help="list builtin names"), model=False)
    p = cat.add_parser("export", help="write a model as canonical JSON")
    _common(p)
    p.add_argument("--out", help="output path (default stdout)")

    ver = nouns.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite", choices=sorted(SUITES) + ["all"])
    _common(ver, model=False)
    ver.set_defaults(verb="run")
    return parser


# ---------------------------------------------------------------- loading

def _load(args, want: str):
    if args.file:
        obj = ingest(args.file)
    elif args.builtin:
        if want == "lie":
            field = parse_field(args.field) if args.field else None
            obj = builtin_lie(args.builtin, field=field)
        else:
            obj = builtin_group(args.builtin)
    else:
        raise UsageError("give --builtin NAME or --file PATH")
    if want == "lie" and not isinstance(obj, liealg.LieAlgebra):
        raise UsageError("expected a Lie algebra")
    if want == "group" and not isinstance(obj, FiniteGroup):
        raise UsageError("expected a group")
    return obj


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def _config(args, **extra) -> dict:
    cfg = {"seed": args.seed, "max_iter": args.max_iter, "conj_convention": args.conj_convention}
    cfg.update(extra)
    return cfg


# ---------------------------------------------------------------- commands

def _word_sequence(name: str):
    if name in words.SEQUENCES:
        return words.SEQUENCES[name]
    try:
        return words.get_sequence(name, "group")
    except KeyError:
        return words.get_sequence(name, "lie")


def cmd_word(args) -> List[Report]:
    _need(args, "seq")
    seq = _word_sequence(args.seq)
    if args.verb == "generate":
        _need(args, "n")
        t = Timer()
        w = words.generate(seq, args.n, convention=args.conj_convention)
        text = str(w)
        return [Report("word.generate", {"seq": seq.id, "n": args.n}, "holds", iterations=args.n,
                       millis=t.millis(), config=_config(args),
                       details={"length": len(w) if seq.kind == "group" else w.degree(),
                                "word": text if len(text) <= 4000 else text[:4000] + "..."})]
    n = args.n or 10
    out = [words.check_correct(seq, n, args.conj_convention)]
    out.append(words.check_autocorrect(seq, n, args.conj_convention))
    return out


def cmd_lie(args) -> List[Report]:
    L = _load(args, "lie")
    t = Timer()
    if args.verb == "info":
        details = {"dim": L.dim, "basis": list(L.names), "field": L.field.spec.label(),
                   "derived_dims": [S.dim for S in liealg.series(L, "derived")],
                   "lower_central_dims": [S.dim for S in liealg.series(L, "lower-central")],
                   "solvable": liealg.is_solvable(L), "nilpotent": liealg.is_nilpotent(L)}
        if L.field.characteristic == 0:
            details["radical"] = liealg.solvable_radical(L).to_text()
            details["nilradical"] = liealg.nilradical(L).to_text()
        return [Report("lie.info", {"algebra": L.label}, "holds", millis=t.millis(), config=_config(args),
                       details=details)]
    if args.verb == "identity":
        _need(args, "seq", "n")
        return [liealg.identity_check(L, args.seq, args.n, method=args.method, threads=args.threads)]
    if args.verb == "engel":
        _need(args, "y")
        v = liealg.engel_test(L, args.y, args.kind, max_n=args.max_iter, threads=args.threads)
        return [v.to_report(L, args.y, _config(args), t.millis())]
    if args.verb == "engel-set":
        return [liealg.engel_set(L, args.kind, threads=args.threads, max_n=args.max_iter)[1]]
    if args.verb == "vanishes":
        _need(args, "y", "n")
        return [liealg.vanishes_everywhere(L, args.seq or "w", args.n, args.y, threads=args.threads)]
    raise UsageError(f"unknown verb {args.verb}")


def _automorphism(G, spec: str):
    if spec == "id":
        return identity_automorphism(G)
    if spec == "swap":
        return swap_automorphism(G)
    if spec.startswith("conj:"):
        return conjugation_automorphism(G, parse_cycles(spec[5:], G.degree), name=spec)
    raise UsageError(f"unknown automorphism {spec!r}")


def cmd_group(args) -> List[Report]:
    G = _load(args, "group")
    conv = args.conj_convention
    t = Timer()
    if args.verb == "info":
        R, F = solvable_radical(G), fitting_subgroup(G)
        details = {"order": G.order, "degree": G.degree, "classes": len(G.class_sizes()),
                   "class_sizes": sorted(G.class_sizes()), "solvable_radical": R.order, "fitting": F.order}
        return [Report("group.info", {"group": G.name}, "holds", millis=t.millis(), config=_config(args),
                       details=details)]
    if args.verb == "identity":
        _need(args, "seq", "n")
        return [identity_holds(G, args.seq, args.n, strategy=args.strategy, threads=args.threads,
                               convention=conv)]
    if args.verb == "engel-set":
        _need(args, "seq")
        return [engel_like_set(G, args.seq, convention=conv, compare=args.compare, threads=args.threads)[1]]
    if args.verb == "cr":
        return [cr_report(G)]
    if args.verb == "aut-engel":
        _need(args, "seq")
        return [engel_automorphism_test(G, _automorphism(G, args.aut), args.seq, convention=conv)]
    raise UsageError(f"unknown verb {args.verb}")


def cmd_catalog(args):
    if args.verb == "list":
        return [Report("catalog.list", {}, "holds", config=_config(args),
                       details={"lie": lie_names(), "group": GROUP_NAMES,
                                "sequences": sorted(words.SEQUENCES)})]
    obj = _load(args, "group" if args.builtin and not _is_lie_name(args.builtin) else "lie") \
        if args.builtin else ingest(args.file)
    text = export_text(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return []
    sys.stdout.write(text)
    return []


def _is_lie_name(name: str) -> bool:
    base = name.split("+")[0].split(":")[0].strip().lower()
    return base in {"sl2", "gl2", "b2", "heis3", "n3", "sl3", "jacobson", "witt", "abelian"}


def cmd_verify(args) -> List[Report]:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    return [verify_suite(n, threads=args.threads, seed=args.seed, convention=args.conj_convention,
                         strategy=args.strategy) for n in names]


def emit(reports: List[Report], fmt: str, reproducible: bool, stream=None):
    stream = stream or sys.stdout
    for r in reports:
        if fmt == "json":
            stream.write(r.to_json(reproducible) + "\n")
        else:
            if reproducible:
                r = Report(**{**r.__dict__, "millis": 0})
            stream.write(r.to_text() + "\n\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.noun or not getattr(args, "verb", None):
        parser.print_usage(sys.stderr)
        return 2
    handlers = {"word": cmd_word, "lie": cmd_lie, "group": cmd_group, "catalog": cmd_catalog,
                "verify": cmd_verify}
    try:
        reports = handlers[args.noun](args)
    except (UsageError, EngelradError, KeyError, ValueError, OSError) as exc:
        print(f"engelrad: error: {exc}", file=sys.stderr)
        return 2
    for r in reports:
        r.config = {**_config(args), **(r.config or {})}
    emit(reports, args.format, args.reproducible)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
