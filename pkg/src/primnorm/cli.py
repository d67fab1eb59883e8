"""Command-line front end.

Every subcommand is a thin wrapper over the library; nothing is decided
here.  Predicate subcommands (``primitive``, ``separable``,
``orbit-equal``, ``stabilizer``, ``family-check`` and a failing
``certify`` verification) exit 1 on a negative answer so they compose in
shell pipelines; usage and input errors exit 2.  Seeds default to a
fixed constant so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certify as certify_mod
from . import family as family_mod
from . import qm as qm_mod
from . import stabilizer as stabilizer_mod
from . import whitehead_graph
from .autos import abelianization_matrix, automorphism_to_json, determinant
from .orbit import (
    CapExceededError,
    DEFAULT_CAP,
    is_primitive,
    is_separable,
    minimal_level_set,
    orbit_equal,
    random_primitive,
    reduce_to_minimal,
)
from .words import Word, WordError, cyclic_reduce, parse_word

DEFAULT_SEED = 0


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _parse(args: argparse.Namespace, text: str) -> Word:
    if not 1 <= args.rank <= 26:
        raise WordError(f"rank must lie in [1, 26], got {args.rank}")
    return parse_word(text, args.rank)


def _add_common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
    p.add_argument("--rank", type=int, required=True, help="rank of the free group (1-26)")
    if fmt:
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output format"
        )


def cmd_reduce(args) -> int:
    w = _parse(args, args.word)
    c, z = cyclic_reduce(w)
    if args.format == "json":
        print(_dumps({"reduced": str(w), "cyclic": str(c), "conjugator": str(z)}))
    else:
        print(f"reduced:    {w}")
        print(f"cyclic:     {c}")
        print(f"conjugator: {z}")
    return 0


def cmd_graph(args) -> int:
    w = _parse(args, args.word)
    c, _ = cyclic_reduce(w)
    g = whitehead_graph.build(c)
    if args.format == "dot":
        sys.stdout.write(whitehead_graph.to_dot(g))
        return 0
    cuts = sorted(whitehead_graph.cut_vertices(g), key=abs)
    data = {
        "graph": whitehead_graph.to_json(g),
        "connected": whitehead_graph.is_connected(g),
        "cut_vertices": cuts,
    }
    if args.format == "json":
        print(_dumps(data))
    else:
        print(f"edges: {data['graph']['edges']}")
        print(f"connected: {data['connected']}")
        print(f"cut vertices (letters): {cuts}")
    return 0


def cmd_primitive(args) -> int:
    w = _parse(args, args.word)
    result = is_primitive(w)
    print(_dumps({"word": str(w), "primitive": result}) if args.format == "json" else result)
    return 0 if result else 1


def cmd_separable(args) -> int:
    w = _parse(args, args.word)
    result, ev = is_separable(w)
    payload = {
        "word": str(w),
        "separable": result,
        "minimal": str(ev.minimal),
        "graph_connected": ev.connected,
        "cut_vertices": sorted(ev.cut_letters, key=abs),
    }
    print(_dumps(payload) if args.format == "json" else payload)
    return 0 if result else 1


def cmd_orbit_equal(args) -> int:
    u = _parse(args, args.first)
    v = _parse(args, args.second)
    equal, witness = orbit_equal(u, v, args.cap)
    payload: dict = {"first": str(u), "second": str(v), "equal": equal}
    if witness is not None:
        payload["witness"] = automorphism_to_json(witness)
        payload["witness_determinant"] = determinant(abelianization_matrix(witness))
    print(_dumps(payload) if args.format == "json" else f"equal: {equal}")
    return 0 if equal else 1


def cmd_orbit_min(args) -> int:
    w = _parse(args, args.word)
    c, _ = cyclic_reduce(w)
    trace = reduce_to_minimal(c)
    level = minimal_level_set(trace.final, args.cap)
    payload = {
        "start": str(c),
        "minimal": str(trace.final),
        "minimal_length": len(trace.final),
        "steps": [str(step) for _, step in trace.steps],
        "level_set_size": len(level.classes),
    }
    if args.format == "json":
        print(_dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return 0


def cmd_qm(args) -> int:
    base = _parse(args, args.base)
    q = qm_mod.BrooksQm(base)
    if args.mode == "defect":
        report = qm_mod.estimate_defect(
            q,
            args.samples,
            max_len=args.max_len,
            seed=args.seed,
            claimed_bound=args.claimed_bound,
        )
        print(_dumps(report.to_json()) if args.format == "json" else report)
        return 0 if report.passed else 1
    w = _parse(args, args.word)
    if args.mode == "count":
        value = qm_mod.count_occurrences(base, w)
    elif args.mode == "brooks":
        value = qm_mod.brooks(q, w)
    else:
        value = qm_mod.homogenized(q, w)
    if args.format == "json":
        print(_dumps({"mode": args.mode, "base": str(base), "word": str(w), "value": value}))
    else:
        print(value)
    return 0


def cmd_certify(args) -> int:
    w = _parse(args, args.word)
    verdict = certify_mod.classify(w, defect_bound=args.defect_bound)
    report = certify_mod.verify(
        verdict, w, n_max=args.n_max, samples=args.samples, seed=args.seed
    )
    payload = {"certificate": verdict.to_json(), "verification": report.to_json()}
    print(_dumps(payload))
    return 0 if report.passed else 1


def cmd_stabilizer(args) -> int:
    w = _parse(args, args.word)
    c, _ = cyclic_reduce(w)
    graph = stabilizer_mod.build_mccool_graph(c, args.cap)
    if args.format == "dot":
        sys.stdout.write(stabilizer_mod.to_dot(graph))
        return 0
    in_plus = stabilizer_mod.stabilizer_in_aut_plus(graph)
    payload = {
        "graph": stabilizer_mod.to_json(graph),
        "stabilizer_in_determinant_plus_one": in_plus,
    }
    if args.format == "json":
        print(_dumps(payload))
    else:
        print(f"level-set classes: {len(graph.vertices)}")
        print(f"stabilizer in determinant +1 subgroup: {in_plus}")
    return 0 if in_plus else 1


def cmd_family_check(args) -> int:
    ks = [int(part) for part in args.ks.split(",") if part]
    report = family_mod.check_family(ks, cap=args.cap)
    if args.format == "json":
        print(_dumps(report.to_json()))
    else:
        for k, checks in report.results:
            for check in checks:
                status = "PASS" if check.passed else "FAIL"
                print(f"k={k} {check.name}: {status} ({check.detail})")
        for check in report.pair_results:
            status = "PASS" if check.passed else "FAIL"
            print(f"{check.name}: {status} ({check.detail})")
        print(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def cmd_random_primitive(args) -> int:
    w = random_primitive(args.rank, args.steps, args.seed)
    print(str(w))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primnorm",
        description="Whitehead-orbit analysis and distortion certificates for free groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="free and cyclic reduction")
    _add_common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("graph", help="Whitehead graph of a word")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("word")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("primitive", help="is the word a basis element? (exit 1 if not)")
    _add_common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_primitive)

    p = sub.add_parser("separable", help="does the word conjugate into a proper free factor? (exit 1 if not)")
    _add_common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_separable)

    p = sub.add_parser("orbit-equal", help="are two words in one automorphic orbit? (exit 1 if not)")
    _add_common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_orbit_equal)

    p = sub.add_parser("orbit-min", help="greedy reduction trace and level-set size")
    _add_common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("word")
    p.set_defaults(func=cmd_orbit_min)

    p = sub.add_parser("qm", help="counting quasimorphism values and defect sampling")
    _add_common(p)
    p.add_argument("mode", choices=("count", "brooks", "homogenized", "defect"))
    p.add_argument("--base", required=True, help="base pattern word")
    p.add_argument("word", nargs="?", help="argument word (not used by 'defect')")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--max-len", type=int, default=24)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--claimed-bound", type=int, default=None)
    p.set_defaults(func=cmd_qm)

    p = sub.add_parser("certify", help="classify and verify; emits certificate JSON (exit 1 if verification fails)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--defect-bound", type=int, default=None)
    p.add_argument("word")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("stabilizer", help="stabilizer graph and determinant verdict (exit 1 if a det -1 generator exists)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("word")
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("family-check", help="staircase family verification suite (exit 1 on failure)")
    p.add_argument("--ks", default="2,3,4", help="comma-separated k values, each >= 2")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_family_check)

    p = sub.add_parser("random-primitive", help="seeded random basis element")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_random_primitive)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (WordError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
