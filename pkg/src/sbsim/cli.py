"""Command-line interface: ``sbsim gen|run|verify|bench``.

Exit codes: 0 yes / pass, 1 no / fail, 2 usage, input or infeasibility errors,
3 when an execution does not halt within the round limit.
"""

import argparse
import csv
import random
import sys
import time

from .core import NonHalting, canonical_encoding, run_execution
from .corpus import THUE_MORSE_FAMILIES, random_pseudotree, random_thue_morse_instance, thue_morse_corpus
from .graph import GraphError
from .instances import (
    DegreeViolation,
    Instance,
    LengthNotOrientable,
    ParseError,
    ShapeInfeasible,
    gadget_transform,
    make_cycle_instance,
    make_path_instance,
    make_pseudotree,
    make_yes_instance,
    parse_digraph,
    parse_instance,
    serialize_digraph,
    serialize_instance,
)
from .leafparity import ABORTED, LeafParity
from .oracles import NoLeaf, bfs_leaf_parity, decide_thue_morse, good_graph_check
from .thuemorse import ThueMorse

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_NONHALTING = 0, 1, 2, 3

ALGORITHMS = {"thue-morse": ThueMorse, "leaf-parity": LeafParity}
SHAPE_ALIASES = {"balanced": "balanced-tree", "random": "random-tree", "with-cycle": "with-cycle"}
BENCH_FAMILIES = ("yes-path", "no-path", "balanced-gadget", "random-gadget")
CSV_HEADER = ["instance_id", "family", "n", "decision", "rounds", "distinct_states", "space_bits", "wall_ms"]


class UsageError(Exception):
    pass


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _algorithm_for(name, inst):
    if name is None:
        name = "thue-morse" if inst.orientation is not None else "leaf-parity"
    if name == "thue-morse" and (inst.orientation is None or inst.word is None):
        raise UsageError("thue-morse needs orientation and word inputs")
    return ALGORITHMS[name]()


def _decision(algorithm, result):
    """``yes``/``no`` for thue-morse; ``ok`` (no abort) or ``no`` for leaf-parity."""
    if isinstance(algorithm, ThueMorse):
        return result.decision() or "mixed"
    return "no" if ABORTED in result.outputs.values() else "ok"


def parse_sizes(text):
    """``"2..5"`` or ``"0,1,3"`` (or empty) to a list of integers."""
    text = text.strip()
    if not text:
        return []
    sizes = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            sizes.extend(range(int(lo), int(hi) + 1))
        else:
            sizes.append(int(part))
    return sizes


# -- gen ---------------------------------------------------------------------


def cmd_gen(args):
    kind = args.kind
    if kind == "yes-path":
        if args.i < 0:
            raise UsageError("--i must be non-negative")
        text = serialize_instance(make_yes_instance(args.i))
    elif kind == "no-path":
        if args.word:
            inst = make_path_instance(args.word, consistent=not args.inconsistent, seed=args.seed)
        else:
            rng = random.Random(args.seed)
            inst = random_thue_morse_instance(rng, args.family, args.length)
        text = serialize_instance(inst)
    elif kind == "cycle":
        text = serialize_instance(make_cycle_instance(args.word, seed=args.seed, consistent=not args.inconsistent))
    elif kind == "pseudotree":
        text = serialize_digraph(make_pseudotree(args.nodes, SHAPE_ALIASES[args.shape], seed=args.seed))
    else:
        dg = parse_digraph(_read(args.input))
        text = serialize_instance(Instance(gadget_transform(dg)))
    _write(text, args.out)
    return EXIT_OK


# -- run ---------------------------------------------------------------------


def cmd_run(args):
    inst = parse_instance(_read(args.instance))
    algorithm = _algorithm_for(args.algorithm, inst)
    result = run_execution(
        inst.graph, inst.local_inputs(), algorithm, max_rounds=args.max_rounds, capture_trace=args.trace
    )
    out = sys.stdout
    if args.trace:
        for rnd, states in enumerate(result.trace):
            out.write(f"round {rnd}\n")
            for v, s in enumerate(states):
                out.write(f"  {v} {canonical_encoding(s).decode()}\n")
    for v in range(inst.n):
        out.write(f"node {v} {result.outputs[v]}\n")
    decision = _decision(algorithm, result)
    out.write(f"decision {decision}\n")
    out.write(f"rounds {result.rounds}\n")
    out.write(f"distinct_states {result.distinct_states}\n")
    out.write(f"space_bits {result.space_bits}\n")
    return EXIT_OK if decision in ("yes", "ok") else EXIT_NO


# -- verify ------------------------------------------------------------------


def check_thue_morse(inst, result):
    """Problem message or ``None``: the common decision must equal the oracle's."""
    expected = decide_thue_morse(inst)
    got = result.decision()
    return None if got == expected else f"decision {got!r}, oracle {expected!r}"


def check_leaf_parity(graph, result):
    """Problem message or ``None``.

    On good graphs every output must equal the BFS parity. Elsewhere each node
    may abort; a node that does not must still output the BFS parity.
    """
    outputs = result.outputs
    try:
        parity = bfs_leaf_parity(graph)
    except NoLeaf:
        parity = None
    if good_graph_check(graph):
        if outputs != parity:
            return "outputs differ from the BFS leaf parity on a good graph"
        return None
    for v, out in outputs.items():
        if out != ABORTED and (parity is None or out != parity[v]):
            return f"node {v} output {out!r} is neither an abort nor its leaf parity"
    return None


def _verify_one(algorithm, inst, max_rounds):
    result = run_execution(inst.graph, inst.local_inputs(), algorithm, max_rounds=max_rounds)
    if isinstance(algorithm, ThueMorse):
        return check_thue_morse(inst, result)
    return check_leaf_parity(inst.graph, result)


def _random_cases(name, count, seed):
    if name == "leaf-parity":
        rng = random.Random(seed)
        for j in range(count):
            dg = random_pseudotree(rng, max_nodes=255)
            yield f"pseudotree-{seed}-{j}", Instance(gadget_transform(dg))
    else:
        for iid, _, inst in thue_morse_corpus(count, seed, max_length=500):
            yield iid, inst


def cmd_verify(args):
    if args.random is not None:
        name = args.algorithm or "thue-morse"
        cases = _random_cases(name, args.random, args.seed)
    elif args.instance:
        inst = parse_instance(_read(args.instance))
        name = args.algorithm or ("thue-morse" if inst.orientation is not None else "leaf-parity")
        cases = [(args.instance, inst)]
    else:
        raise UsageError("give an instance file or --random N")
    failures = total = 0
    algorithm = None
    for iid, inst in cases:
        # one algorithm object for the whole batch so its transition table is reused
        algorithm = algorithm or _algorithm_for(name, inst)
        total += 1
        try:
            problem = _verify_one(algorithm, inst, args.max_rounds)
        except NonHalting as exc:
            problem = f"did not halt: {exc}"
        if problem:
            failures += 1
            print(f"FAIL {iid}: {problem}")
    print(f"{'pass' if not failures else 'fail'} {total - failures}/{total}")
    return EXIT_OK if not failures else EXIT_NO


# -- bench -------------------------------------------------------------------


def bench_instance(family, size, seed):
    if family == "yes-path":
        if size < 0:
            raise ShapeInfeasible("yes-path sizes are i >= 0")
        return make_yes_instance(size), ThueMorse()
    if family == "no-path":
        if size < 1:
            raise ShapeInfeasible("no-path sizes are word lengths >= 1")
        rng = random.Random(f"{seed}-{size}")
        return random_thue_morse_instance(rng, "locally-valid", max(size, 3)), ThueMorse()
    if family == "balanced-gadget":
        if size < 2:
            raise ShapeInfeasible("balanced-gadget sizes are k >= 2")
        return Instance(gadget_transform(make_pseudotree(2**size - 1, "balanced-tree"))), LeafParity()
    if family == "random-gadget":
        return Instance(gadget_transform(make_pseudotree(size, "random-tree", seed=seed))), LeafParity()
    raise UsageError(f"unknown bench family {family!r}")


def bench_rows(family, sizes, seed, timing=True):
    for size in sizes:
        inst, algorithm = bench_instance(family, size, seed)
        start = time.perf_counter()
        result = run_execution(inst.graph, inst.local_inputs(), algorithm)
        wall = round((time.perf_counter() - start) * 1000) if timing else 0
        yield {
            "instance_id": f"{family}-{size}-{seed}",
            "family": family,
            "n": inst.n,
            "decision": _decision(algorithm, result),
            "rounds": result.rounds,
            "distinct_states": result.distinct_states,
            "space_bits": result.space_bits,
            "wall_ms": wall,
        }


def cmd_bench(args):
    sizes = parse_sizes(args.sizes)
    # build every instance first so infeasible sizes fail before any output
    for size in sizes:
        bench_instance(args.family, size, args.seed)
    fh = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER, lineterminator="\n")
        writer.writeheader()
        for row in bench_rows(args.family, sizes, args.seed, timing=not args.no_timing):
            writer.writerow(row)
            fh.flush()
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="sbsim", description="Set-broadcast model simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance or digraph file")
    gen.add_argument("kind", choices=("yes-path", "no-path", "cycle", "pseudotree", "gadget"))
    gen.add_argument("--i", type=int, default=0, help="yes-path index")
    gen.add_argument("--word", help="word over 0, 1, _")
    gen.add_argument("--family", choices=THUE_MORSE_FAMILIES, default="locally-valid")
    gen.add_argument("--length", type=int, default=100, help="maximum length for random no-paths")
    orient = gen.add_mutually_exclusive_group()
    orient.add_argument("--consistent", action="store_true", help="consistent orientation (default)")
    orient.add_argument("--inconsistent", action="store_true")
    gen.add_argument("--shape", choices=sorted(SHAPE_ALIASES), default="balanced")
    gen.add_argument("--nodes", type=int, default=7)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--input", help="digraph file for gadget (default stdin)")
    gen.add_argument("--out", help="output file (default stdout)")

    run = sub.add_parser("run", help="run an algorithm on an instance file")
    run.add_argument("instance", help="instance file, or - for stdin")
    run.add_argument("--algorithm", choices=sorted(ALGORITHMS))
    run.add_argument("--max-rounds", type=int)
    run.add_argument("--trace", action="store_true", help="print every node's state after every round")

    ver = sub.add_parser("verify", help="compare an algorithm against its oracle")
    ver.add_argument("instance", nargs="?")
    ver.add_argument("--algorithm", choices=sorted(ALGORITHMS))
    ver.add_argument("--random", type=int, metavar="N", help="verify N seeded random instances")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--max-rounds", type=int)

    bench = sub.add_parser("bench", help="measure rounds and states, CSV output")
    bench.add_argument("family", choices=BENCH_FAMILIES)
    bench.add_argument("--sizes", default="", help="e.g. 0..7 or 3,5,9")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", help="CSV file (default stdout)")
    bench.add_argument("--no-timing", action="store_true", help="write wall_ms as 0 for reproducible output")
    return parser


COMMANDS = {"gen": cmd_gen, "run": cmd_run, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.kind == "cycle" and not args.word:
        parser.error("cycle needs --word")
    try:
        return COMMANDS[args.command](args)
    except NonHalting as exc:
        print(f"error: NonHalting: {exc}", file=sys.stderr)
        return EXIT_NONHALTING
    except (
        ParseError,
        LengthNotOrientable,
        ShapeInfeasible,
        DegreeViolation,
        GraphError,
        UsageError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
