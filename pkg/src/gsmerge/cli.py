"""Command-line interface.

Exit codes: 0 success / feasible, 1 infeasible or invalid, 2 malformed input,
3 resource limit.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import formats
from .core import StepError, apply_plan, is_fully_merged
from .formats import FormatError
from .reduction import StructureViolation, extract_3p, lift_3p, reduce_3p
from .solver import DEFAULT_NODE_BUDGET, ResourceLimit, solve
from .tpart import (
    InvalidSolution,
    InvalidThreePartition,
    Unsatisfiable,
    brute_force_3p,
    check_solution,
    gen_random,
    gen_solvable,
)

OK, FAIL, MALFORMED, LIMIT = 0, 1, 2, 3


def err(msg: str) -> None:
    print(msg, file=sys.stderr)


def emit(obj, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(formats.dumps(obj))
    else:
        formats.write(path, obj)


def load_state(args):
    return formats.parse_instance(formats.read(args.instance), args.page_size, args.tie_order)


def load_reduced(args):
    state = load_state(args)
    return formats.parse_meta(formats.read(args.meta), state)


def cmd_solve(args) -> int:
    state = load_state(args)
    try:
        res = solve(state, max_nodes=args.budget_nodes)
    except ResourceLimit as exc:
        err(f"unknown: {exc} (expanded {exc.stats.nodes_expanded} nodes)")
        return LIMIT
    s = res.stats
    err(f"nodes_expanded={s.nodes_expanded} memo_hits={s.memo_hits} peak_memo_size={s.peak_memo_size}")
    if not res.feasible:
        err("infeasible")
        return FAIL
    err(f"feasible: {len(res.plan)} merges")
    emit(formats.dump_plan(res.plan), args.output)
    return OK


def cmd_verify(args) -> int:
    state = load_state(args)
    plan = formats.parse_plan(formats.read(args.plan))
    try:
        trace = apply_plan(state, plan)
    except StepError as exc:
        err(f"illegal step {exc.index}: {exc.cause}")
        return FAIL
    final = trace[-1]
    if not is_fully_merged(final):
        left = {g: n for g, n in final.group_sizes.items() if n > 1}
        err(f"plan replays but leaves unmerged groups: {left}")
        return FAIL
    print(f"ok: {len(plan)} merges, fully merged")
    return OK


def render_pages(state, roles=None) -> str:
    roles = roles or {}
    sizes = state.group_sizes
    lines = []
    for k, page in enumerate(state.pages(), start=1):
        lines.append(f"--- page {k} ---")
        for v in page:
            rank = state.rank(v.id)
            mark = "*" if sizes[v.group] > 1 else " "
            role = roles.get(v.id, "")
            lines.append(f"{rank:>6} {v.id:>6} {mark}{str(v.group):<10} {v.citations:>10} {role}".rstrip())
    return "\n".join(lines)


def cmd_pages(args) -> int:
    state = load_state(args)
    roles = None
    if args.meta:
        roles = formats.parse_meta(formats.read(args.meta), state).roles()
    text = render_pages(state, roles)
    if text:
        print(text)
    return OK


def cmd_reduce3p(args) -> int:
    tp = formats.parse_tp(formats.read(args.tp))
    reduced = reduce_3p(tp, args.tie_order)
    emit(formats.dump_instance(reduced.state), args.output)
    formats.write(args.meta, formats.dump_meta(reduced))
    return OK


def cmd_lift3p(args) -> int:
    reduced = load_reduced(args)
    sol = formats.parse_solution(formats.read(args.solution))
    try:
        plan = lift_3p(reduced, sol)
    except InvalidSolution as exc:
        err(f"invalid solution: {exc}")
        return FAIL
    emit(formats.dump_plan(plan), args.output)
    return OK


def cmd_extract3p(args) -> int:
    reduced = load_reduced(args)
    plan = formats.parse_plan(formats.read(args.plan))
    try:
        sol = extract_3p(reduced, plan)
        check_solution(reduced.source, sol)
    except StepError as exc:
        err(f"illegal step {exc.index}: {exc.cause}")
        return FAIL
    except (StructureViolation, InvalidSolution) as exc:
        err(f"structure violation: {exc}")
        return FAIL
    emit(formats.dump_solution(sol), args.output)
    return OK


def cmd_3psolve(args) -> int:
    tp = formats.parse_tp(formats.read(args.tp))
    sol = brute_force_3p(tp)
    if sol is None:
        err("no 3-partition exists")
        return FAIL
    emit(formats.dump_solution(sol), args.output)
    return OK


def gen_merge_instance(n: int, groups: int, max_citations: int, page_size: int, seed: int) -> dict:
    """Random merge instance: ``groups`` multi-version papers spread over ``n`` versions."""
    rng = random.Random(seed)
    entries = []
    for k in range(n):
        # half the versions are single papers
        group = f"G{rng.randrange(groups) + 1}" if rng.random() < 0.5 else f"S{k + 1}"
        entries.append({"group": group, "citations": rng.randint(0, max_citations)})
    return {"page_size": page_size, "versions": entries}


def cmd_gen(args) -> int:
    if args.kind == "3p":
        try:
            tp = (gen_solvable if args.solvable else gen_random)(args.m, args.B, args.seed)
        except Unsatisfiable as exc:
            err(str(exc))
            return FAIL
        emit(formats.dump_tp(tp), args.output)
    else:
        emit(gen_merge_instance(args.n, args.groups, args.max_citations, args.page_size or 3, args.seed), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--page-size", type=int, default=None, help="override the instance's page size")
    common.add_argument("--tie-order", choices=("asc", "desc"), default="asc",
                        help="id order among equal citation counts (default: asc)")

    parser = argparse.ArgumentParser(prog="gsmerge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="decide feasibility and print a witness plan")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="replay a plan and check it fully merges")
    p.add_argument("instance")
    p.add_argument("plan")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pages", parents=[common], help="print the ranked view page by page")
    p.add_argument("instance")
    p.add_argument("--meta", help="reduction metadata; labels X/Y/Z roles")
    p.set_defaults(func=cmd_pages)

    p = sub.add_parser("reduce3p", parents=[common], help="build the merge instance for a 3-partition input")
    p.add_argument("tp")
    p.add_argument("-o", "--output")
    p.add_argument("--meta", required=True, help="where to write the role metadata")
    p.set_defaults(func=cmd_reduce3p)

    p = sub.add_parser("lift3p", parents=[common], help="turn a 3-partition solution into a merge plan")
    p.add_argument("instance")
    p.add_argument("meta")
    p.add_argument("solution")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lift3p)

    p = sub.add_parser("extract3p", parents=[common], help="read a 3-partition solution off a merge plan")
    p.add_argument("instance")
    p.add_argument("meta")
    p.add_argument("plan")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract3p)

    p = sub.add_parser("3psolve", help="brute-force a 3-partition instance")
    p.add_argument("tp")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_3psolve)

    p = sub.add_parser("gen", parents=[common], help="generate 3-partition or merge instances")
    p.add_argument("kind", choices=("3p", "merge"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--B", type=int, default=12)
    p.add_argument("--solvable", action="store_true", help="3p: plant a solution")
    p.add_argument("--n", type=int, default=8, help="merge: number of versions")
    p.add_argument("--groups", type=int, default=2, help="merge: number of group labels")
    p.add_argument("--max-citations", type=int, default=12)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return MALFORMED if exc.code else OK
    if getattr(args, "page_size", None) is not None and args.page_size < 1:
        err("--page-size must be >= 1")
        return MALFORMED
    try:
        return args.func(args)
    except (FormatError, InvalidThreePartition, ValueError) as exc:
        err(f"malformed input: {exc}")
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
