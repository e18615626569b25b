"""Command-line front end. JSON in, JSON out; stdin/stdout when paths are omitted.

Exit status: 0 ok, 1 a verified criterion failed, 2 bad input, 3 budget
exceeded, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InvariantViolation
from .graph import ApicalPair, Graph, SplitLog

BUDGET_ENV = "KURAGENUS_BUDGET"
DEFAULT_BUDGET = 10**7

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3, 4

COMMANDS = ("gen", "detect", "planarity", "genus", "bridges", "planarize", "trees", "verify")


class InputError(ValueError):
    """Malformed input data; maps to exit status 2."""


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        for key in ("cap", "budget"):
            val = self.params.get(key)
            if val is not None and val <= 0:
                raise InputError(f"--{key} must be positive")
        self.params.setdefault("seed", 0)

    def get(self, key: str, default=None):
        val = self.params.get(key)
        return default if val is None else val


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        val = int(raw)
    except ValueError as exc:
        raise InputError(f"{BUDGET_ENV} is not an integer: {raw!r}") from exc
    if val <= 0:
        raise InputError(f"{BUDGET_ENV} must be positive")
    return val


def _int_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma separated integers, got {text!r}") from exc


def _read_json(path: str | None):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _graph_from(obj) -> Graph:
    if isinstance(obj, dict) and "graph" in obj:
        obj = obj["graph"]
    try:
        return Graph.from_json_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a graph: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands; each returns (status, report)


def _cmd_gen(cfg: RunConfig, _obj) -> tuple[int, object]:
    from .families import make_kuratowski

    pieces = [p for p in (cfg.get("pieces") or "").split(",") if p]
    try:
        g = make_kuratowski(cfg.get("k", 1), cfg.get("i", 0), pieces)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK, g


def _cmd_detect(cfg: RunConfig, obj) -> tuple[int, object]:
    from .families import detect_junction, detect_kuratowski_minor

    g = _graph_from(obj)
    k, i = cfg.get("k", 1), cfg.get("i", 0)
    if cfg.get("junction"):
        w = detect_junction(g, k, i)
        return EXIT_OK, "none" if w is None else w.to_json_obj()
    model = detect_kuratowski_minor(g, k, i, size_cap=cfg.get("cap", 14))
    return EXIT_OK, "none" if model is None else model.to_json_obj()


def _cmd_planarity(cfg: RunConfig, obj) -> tuple[int, object]:
    from .planarity import is_planar

    g = _graph_from(obj)
    cert = is_planar(g)
    cert.verify(g)
    return EXIT_OK, cert.to_json_obj()


def _cmd_genus(cfg: RunConfig, obj) -> tuple[int, object]:
    from .genus import genus_of_rotation, min_genus

    g = _graph_from(obj)
    rep = min_genus(g, cap=cfg.get("cap", cfg.get("budget")))
    if genus_of_rotation(g, rep.rotation).genus != rep.genus:
        raise InvariantViolation("reported rotation does not have the reported genus")
    return EXIT_OK, rep.to_json_obj()


def _cmd_bridges(cfg: RunConfig, obj) -> tuple[int, object]:
    from .bridges import bridges_of

    g = _graph_from(obj)
    cycle = _int_list(cfg.get("cycle"))
    if not cycle or len(cycle) < 3:
        raise InputError("bridges needs --cycle with at least three vertices")
    ends = _int_list(cfg.get("ends")) or [cycle[0], cycle[len(cycle) // 2]]
    if len(ends) != 2:
        raise InputError("--ends takes exactly two vertices")
    try:
        dec = bridges_of(g, cycle, ends[0], ends[1])
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK, dec.to_json_obj()


def _pair_from(cfg: RunConfig, obj) -> tuple[ApicalPair, int]:
    g = _graph_from(obj)
    apex = _int_list(cfg.get("apex"))
    if apex is None and isinstance(obj, dict):
        apex = obj.get("apex_set")
    if apex is None:
        raise InputError("planarize needs an apex set (input field apex_set or --apex)")
    k = cfg.get("k", obj.get("k", 1) if isinstance(obj, dict) else 1)
    try:
        return ApicalPair(g, apex), k
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _cmd_planarize(cfg: RunConfig, obj) -> tuple[int, object]:
    from .planarity import planar_embedding
    from .planarizer import apply_partition, check_planarization, exact_partition, planarize_apex

    pair, k = _pair_from(cfg, obj)
    budget = cfg.get("budget")
    if cfg.get("exact"):
        n, parts = exact_partition(pair, cap=budget)
        out, log = apply_partition(pair.graph, parts)
        log.meta["nonplanarity"] = n
        log.meta["route"] = "exact"
    else:
        log = planarize_apex(pair, k, cap=min(budget, 10**6))
        out = log.replay(pair.graph)
    probs = check_planarization(pair, log)
    if probs:
        raise InvariantViolation("; ".join(probs))
    rot = planar_embedding(out)
    if rot is None:
        raise InvariantViolation("split graph is not planar")
    grown = sum(1 for v in out.vertices if v not in pair.skeleton and out.degree(v) > 0)
    return EXIT_OK, {
        "apex_set": sorted(pair.apex_set),
        "k": k,
        "splits": len(log),
        "apex_vertices_after": grown,
        "log": log.to_json_obj(),
        "meta": log.meta,
        "graph": out.to_json_obj(),
        "embedding": rot.to_json_obj(),
    }


def _forest_from(obj):
    from .trees import MarkedForest

    try:
        trees = [Graph.from_json_obj(t) for t in obj["trees"]]
        return MarkedForest(trees, obj["marks"], int(obj["d"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a marked forest: {exc}") from exc


def _cmd_trees(cfg: RunConfig, obj) -> tuple[int, object]:
    from .trees import complementary_split, disjoint_triples

    forest = _forest_from(obj)
    try:
        if cfg.get("k") is not None:
            res = disjoint_triples(forest, cfg.get("k"))
            probs = res.problems(forest)
            if probs:
                raise InvariantViolation("; ".join(probs))
            return EXIT_OK, {
                "subtrees": [[sorted(s) for s in row] for row in res.subtrees],
                "triples": [list(t) for t in res.triples],
            }
        res = complementary_split(forest)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK, {
        "pairs": [[sorted(a), sorted(b)] for a, b in res.pairs],
        "X": sorted(res.X),
        "Y": sorted(res.Y),
    }


def _cmd_verify(cfg: RunConfig, _obj) -> tuple[int, object]:
    from .acceptance import run_all

    only = _int_list(cfg.get("only"))
    results = run_all(seed=cfg.get("seed"), scale=cfg.get("scale", "desk"), only=only)
    for r in results:
        print(r.line(), file=sys.stderr if cfg.output is None else sys.stdout, flush=True)
    status = EXIT_OK if all(r.passed for r in results) else EXIT_FAILED
    return status, {
        "passed": sum(r.passed for r in results),
        "total": len(results),
        "checks": sum(r.checks for r in results),
        "criteria": [r.to_json_obj() for r in results],
    }


HANDLERS = {
    "gen": (_cmd_gen, False),
    "detect": (_cmd_detect, True),
    "planarity": (_cmd_planarity, True),
    "genus": (_cmd_genus, True),
    "bridges": (_cmd_bridges, True),
    "planarize": (_cmd_planarize, True),
    "trees": (_cmd_trees, True),
    "verify": (_cmd_verify, False),
}


def _emit(report, cfg: RunConfig) -> None:
    if isinstance(report, Graph):
        text = report.to_dot() if cfg.get("dot") else report.to_json()
    else:
        text = json.dumps(report, default=_json_default)
    if cfg.output is None or cfg.output == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")


def _json_default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, SplitLog):
        return o.to_json_obj()
    if hasattr(o, "to_json_obj"):
        return o.to_json_obj()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def run(cfg: RunConfig) -> tuple[int, object]:
    """Execute one command; returns the exit status and the JSON-able report."""
    cfg.params.setdefault("budget", None)
    if cfg.params["budget"] is None:
        cfg.params["budget"] = default_budget()
    handler, reads = HANDLERS[cfg.command]
    obj = _read_json(cfg.input) if reads else None
    return handler(cfg, obj)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="input JSON path (stdin when omitted)")
    common.add_argument("-o", "--output", help="output path (stdout when omitted)")
    common.add_argument("--k", type=int)
    common.add_argument("--i", type=int)
    common.add_argument("--cap", type=int, help="search cap (genus rotations, minor host size)")
    common.add_argument("--budget", type=int, help=f"oracle budget; default ${BUDGET_ENV} or {DEFAULT_BUDGET}")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="kuragenus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("gen", parents=[common], help="emit a (k,i)-Kuratowski graph")
    gen.add_argument("--pieces", help="comma separated piece kinds, e.g. k5,k33")
    gen.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    det = sub.add_parser("detect", parents=[common], help="find a (k,i)-Kuratowski minor")
    det.add_argument("--junction", action="store_true", help="search subgraph junctions instead")
    sub.add_parser("planarity", parents=[common], help="planarity certificate")
    sub.add_parser("genus", parents=[common], help="orientable genus with a witnessing rotation")
    br = sub.add_parser("bridges", parents=[common], help="bridges of a cycle and their conflicts")
    br.add_argument("--cycle", required=True, help="comma separated cycle vertices")
    br.add_argument("--ends", help="the two cycle vertices splitting it into P1 and P2")
    pl = sub.add_parser("planarize", parents=[common], help="split apex vertices until planar")
    pl.add_argument("--apex", help="comma separated apex set (overrides apex_set in the input)")
    pl.add_argument("--exact", action="store_true", help="use the exhaustive oracle")
    sub.add_parser("trees", parents=[common], help="complementary split, or disjoint triples with --k")
    ver = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    ver.add_argument("--scale", choices=("desk", "quick"), default="desk")
    ver.add_argument("--only", help="comma separated criterion numbers")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "input", "output")}
    try:
        cfg = RunConfig(args.command, args.input, args.output, params)
        status, report = run(cfg)
        _emit(report, cfg)
        return status
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
