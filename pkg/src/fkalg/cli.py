"""fkalg command-line interface.

Every flag may also be set through an environment variable named FKALG_<FLAG>,
e.g. FKALG_MAX_DEG=8 or FKALG_CACHE_DIR=~/.cache/fkalg.  Command-line values win.

Exit codes: 0 all checks passed, 1 a check failed, 2 a resource cap or the
wall-clock budget was hit, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import __version__
from .coxeter import (AffinePerm, ek_terms, format_reduced, is_primitive, length,
                      primitive_elements, primitive_length_formula, primitive_length_series,
                      primitive_pairing, reduced_word)
from .freealg import format_element, parse_element
from .graphs import Graph, appendix_catalog, parse_graph_spec
from .linalg import ResourceCapExceeded
from .mcr import algorithm_mcr, mcr_for_subgraph
from .pairing import FormQuotient, pair
from .relations import DEFAULT_N, SUITES, check_relation, suite
from .rewrite import RewriteSystem, SubalgebraBasis, TruncationError, cached_rewrite_system
from .series import (GradedSeries, NotExact, bracket_string, coxeter_number, dim_topdeg,
                     parse_brackets, weyl_data, weyl_ratio)

log = logging.getLogger("fkalg")

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3
SCHEMA_VERSION = 1

# truncation bounds for the ambient rewrite system; E_n is known to need no rules
# past these degrees for n <= 5 (top degree of E_4 is 12)
DEFAULT_REWRITE_DEGREE = {2: 2, 3: 6, 4: 13, 5: 29}


class UsageError(Exception):
    pass


class BudgetExceeded(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    max_deg: int | None = None
    cache_dir: str | None = None
    fmt: str = "text"
    threads: int = 1
    budget: float | None = None
    caps: dict = field(default_factory=dict)
    started: float = field(default_factory=time.monotonic)
    budget_hit: bool = False

    def __post_init__(self):
        if self.max_deg is not None and self.max_deg < 0:
            raise UsageError("--max-deg must be >= 0")
        if self.threads < 1:
            raise UsageError("--threads must be positive")
        if any(v <= 0 for v in self.caps.values()):
            raise UsageError("caps must be positive")

    def tick(self) -> None:
        if self.budget is not None and time.monotonic() - self.started > self.budget:
            raise BudgetExceeded(f"wall-clock budget of {self.budget:g}s exhausted")

    def rewrite(self, n: int, degree: int | None = None) -> RewriteSystem:
        d = degree or DEFAULT_REWRITE_DEGREE.get(n, 7)
        d = max(d, 2)
        enumerate_normal = n <= 4 or d <= 12
        return cached_rewrite_system(
            n, d, self.cache_dir, max_rules=self.caps.get("rules"),
            enumerate_normal=enumerate_normal,
            progress=lambda deg, dim, new: (log.info("n=%d degree %d: %s rules", n, deg, new),
                                            self.tick()))


def parse_caps(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, _, val = item.partition("=")
        if key not in ("rules", "rows") or not val.isdigit():
            raise UsageError(f"bad cap {item!r}; use rules=N,rows=N")
        out[key] = int(val)
    return out


# ---- output helpers ----------------------------------------------------------------------

class Report:
    """Collects rows of a pass/fail table and renders them in the chosen format."""

    def __init__(self, cfg: RunConfig, title: str):
        self.cfg = cfg
        self.title = title
        self.rows: list[dict] = []
        self.info: dict = {}

    def add(self, ok: bool | None, **fields) -> None:
        self.rows.append({"ok": ok, **fields})

    @property
    def passed(self) -> bool:
        return all(r["ok"] is not False for r in self.rows)

    def emit(self, out=None) -> int:
        out = out or sys.stdout
        fmt = self.cfg.fmt
        if fmt == "json":
            json.dump({"schema": SCHEMA_VERSION, "command": self.title, **self.info,
                       "rows": self.rows, "passed": self.passed}, out, indent=2, default=str)
            out.write("\n")
        elif fmt == "tsv":
            keys = list(dict.fromkeys(k for r in self.rows for k in r))
            out.write("\t".join(keys) + "\n")
            for r in self.rows:
                out.write("\t".join(_cell(r.get(k, "")) for k in keys) + "\n")
        else:
            for k, v in self.info.items():
                out.write(f"{k}: {_cell(v)}\n")
            for r in self.rows:
                tag = {True: "PASS", False: "FAIL", None: "----"}[r["ok"]]
                rest = "  ".join(f"{k}={_cell(v)}" for k, v in r.items() if k != "ok")
                out.write(f"{tag}  {rest}\n")
            if self.rows:
                good = sum(r["ok"] is True for r in self.rows)
                checked = sum(r["ok"] is not None for r in self.rows)
                if checked:
                    out.write(f"{good}/{checked} checks passed\n")
        return EXIT_OK if self.passed else EXIT_FAIL


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


def _graph(cfg: RunConfig, spec: str | None = None) -> Graph:
    spec = spec or cfg.graph
    if not spec:
        raise UsageError("a graph is required (--graph)")
    try:
        return parse_graph_spec(spec)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse graph {spec!r}: {exc}") from exc


def _dims_by_rewrite(cfg: RunConfig, g: Graph, n: int, max_deg: int) -> list[int]:
    rs = cfg.rewrite(n)
    sb = SubalgebraBasis(g.with_n(n), rs, row_cap=cfg.caps.get("rows"))
    dims = [1]
    for _ in range(max_deg):
        try:
            cfg.tick()
            dims.append(sb.extend())
        except BudgetExceeded:
            cfg.budget_hit = True
            break
        except TruncationError:
            log.warning("rewrite system for n=%d is truncated at degree %d", n, rs.max_degree)
            break
        if dims[-1] == 0:
            break
    return dims


def _dims_by_form(cfg: RunConfig, g: Graph, n: int, max_deg: int) -> list[int]:
    fq = FormQuotient(g.with_n(n), n, row_cap=cfg.caps.get("rows"))
    for _ in range(max_deg):
        try:
            cfg.tick()
        except BudgetExceeded:
            cfg.budget_hit = True
            break
        if fq.extend() == 0:
            break
    return fq.dims()


def _expectation_check(dims: Sequence[int], expect: GradedSeries) -> tuple[bool, str]:
    complete = dims[-1] == 0
    want = [expect[d] for d in range(len(dims))]
    if complete:
        ok = GradedSeries(dims) == expect
        return ok, "full profile" if ok else f"expected {list(expect)}"
    ok = list(dims) == want
    return ok, f"through degree {len(dims) - 1}" if ok else f"expected prefix {want}"


# ---- commands ----------------------------------------------------------------------------

def cmd_hilbert(cfg: RunConfig, args) -> int:
    g = _graph(cfg)
    n = args.n or g.n
    if n > 6:
        raise UsageError("ambient n above 6 is out of reach")
    default = 13 if n <= 4 else 6
    max_deg = default if cfg.max_deg is None else cfg.max_deg
    rep = Report(cfg, "hilbert")
    rep.info.update(graph=g.to_edge_list(), n=n, bound=max_deg)
    engines: list[tuple[str, Callable]] = [("rewrite", _dims_by_rewrite)]
    if not args.rewrite_only:
        engines.append(("form-rank", _dims_by_form))
    results = {}
    for name, fn in engines:
        dims = fn(cfg, g, n, max_deg)
        results[name] = dims
        complete = dims[-1] == 0
        row = {"engine": name, "dims": dims, "complete": complete}
        if complete:
            s = GradedSeries(dims)
            dim, top = dim_topdeg(s)
            row.update(dimension=dim, top_degree=top, factors=bracket_string(s) or "n/a")
        if name == "form-rank" and n >= 6:
            row["note"] = "lower bound"
        rep.add(None, **row)
    if len(results) == 2:
        a, b = results["rewrite"], results["form-rank"]
        k = min(len(a), len(b))
        rep.add(a[:k] == b[:k], check="engines agree", through=k - 1)
    if args.expect:
        try:
            expect = parse_brackets(args.expect)
        except (ValueError, NotExact) as exc:
            raise UsageError(f"bad --expect {args.expect!r}: {exc}") from exc
        ok, why = _expectation_check(results["rewrite"], expect)
        rep.add(ok, check=f"expect {args.expect}", detail=why)
    code = rep.emit()
    if cfg.budget_hit:
        print("fkalg: budget exhausted; the profiles above are partial", file=sys.stderr)
        return EXIT_CAP
    return code


def cmd_relcheck(cfg: RunConfig, args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    n = args.n or DEFAULT_N[args.suite]
    try:
        items = list(suite(args.suite, n))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    top = max(max(e.degrees()) for _, e in items)
    rs = cfg.rewrite(n, max(top, DEFAULT_REWRITE_DEGREE.get(n, 7)) if n <= 5 else top)
    rep = Report(cfg, "relcheck")
    rep.info.update(suite=args.suite, n=n)
    with ThreadPoolExecutor(cfg.threads) as pool:
        verdicts = list(pool.map(lambda it: check_relation(it[0], it[1], rs), items))
    for v in verdicts:
        rep.add(v.ok, relation=v.label, degree=v.degree, nf_zero=v.reduces_to_zero,
                orthogonal=v.orthogonal)
    return rep.emit()


def cmd_appendix(cfg: RunConfig, args) -> int:
    sizes = [args.vertices] if args.vertices else [2, 3, 4, 5]
    rep = Report(cfg, "appendix")
    rows = [e for e in appendix_catalog() if e.graph.n in sizes]
    if args.ids:
        wanted = set(args.ids.split(","))
        rows = [e for e in rows if e.id in wanted]
        if not rows:
            raise UsageError("no catalog rows selected")

    def run(entry):
        n = entry.graph.n
        bound = cfg.max_deg if cfg.max_deg is not None else (entry.top_degree + 1 if n <= 4 else 6)
        bound = min(bound, entry.top_degree + 1)
        dims = _dims_by_rewrite(cfg, entry.graph, n, bound)
        ok, why = _expectation_check(dims, entry.series)
        return entry, dims, ok, why

    with ThreadPoolExecutor(cfg.threads) as pool:
        results = list(pool.map(run, rows))
    for entry, dims, ok, why in results:
        rep.add(ok, id=entry.id, n=entry.graph.n, series=entry.brackets, dims=dims, detail=why)
    code = rep.emit()
    return EXIT_CAP if cfg.budget_hit else code


def cmd_mcr(cfg: RunConfig, args) -> int:
    g = _graph(cfg)
    max_deg = 12 if cfg.max_deg is None else cfg.max_deg
    if args.sup:
        sup = _graph(cfg, args.sup)
        n = args.n or sup.n
        try:
            res = mcr_for_subgraph(g.with_n(n), sup.with_n(n), max_deg, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        if not (args.other and args.edge):
            raise UsageError("give either --sup or both --other and --edge")
        h = _graph(cfg, args.other)
        i, j = (int(x) for x in args.edge.split("-"))
        n = args.n or max(g.n, h.n, i, j)
        try:
            res = algorithm_mcr(g.with_n(n), h.with_n(n), (i, j), max_deg, n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if cfg.fmt == "json":
        json.dump({"schema": SCHEMA_VERSION, "command": "mcr", **res.to_json()}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_OK
    rep = Report(cfg, "mcr")
    rep.info.update(profile=res.profile(), exact="yes" if res.exact else "lower bound",
                    stabilized=res.stabilized)
    for d, ws in enumerate(res.M):
        rep.add(None, degree=d, words=[w or "1" for w in res.to_json()["M"][d]])
    return rep.emit()


def cmd_pair(cfg: RunConfig, args) -> int:
    try:
        p = parse_element(args.left, args.n)
        q = parse_element(args.right, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = Report(cfg, "pair")
    rep.info["value"] = pair(p, q)
    return rep.emit()


def cmd_nf(cfg: RunConfig, args) -> int:
    try:
        e = parse_element(args.element, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    top = max(e.degrees(), default=0)
    rs = cfg.rewrite(args.n, max(top, DEFAULT_REWRITE_DEGREE.get(args.n, 7)) if args.n <= 5 else max(top, 2))
    rep = Report(cfg, "nf")
    rep.info["normal_form"] = format_element(rs.normal_form(e))
    return rep.emit()


def _weyl_type(text: str) -> tuple[str, int | None]:
    text = text.strip().upper()
    if text in ("E6", "E7", "E8"):
        return text, None
    kind, rank = text[:1], text[1:]
    if kind not in ("A", "D") or not rank.isdigit():
        raise UsageError(f"unknown Weyl type {text!r}; use A<r>, D<r>, E6, E7 or E8")
    return kind, int(rank)


def cmd_weyl(cfg: RunConfig, args) -> int:
    kind, rank = _weyl_type(args.type)
    try:
        data = weyl_data(kind, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ratio = weyl_ratio(data)
    dim, top = dim_topdeg(ratio)
    rep = Report(cfg, "weyl")
    rep.info.update(type=args.type, order=data.order, coxeter_number=coxeter_number(data),
                    ratio=bracket_string(ratio) or str(ratio),
                    dimension=dim, top_degree=top)
    if args.expect:
        try:
            want = parse_brackets(args.expect)
        except ValueError as exc:
            raise UsageError(f"bad --expect: {exc}") from exc
        rep.add(ratio == want, check=f"expect {args.expect}")
    return rep.emit()


def _parse_window(text: str, n: int | None) -> AffinePerm:
    try:
        w = tuple(int(x) for x in text.strip("[]").split(","))
        return AffinePerm(n or len(w), w)
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from exc


def cmd_affine(cfg: RunConfig, args) -> int:
    rep = Report(cfg, "affine")
    n = args.n
    if args.action == "primitives":
        if not n or n < 2:
            raise UsageError("affine primitives needs --n >= 2")
        prims = primitive_elements(n)
        rep.info.update(n=n, count=len(prims))
        for w in prims:
            rep.add(is_primitive(w), window=str(w), word=format_reduced(*reduced_word(w)),
                    length=length(w))
        if args.series:
            ok = primitive_length_series(n) == primitive_length_formula(n)
            rep.add(ok, check="length generating function")
        if args.pairing:
            for w in prims:
                rep.add(primitive_pairing(w) == 1, check="primitive pairing", window=str(w))
    elif args.action == "reduced":
        if not args.window:
            raise UsageError("affine reduced needs --window")
        w = _parse_window(args.window, n)
        rep.info.update(window=str(w), length=length(w), word=format_reduced(*reduced_word(w)))
    elif args.action == "ek":
        if not n or args.k is None or not 1 <= args.k < n:
            raise UsageError("affine ek needs --n and 1 <= --k < n")
        for lam, k, word in ek_terms(n, args.k):
            rep.add(None, partition=list(lam), word=format_reduced(k, word))
    else:
        raise UsageError(f"unknown affine action {args.action!r}")
    return rep.emit()


COMMANDS = {
    "hilbert": cmd_hilbert, "relcheck": cmd_relcheck, "appendix": cmd_appendix,
    "mcr": cmd_mcr, "pair": cmd_pair, "nf": cmd_nf, "weyl": cmd_weyl, "affine": cmd_affine,
}


# ---- argument parsing ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _env(name: str, default=None):
    return os.environ.get(f"FKALG_{name}", default)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", default=_env("GRAPH"),
                        help="family spec (A:4, cycle:5, star:4, complete:6, E6), catalog id, "
                             "edge list '1-2,2-3' or graph6")
    common.add_argument("--max-deg", type=int, default=_env("MAX_DEG"))
    common.add_argument("--expect", default=_env("EXPECT"),
                        help='bracket product such as "[2]^2[3]"')
    common.add_argument("--format", dest="fmt", choices=("text", "json", "tsv"),
                        default=_env("FORMAT", "text"))
    common.add_argument("--threads", type=int, default=int(_env("THREADS", "1")))
    common.add_argument("--cache-dir", default=_env("CACHE_DIR"))
    common.add_argument("--budget", type=float, default=_env("BUDGET"),
                        help="wall-clock cap in seconds")
    common.add_argument("--caps", default=_env("CAPS"), help="resource caps, e.g. rules=500,rows=20000")
    common.add_argument("--n", type=int, default=_env("N"), help="ambient number of vertices")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="fkalg", description="Exact computations in Fomin-Kirillov algebras.")
    p.add_argument("--version", action="version", version=f"fkalg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hilbert", parents=[common], help="graded dimensions of E_G")
    h.add_argument("--rewrite-only", action="store_true", help="skip the form-rank engine")

    r = sub.add_parser("relcheck", parents=[common], help="verify a relation family")
    r.add_argument("suite", help=", ".join(SUITES))

    a = sub.add_parser("appendix", parents=[common], help="compare against the graph catalog")
    a.add_argument("--vertices", type=int, choices=(2, 3, 4, 5))
    a.add_argument("--ids", help="comma-separated catalog ids")

    m = sub.add_parser("mcr", parents=[common], help="minimal coset representatives")
    m.add_argument("--sup", help="supergraph G+e; the complement is built automatically")
    m.add_argument("--other", help="the graph H when giving a raw partition")
    m.add_argument("--edge", help="the edge e as i-j")

    pr = sub.add_parser("pair", parents=[common], help="evaluate the bilinear form")
    pr.add_argument("left")
    pr.add_argument("right")

    nf = sub.add_parser("nf", parents=[common], help="normal form in E_n")
    nf.add_argument("element")

    w = sub.add_parser("weyl", parents=[common], help="Weyl-group ratio and dimension")
    w.add_argument("--type", required=True)

    af = sub.add_parser("affine", parents=[common], help="affine symmetric group utilities")
    af.add_argument("action", choices=("primitives", "reduced", "ek"))
    af.add_argument("--window")
    af.add_argument("--k", type=int)
    af.add_argument("--series", action="store_true", help="check the length generating function")
    af.add_argument("--pairing", action="store_true", help="check the primitive pairing")
    return p


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        max_deg = None if args.max_deg in (None, "") else int(args.max_deg)
        budget = None if args.budget in (None, "") else float(args.budget)
        n = None if args.n in (None, "") else int(args.n)
        args.n = n
        if args.command in ("pair", "nf") and not n:
            raise UsageError(f"{args.command} needs --n")
        cfg = RunConfig(args.command, args.graph, max_deg, args.cache_dir, args.fmt,
                        args.threads, budget, parse_caps(args.caps))
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"fkalg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"fkalg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapExceeded, BudgetExceeded) as exc:
        print(f"fkalg: {exc} (partial results discarded)", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
