"""Command-line entry point: validation, audits, gallery, fuzzing, reports.

JSON is the source of truth; markdown is derived from it.  Identical run
configurations (including the seed) produce byte-identical JSON reports:
no timestamps, sorted keys, deterministic instance streams, and
aggregation in instance order regardless of the worker pool.

Exit codes: 0 success; 1 fact or audit failure; 2 parse/usage error;
3 precondition failure.  The worker pool size comes from QML_WORKERS
(default 1, serial).
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .derived import derived_functions
from .extreal import ZERO
from .family import FamilySpace, family_from_dict
from .gallery import GALLERY_NAMES, build, verify
from .generate import instance_stream
from .nets import PreconditionError
from .order import suprema
from .space import FiniteSpace, SpaceError, derive, space_to_dict, validate
from .theorems import STATEMENTS, AuditContext, AuditOptions, audit
from .topology import is_complete

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple = ()
    seed: int = 0
    count: int = 100
    n: int = 6
    cutoff: int = 50
    fmt: str = "json"
    theorems: tuple = STATEMENTS
    second: str | None = None
    out: str | None = None
    workers: int = 1

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": list(self.inputs),
                "seed": self.seed, "count": self.count, "n": self.n,
                "cutoff": self.cutoff, "format": self.fmt,
                "theorems": list(self.theorems), "second": self.second}


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(cfg: RunConfig, payload: dict, renderer) -> None:
    if cfg.fmt == "markdown":
        text = renderer(payload)
    else:
        text = canonical_json(payload)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_any_space(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise SpaceError(f"invalid JSON in {path}: {e}") from None
    if "rule" in data:
        return family_from_dict(data)
    from .space import space_from_dict
    return space_from_dict(data)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def run_check(cfg: RunConfig) -> int:
    space = _load_any_space(cfg.inputs[0])
    if isinstance(space, FamilySpace):
        comp = is_complete(space)
        payload = {
            "command": "check",
            "input": cfg.inputs[0],
            "kind": "family",
            "space": space.to_dict(),
            "completeness": comp.to_dict(),
            "derived": None,
        }
        _emit(cfg, payload, _render_check_md)
        return EXIT_OK
    v = validate(space)
    payload = {
        "command": "check",
        "input": cfg.inputs[0],
        "kind": "finite",
        "space": space_to_dict(space),
        "validation": {
            "is_distance": v.is_distance,
            "is_hemimetric": v.is_hemimetric,
            "is_symmetric": v.is_symmetric,
            "is_metric": v.is_metric,
            "violations": [list(t) for t in v.violations[:20]],
        },
        "derived": derived_functions(space).to_dict() if v.is_distance else None,
        "completeness": is_complete(space).to_dict() if v.is_distance else None,
    }
    _emit(cfg, payload, _render_check_md)
    return EXIT_OK if v.is_distance else EXIT_FAILURE


def _render_check_md(p: dict) -> str:
    lines = [f"# check {p['input']}", ""]
    if p["kind"] == "family":
        lines.append(f"- rule: {p['space']['rule']} (cutoff {p['space']['cutoff']})")
        comp = p["completeness"]
        lines.append(f"- complete: {comp['complete']}")
        lines.append(f"- rejection witnesses: {len(comp['rejections'])}")
    else:
        for k, v in sorted(p["validation"].items()):
            if k != "violations":
                lines.append(f"- {k}: {v}")
        if p["completeness"]:
            lines.append(f"- complete: {p['completeness']['complete']}")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

def run_audit(cfg: RunConfig) -> int:
    space = _load_any_space(cfg.inputs[0])
    if isinstance(space, FamilySpace):
        raise PreconditionError(
            "audit runs on finite space files; use the gallery command for "
            "finitely presented fixtures")
    second = None
    if cfg.second:
        second = _load_any_space(cfg.second)
        if isinstance(second, FamilySpace):
            raise PreconditionError("the second distance must be a finite space")
    opts = AuditOptions(statements=cfg.theorems, second=second)
    report = audit(space, opts)
    payload = {
        "command": "audit",
        "input": cfg.inputs[0],
        "second": cfg.second,
        "report": report.to_dict(),
    }
    _emit(cfg, payload, _render_audit_md)
    return EXIT_OK if report.ok else EXIT_FAILURE


def _render_audit_md(p: dict) -> str:
    lines = [f"# audit {p['input']}", "",
             "| statement | hypotheses met | conclusion |",
             "|---|---|---|"]
    for e in p["report"]["entries"]:
        concl = ("vacuous" if e["vacuous"]
                 else ("verified" if e["conclusion_verified"] else "FAILED"))
        lines.append(f"| {e['statement']} | {e['hypotheses_met']} | {concl} |")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# gallery
# ---------------------------------------------------------------------------

def run_gallery(cfg: RunConfig) -> int:
    name = cfg.inputs[0]
    fixture = build(name, cfg.cutoff)
    report = verify(fixture)
    payload = {"command": "gallery", "report": report.to_dict()}
    _emit(cfg, payload, _render_gallery_md)
    return EXIT_OK if report.ok else EXIT_FAILURE


def _render_gallery_md(p: dict) -> str:
    r = p["report"]
    lines = [f"# gallery {r['fixture']} (cutoff {r['cutoff']})", "",
             "| fact | expected | actual | pass |", "|---|---|---|---|"]
    for f in r["facts"]:
        lines.append(f"| {f['id']} | {f['expected']} | {f['actual']} | {f['pass']} |")
    lines += ["", f"ok: {r['ok']}", ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# random sweep
# ---------------------------------------------------------------------------

def _sups_signature(space: FiniteSpace) -> str:
    """Hash of the metric-supremum landscape over small subsets."""
    n = space.n
    items = []
    for size in (1, 2):
        for pts in itertools.combinations(range(n), size):
            res = suprema(space, list(pts))
            items.append([list(pts), sorted(res.d_sups)])
    return hashlib.sha256(json.dumps(items, sort_keys=True).encode()).hexdigest()


def _order_signature(space: FiniteSpace) -> str:
    return hashlib.sha256(json.dumps(
        [space.n, list(space.zero_up)]).encode()).hexdigest()


def _instance_payload(args) -> dict:
    i, kind, space, second, statements, cap = args
    opts = AuditOptions(statements=statements, second=second, subset_cap=cap)
    e_space = second if second is not None else derive(space, "join")
    ctx = AuditContext(space, e_space, cap)
    report = audit(space, opts, ctx=ctx)
    dfs = ctx.dfs
    chain_ok = all(
        dfs.d_Phi(r) <= dfs.d_F(r) <= dfs.d_low(r)
        for r in (ZERO,) + dfs.d_F.cuts)
    degenerate_ok = dfs.d_F == dfs.d_low
    dphi_strict = dfs.d_Phi != dfs.d_F
    # open-question counterexample candidate: composed-shape instance with
    # both hypotheses holding but completeness failing
    mainq = False
    if kind == "value_pair":
        odc = ctx.order_directed_complete_report.complete
        mainq = bool(odc and ctx.e_complete and not ctx.complete)
    # two-distance statements satisfied with e distinct from the join of d
    nonjoin = False
    if second is not None:
        by_name = {e.statement: e for e in report.entries}
        entry = by_name.get("completeness_criterion_3")
        if entry is not None and entry.hypotheses_met:
            nonjoin = second.matrix != derive(space, "join").matrix
    return {
        "index": i,
        "kind": kind,
        "entries": [e.to_dict() for e in report.entries],
        "chain_ok": chain_ok,
        "degenerate_ok": degenerate_ok,
        "dphi_strictly_below": dphi_strict,
        "order_sig": _order_signature(space),
        "sups_sig": _sups_signature(space),
        "mainq_candidate": mainq,
        "nonjoin_two_distance": nonjoin,
    }


def run_random(cfg: RunConfig) -> int:
    tasks = [(i, kind, space, second, cfg.theorems, 12)
             for i, kind, space, second in instance_stream(cfg.seed, cfg.n, cfg.count)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            payloads = list(pool.map(_instance_payload, tasks, chunksize=16))
    else:
        payloads = [_instance_payload(t) for t in tasks]
    payloads.sort(key=lambda p: p["index"])

    summary = {}
    failures = []
    chain_violations = 0
    degeneracy_violations = 0
    dphi_separations = 0
    mainq_candidates = 0
    nonjoin_two_distance = 0
    order_groups: dict = {}
    same_order_different_sups = 0
    for p in payloads:
        for e in p["entries"]:
            s = summary.setdefault(e["statement"], {
                "instances": 0, "hypotheses_met": 0, "verified": 0,
                "vacuous": 0, "failures": 0})
            s["instances"] += 1
            if e["vacuous"]:
                s["vacuous"] += 1
            else:
                s["hypotheses_met"] += 1
                if e["conclusion_verified"]:
                    s["verified"] += 1
                else:
                    s["failures"] += 1
                    failures.append({"instance": p["index"], "kind": p["kind"],
                                     "entry": e})
        if not p["chain_ok"]:
            chain_violations += 1
        if not p["degenerate_ok"]:
            degeneracy_violations += 1
        if p["dphi_strictly_below"]:
            dphi_separations += 1
        if p["mainq_candidate"]:
            mainq_candidates += 1
        if p["nonjoin_two_distance"]:
            nonjoin_two_distance += 1
        prev = order_groups.get(p["order_sig"])
        if prev is not None and prev != p["sups_sig"]:
            same_order_different_sups += 1
        order_groups.setdefault(p["order_sig"], p["sups_sig"])

    payload = {
        "command": "random",
        "config": cfg.to_dict(),
        "instances_audited": len(payloads),
        "summary": dict(sorted(summary.items())),
        "failures": failures,
        "derived_chain_violations": chain_violations,
        "finite_degeneracy_violations": degeneracy_violations,
        "searches": {
            "d_phi_strictly_below_d_F": dphi_separations,
            "same_order_different_sups": same_order_different_sups,
            "composed_shape_counterexamples": mainq_candidates,
            "two_distance_met_with_nonjoin_e": nonjoin_two_distance,
        },
    }
    payload["content_hash"] = hashlib.sha256(
        canonical_json(payload).encode()).hexdigest()
    _emit(cfg, payload, _render_random_md)
    bad = bool(failures) or chain_violations or degeneracy_violations
    return EXIT_FAILURE if bad else EXIT_OK


def _render_random_md(p: dict) -> str:
    lines = [f"# random sweep (n={p['config']['n']}, count={p['config']['count']}, "
             f"seed={p['config']['seed']})", "",
             "| statement | audited | non-vacuous | verified | failures |",
             "|---|---|---|---|---|"]
    for stmt, s in p["summary"].items():
        lines.append(f"| {stmt} | {s['instances']} | {s['hypotheses_met']} | "
                     f"{s['verified']} | {s['failures']} |")
    lines += ["",
              f"- derived chain violations: {p['derived_chain_violations']}",
              f"- searches: {json.dumps(p['searches'], sort_keys=True)}",
              f"- content hash: {p['content_hash']}", ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# report (merge JSON outputs to markdown)
# ---------------------------------------------------------------------------

def run_report(cfg: RunConfig) -> int:
    sections = []
    for path in cfg.inputs:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as e:
                raise SpaceError(f"invalid JSON in {path}: {e}") from None
        cmd = data.get("command", "unknown")
        if cmd == "gallery":
            sections.append(_render_gallery_md(data))
        elif cmd == "audit":
            sections.append(_render_audit_md(data))
        elif cmd == "random":
            sections.append(_render_random_md(data))
        elif cmd == "check":
            sections.append(_render_check_md(data))
        else:
            sections.append(f"# {path}\n\n```\n{canonical_json(data)}```\n")
    text = "\n".join(sections)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qml",
        description="Exact audits of non-symmetric distance spaces")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "markdown"), default="json")
        p.add_argument("--out", default=None, help="write to file instead of stdout")

    p_check = sub.add_parser("check", help="validate a space file and derive its functions")
    p_check.add_argument("space_file")
    common(p_check)

    p_audit = sub.add_parser("audit", help="run theorem audits on a space file")
    p_audit.add_argument("space_file")
    p_audit.add_argument("--theorems", nargs="+", choices=STATEMENTS, default=None)
    p_audit.add_argument("--second-distance", default=None)
    common(p_audit)

    p_gal = sub.add_parser("gallery", help="build and verify a named fixture")
    p_gal.add_argument("name", choices=GALLERY_NAMES)
    p_gal.add_argument("--cutoff", type=int, default=50)
    p_gal.add_argument("--json", action="store_true", help="force JSON output")
    common(p_gal)

    p_rand = sub.add_parser("random", help="seeded random audit sweep")
    p_rand.add_argument("--n", type=int, default=6)
    p_rand.add_argument("--count", type=int, default=1000)
    p_rand.add_argument("--seed", type=int, default=0)
    p_rand.add_argument("--theorems", nargs="+", choices=STATEMENTS, default=None)
    common(p_rand)

    p_rep = sub.add_parser("report", help="merge prior JSON outputs to markdown")
    p_rep.add_argument("files", nargs="+")
    p_rep.add_argument("--out", default=None)
    return ap


def _config_from_args(args) -> RunConfig:
    workers = max(1, int(os.environ.get("QML_WORKERS", "1")))
    cmd = args.command
    if cmd == "check":
        return RunConfig("check", (args.space_file,), fmt=args.format,
                         out=args.out, workers=workers)
    if cmd == "audit":
        return RunConfig("audit", (args.space_file,), fmt=args.format,
                         theorems=tuple(args.theorems) if args.theorems else STATEMENTS,
                         second=args.second_distance, out=args.out, workers=workers)
    if cmd == "gallery":
        fmt = "json" if args.json else args.format
        return RunConfig("gallery", (args.name,), cutoff=args.cutoff,
                         fmt=fmt, out=args.out, workers=workers)
    if cmd == "random":
        return RunConfig("random", (), seed=args.seed, count=args.count, n=args.n,
                         fmt=args.format,
                         theorems=tuple(args.theorems) if args.theorems else STATEMENTS,
                         out=args.out, workers=workers)
    return RunConfig("report", tuple(args.files), out=args.out, workers=workers)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    cfg = _config_from_args(args)
    runners = {"check": run_check, "audit": run_audit, "gallery": run_gallery,
               "random": run_random, "report": run_report}
    try:
        return runners[cfg.command](cfg)
    except (SpaceError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
