"""Command line front end: ``linkcert analyze|certify|cusps|oracle FILE...``.

Every input line (or JSON list entry) is one diagram.  Bad lines are
reported with their line number and the rest are still processed.  JSON
output is sorted and carries no timings, so repeated runs are identical.

Exit codes: 0 all analyzed or certified, 1 something inconclusive or an
oracle failure, 2 an input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

from . import __version__
from .augment import augment
from .certify import THEOREMS, certify
from .diagram import DiagramError, LinkDiagram
from .oracles import MAX_ORACLE_CROSSINGS, prime_oracle, twist_reduced_oracle
from .pdcode import ParseError, iter_file
from .polyhedra import cusp_tori, decompose
from .svg import cusp_svg

log = logging.getLogger("linkcert")

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    format: str = "json"
    out: Optional[str] = None
    theorem: str = "all"
    fill: Optional[tuple[int, ...]] = None
    limit: Optional[int] = None
    jobs: int = 1
    exhaustive: bool = False

    def __post_init__(self):
        if self.limit is not None and self.limit <= 0:
            raise ValueError("--limit must be positive")
        if self.jobs <= 0:
            raise ValueError("--jobs must be positive")


def plain(obj):
    """Turn dataclasses, sets and tuples into JSON-ready values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(plain(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    return obj


# ---------------------------------------------------------------------------
# one diagram at a time; each returns (record, status)


def analyze_one(d: LinkDiagram, cfg: RunConfig):
    rec = {
        "crossings": d.num_crossings,
        "components": d.num_components,
        "connected": d.is_connected,
        "twist_regions": [
            {"index": r.index, "count": r.count, "handedness": r.handedness,
             "crossings": list(r.crossings), "cyclic": r.cyclic}
            for r in d.twist_regions
        ],
        "component_stats": [{"component": s.component, "visits": s.visits}
                            for s in d.component_stats()],
    }
    if d.is_connected:
        p = d.is_prime()
        rec["prime"] = {"value": p.value, "witness": plain(p.witness)}
        if p:
            tr = d.is_twist_reduced()
            rec["twist_reduced"] = {"value": tr.value, "witness": plain(tr.witness)}
    return rec, EXIT_OK


def certify_one(d: LinkDiagram, cfg: RunConfig):
    theorem = cfg.theorem
    fill = cfg.fill
    if theorem == "all" and fill is not None and not 0 < len(set(fill)) < d.num_components:
        fill = None
    certs = certify(d, theorem, fill)
    status = EXIT_OK if all(c.certified for c in certs) else EXIT_INCONCLUSIVE
    return {"certificates": [c.to_json() for c in certs]}, status


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_")


def cusps_one(d: LinkDiagram, cfg: RunConfig, line: int):
    cusps = cusp_tori(decompose(augment(d)))
    stem = _slug(d.label) or "diagram"
    written = []
    for c in cusps:
        name = f"{stem}_line{line}_cusp{c.index}.svg"
        if cfg.out:
            Path(cfg.out, name).write_text(cusp_svg(c, f"{d.label} cusp {c.index}"))
        written.append(name)
    return {"cusps": [c.to_json() for c in cusps], "svg": written if cfg.out else []}, EXIT_OK


def oracle_one(d: LinkDiagram, cfg: RunConfig):
    from .normalsurf import (
        GaussBonnetError,
        area_oracle,
        faulty_surface,
        gauss_bonnet,
        standard_surfaces,
        verify_angled,
    )

    checks = []
    partial = []

    def add(name, passed, detail):
        checks.append({"check": name, "pass": bool(passed), "detail": detail})

    def done(extra=None):
        rec = {"checks": checks, "partial": partial, **(extra or {})}
        ok = all(c["pass"] for c in checks) and not partial
        return rec, EXIT_OK if ok else EXIT_INCONCLUSIVE

    if not d.is_connected:
        return {"checks": checks, "skipped": "split diagram"}, EXIT_INPUT
    prime = bool(d.is_prime())
    reduced = prime and bool(d.is_twist_reduced())
    if d.num_crossings > MAX_ORACLE_CROSSINGS:
        partial.append(f"prime and twist-reduced oracles skipped: {d.num_crossings} crossings, "
                       f"limit {MAX_ORACLE_CROSSINGS}")
    else:
        po = prime_oracle(d)
        add("prime-oracle", prime == po, {"is_prime": prime, "oracle": po})
        if prime:
            to = twist_reduced_oracle(d)
            add("twist-reduced-oracle", reduced == to, {"is_twist_reduced": reduced, "oracle": to})
    if not (reduced and len(d.twist_regions) >= 2):
        return done({"skipped": "no augmented link (needs prime, twist-reduced, t >= 2)"})
    dec = decompose(augment(d))
    for poly in range(len(dec.polys)):
        rep = area_oracle(dec, poly, exhaustive=cfg.exhaustive, max_len=cfg.limit)
        if not rep.complete:
            partial.append(f"{rep.polyhedron}: normal curve enumeration stopped at the length limit")
        add(f"pos-area {rep.polyhedron}", rep.passed, rep.to_json())
    ang = verify_angled(dec, cfg.limit)
    add("angled-polyhedra", ang.passed, ang.to_json())
    for s in standard_surfaces(dec):
        r = gauss_bonnet(s)
        add("gauss-bonnet", r.holds, r.to_json())
    try:
        gauss_bonnet(faulty_surface(dec))
        add("faulty-gluing-rejected", False, "faulty fixture was accepted")
    except GaussBonnetError as exc:
        add("faulty-gluing-rejected", True, str(exc))
    if not ang.complete:
        partial.append("angle check stopped at the length limit")
    return done()


def run_item(args):
    cfg, source, line, d = args
    base = {"source": source, "line": line, "label": d.label, "pd": d.to_pd()}
    try:
        if cfg.command == "analyze":
            rec, status = analyze_one(d, cfg)
        elif cfg.command == "certify":
            rec, status = certify_one(d, cfg)
        elif cfg.command == "cusps":
            rec, status = cusps_one(d, cfg, line)
        else:
            rec, status = oracle_one(d, cfg)
    except (DiagramError, ValueError) as exc:
        log.info("%s:%d: %s", source, line, exc)
        return {**base, "error": str(exc)}, EXIT_INPUT
    return {**base, **rec}, status


# ---------------------------------------------------------------------------
# batch driver


def read_items(cfg: RunConfig):
    """Yield ``(source, line, diagram or error message)`` in input order."""
    for path in cfg.inputs:
        try:
            text = sys.stdin.read() if path == "-" else Path(path).read_text()
        except OSError as exc:
            yield path, 0, f"cannot read: {exc.strerror}"
            continue
        try:
            for line, item in iter_file(text):
                yield path, line, (item.message if isinstance(item, ParseError) else item)
        except json.JSONDecodeError as exc:
            yield path, exc.lineno, f"invalid JSON: {exc.msg}"


def run(cfg: RunConfig) -> tuple[list[dict], int]:
    if cfg.command == "cusps" and cfg.out:
        Path(cfg.out).mkdir(parents=True, exist_ok=True)
    items = list(read_items(cfg))
    work = [(cfg, s, n, x) for s, n, x in items if isinstance(x, LinkDiagram)]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            done = iter(pool.map(run_item, work))
    else:
        done = map(run_item, work)
    results, status = [], EXIT_OK
    for source, line, x in items:
        if isinstance(x, LinkDiagram):
            rec, st = next(done)
        else:
            log.warning("%s:%d: %s", source, line, x)
            rec, st = {"source": source, "line": line, "error": x}, EXIT_INPUT
        results.append(rec)
        status = max(status, st)
    return results, status


def render_json(cfg: RunConfig, results: list[dict]) -> str:
    doc = {"linkcert": __version__, "command": cfg.command, "results": results}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _text_record(cfg: RunConfig, rec: dict) -> list[str]:
    where = f"{rec['source']}:{rec['line']}"
    head = f"{where} {rec.get('label') or ''}".rstrip()
    if "error" in rec:
        return [f"{where}: error: {rec['error']}"]
    out = [head]
    if cfg.command == "analyze":
        counts = ", ".join(str(r["count"]) for r in rec["twist_regions"])
        out.append(f"  crossings {rec['crossings']}, components {rec['components']}, "
                   f"twist regions {len(rec['twist_regions'])} with counts {counts}")
        if "prime" in rec:
            out.append(f"  prime: {rec['prime']['value']}")
        if "twist_reduced" in rec:
            out.append(f"  twist-reduced: {rec['twist_reduced']['value']}")
        visits = ", ".join(str(s["visits"]) for s in rec["component_stats"])
        out.append(f"  twist regions per component: {visits}")
    elif cfg.command == "certify":
        for c in rec["certificates"]:
            out.append(f"  {c['theorem']}: {c['verdict']}")
            for item in c["checklist"]:
                mark = "ok  " if item["pass"] else "FAIL"
                out.append(f"    [{mark}] {item['item']}: {item['observed']}")
            for b in c["bounds"]:
                strict = " (strict)" if b["strict"] else ""
                out.append(f"    bound cusp {b['cusp']} {b['kind']}: {b['value']}{strict}")
            if c["theorem"] == "genus-bound" and c.get("genus_lower_bound") is not None:
                out.append(f"    genus >= {c['genus_lower_bound']}")
            out.append(f"    {c['conclusion']}")
    elif cfg.command == "cusps":
        for c in rec["cusps"]:
            lon = c["longitude"]
            out.append(f"  cusp {c['index']} {c['kind']} {c['owner']}: {c['tiles']} tiles, "
                       f"meridian ({c['meridian']['w']}, {c['meridian']['s']}), "
                       f"longitude ({lon['w']}, {lon['s']})")
        out.extend(f"  wrote {name}" for name in rec["svg"])
    else:
        for c in rec["checks"]:
            out.append(f"  {c['check']}: {'pass' if c['pass'] else 'FAIL'}{_check_note(c)}")
        if "skipped" in rec:
            out.append(f"  skipped: {rec['skipped']}")
        out.extend(f"  partial: {p}" for p in rec.get("partial", []))
    return out


def _check_note(c: dict) -> str:
    d = c["detail"]
    if c["check"].startswith("pos-area"):
        part = "" if d["complete"] else ", partial"
        return f" ({d['curves']} curves and {d['arc_disks']} arc disks checked{part})"
    if c["check"] == "angled-polyhedra":
        return f" ({d['edge_classes']} edge classes, {d['curves_checked']} dual curves)"
    if c["check"] == "gauss-bonnet":
        return f" ({d['surface']}: a = {d['area_pi_over_6']} pi/6, chi = {d['chi']})"
    return ""


def render_text(cfg: RunConfig, results: list[dict]) -> str:
    lines = [f"linkcert {__version__} {cfg.command}"]
    for rec in results:
        lines.extend(_text_record(cfg, rec))
    return "\n".join(lines) + "\n"


def _fill(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--fill takes component numbers like 0,2, not {text!r}")


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"linkcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("inputs", nargs="+", help="PD, Gauss or JSON files; - reads stdin")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
        return p

    common(sub.add_parser("analyze", help="twist regions, primality, twist reduction"))
    c = common(sub.add_parser("certify", help="theorem certificates"))
    c.add_argument("--theorem", choices=THEOREMS + ("all",), default="all")
    c.add_argument("--fill", type=_fill, help="components to fill for partial fillings, e.g. 0,2")
    s = common(sub.add_parser("cusps", help="cusp tori and their SVG pictures"))
    s.add_argument("--out", help="directory for the SVG files")
    o = common(sub.add_parser("oracle", help="brute-force checks on small inputs"))
    o.add_argument("--limit", type=_positive, help="maximum normal curve length to enumerate")
    o.add_argument("--exhaustive", action="store_true",
                   help="enumerate every normal curve, not only those of weight 4 or less")
    return parser


def _setup_logging():
    level = os.environ.get("LINKCERT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv=None) -> int:
    _setup_logging()
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        inputs=tuple(ns.inputs),
        format=ns.format,
        out=getattr(ns, "out", None),
        theorem=getattr(ns, "theorem", "all"),
        fill=getattr(ns, "fill", None),
        limit=getattr(ns, "limit", None),
        jobs=ns.jobs,
        exhaustive=getattr(ns, "exhaustive", False),
    )
    results, status = run(cfg)
    render = render_json if cfg.format == "json" else render_text
    sys.stdout.write(render(cfg, results))
    return status


if __name__ == "__main__":
    sys.exit(main())
