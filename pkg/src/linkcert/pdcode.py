"""Text and JSON readers for link diagrams.

PD lines
    ``X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)``; square brackets are accepted as
    well, separators between terms are free.  Everything after ``%`` is a
    comment.  An optional ``name:`` prefix sets the diagram label.

Gauss lines
    ``GAUSS -1 2 -3 1 -2 3 / + + +``: signed crossing numbers along each
    component (negative = passing under), components separated by ``|``,
    then ``/`` and one sign per crossing (``+``/``-`` or ``1``/``-1``) in
    crossing-number order.

JSON
    ``{"crossings": [[a,b,c,d], ...], "signs": [...], "label": "..."}``.
    ``signs`` is optional; when given it must match the signs of the PD data.
"""

from __future__ import annotations

import json
import re
from typing import Iterator, Union

from .diagram import DiagramError, LinkDiagram

_TERM = re.compile(r"X\s*[\(\[]([^\)\]]*)[\)\]]")
_LABEL = re.compile(r"^\s*([^:]+?)\s*:\s*(?=[XxGg])")


class ParseError(DiagramError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


def strip_comment(text: str) -> str:
    return text.split("%", 1)[0].strip()


def parse_pd(text: str, label: str = "") -> LinkDiagram:
    body = strip_comment(text)
    m = _LABEL.match(body)
    if m:
        label = label or m.group(1)
        body = body[m.end():]
    if not body:
        raise ParseError("no crossings")
    crossings = []
    pos = 0
    for term in _TERM.finditer(body):
        gap = body[pos:term.start()].strip(" ,;\t")
        if gap:
            raise ParseError(f"malformed token {gap!r}")
        pos = term.end()
        parts = [p.strip() for p in term.group(1).split(",") if p.strip()]
        try:
            labels = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(f"malformed token {term.group(0)!r}") from None
        if len(labels) != 4:
            raise ParseError(f"crossing {term.group(0)} is not 4-valent")
        if any(x <= 0 for x in labels):
            raise ParseError(f"edge labels must be positive integers: {term.group(0)}")
        crossings.append(labels)
    tail = body[pos:].strip(" ,;\t")
    if tail:
        raise ParseError(f"malformed token {tail!r}")
    if not crossings:
        raise ParseError("no crossings")
    return LinkDiagram(tuple(crossings), label)


def parse_gauss(text: str, label: str = "") -> LinkDiagram:
    body = strip_comment(text)
    m = _LABEL.match(body)
    if m:
        label = label or m.group(1)
        body = body[m.end():]
    if not body.upper().startswith("GAUSS"):
        raise ParseError("Gauss code must start with GAUSS")
    body = body[5:]
    if "/" not in body:
        raise ParseError("Gauss code needs '/' followed by crossing signs")
    code, sign_text = body.split("/", 1)
    signs = []
    for tok in sign_text.replace(",", " ").split():
        if tok in ("+", "+1", "1"):
            signs.append(1)
        elif tok in ("-", "-1"):
            signs.append(-1)
        else:
            raise ParseError(f"malformed sign {tok!r}")
    comps = []
    for chunk in code.split("|"):
        try:
            seq = [int(t) for t in chunk.replace(",", " ").split()]
        except ValueError:
            raise ParseError(f"malformed token in {chunk.strip()!r}") from None
        if seq:
            comps.append(seq)
    n = len(signs)
    if n == 0:
        raise ParseError("no crossings")
    visits: dict[int, list] = {k: [] for k in range(1, n + 1)}
    # edges are numbered consecutively along each component
    label_no = 0
    passes = []
    for seq in comps:
        first = label_no + 1
        for i, x in enumerate(seq):
            if x == 0 or abs(x) > n:
                raise ParseError(f"crossing number {x} out of range 1..{n}")
            incoming = first + (i - 1) % len(seq)
            outgoing = first + i % len(seq)
            passes.append((abs(x), x > 0, incoming, outgoing))
        label_no += len(seq)
    for k, over, a, b in passes:
        visits[k].append((over, a, b))
    crossings = []
    for k in range(1, n + 1):
        v = visits[k]
        if len(v) != 2 or v[0][0] == v[1][0]:
            raise ParseError(f"crossing {k} must be passed once over and once under")
        (_, ua, uc), (_, ox, oy) = sorted(v, key=lambda t: t[0])
        if signs[k - 1] > 0:
            crossings.append((ua, oy, uc, ox))
        else:
            crossings.append((ua, ox, uc, oy))
    return LinkDiagram(tuple(crossings), label)


def parse_json(obj: Union[str, dict]) -> LinkDiagram:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}") from None
    if not isinstance(obj, dict) or "crossings" not in obj:
        raise ParseError("JSON diagram needs a 'crossings' field")
    crossings = obj["crossings"]
    if not crossings:
        raise ParseError("no crossings")
    for c in crossings:
        if not isinstance(c, (list, tuple)) or len(c) != 4:
            raise ParseError(f"crossing {c} is not 4-valent")
    d = LinkDiagram(tuple(tuple(c) for c in crossings), obj.get("label", ""))
    signs = obj.get("signs")
    if signs is not None and tuple(signs) != d.signs:
        raise ParseError("signs do not match the crossing data")
    return d


def parse_diagram(text: str, label: str = "") -> LinkDiagram:
    """Read one diagram from PD, Gauss, or JSON text."""
    body = strip_comment(text)
    if not body:
        raise ParseError("no crossings")
    if body.startswith("{"):
        return parse_json(body)
    head = _LABEL.sub("", body, count=1).lstrip()
    if head.upper().startswith("GAUSS"):
        return parse_gauss(text, label)
    return parse_pd(text, label)


def iter_file(text: str) -> Iterator[tuple[int, Union[LinkDiagram, ParseError]]]:
    """Yield ``(line number, diagram or error)`` for every non-blank line."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        items = json.loads(stripped)
        for i, item in enumerate(items, 1):
            try:
                yield i, parse_json(item)
            except DiagramError as exc:
                yield i, ParseError(str(exc), i)
        return
    for i, line in enumerate(text.splitlines(), 1):
        if not strip_comment(line):
            continue
        try:
            yield i, parse_diagram(line)
        except ParseError as exc:
            yield i, ParseError(str(exc), i)
        except DiagramError as exc:
            yield i, ParseError(str(exc), i)
