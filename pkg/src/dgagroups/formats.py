"""Text formats: edge lists (.edges), group tables (.gtab) and DGAs (.dga).

All three serializers emit a canonical form that their parsers read back
to an equal object, and re-serializing gives the same bytes.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, GeneratorTable, format_element, normalize_product
from .differential import Derivation
from .encoder import DGAPresentation
from .errors import ParseError
from .graph import Graph
from .groups import GroupTable


def _content_lines(text):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


# -- edges -----------------------------------------------------------------

def parse_edges(text: str) -> Graph:
    """Parse ``u v`` edge lines and ``vertex u`` declarations; duplicates collapse."""
    vertices, edges = [], []
    for n, line in _content_lines(text):
        parts = line.split()
        if len(parts) == 2 and parts[0] == "vertex":
            vertices.append(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v' or 'vertex u', got {line!r}", n)
        u, v = parts
        if u == v:
            raise ParseError(f"loop at {u!r}", n)
        vertices += [u, v]
        edges.append((u, v))
    if not vertices:
        raise ParseError("graph has no vertices")
    return Graph(vertices, edges)


def format_edges(g: Graph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"{u} {v}" for u, v in g.edge_names()]
    return "\n".join(lines) + "\n"


# -- group tables ----------------------------------------------------------

def parse_gtab(text: str) -> GroupTable:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty group table")
    n_line, first = rows[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"first line must be the order, got {first!r}", n_line) from None
    if n <= 0:
        raise ParseError("order must be positive", n_line)
    body = rows[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}")
    table = []
    for ln, line in body:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", ln) from None
        if len(row) != n or any(not 0 <= x < n for x in row):
            raise ParseError(f"row must hold {n} indices in [0, {n})", ln)
        table.append(tuple(row))
    return GroupTable(tuple(table))


def format_gtab(t: GroupTable) -> str:
    lines = [str(t.order)] + [" ".join(str(x) for x in row) for row in t.table]
    return "\n".join(lines) + "\n"


# -- polynomials and DGAs --------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][\w.:]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("sym", sym))
        pos = m.end()
    return out


def parse_element(table: GeneratorTable, text: str) -> Element:
    """Parse signed terms ``c * g1^e1 g2^e2 ...``.

    ``c`` is ``p`` or ``p/q`` and may be omitted; ``^1`` may be omitted;
    factors are separated by whitespace or ``*``.  Factors may come in any
    order; they are normalized with the Koszul sign.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    result = Element.zero(table)
    first = True
    while pos < len(toks):
        kind, val = peek()
        sign = 1
        if kind == "sym" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {val!r}")
        first = False
        coeff = Fraction(1)
        have_coeff = False
        kind, val = peek()
        if kind == "num":
            take()
            coeff = Fraction(val)
            have_coeff = True
            if peek() == ("sym", "/"):
                take()
                kind, den = peek()
                if kind != "num" or den == 0:
                    raise ParseError("bad rational coefficient")
                take()
                coeff = Fraction(val, den)
            if peek() == ("sym", "*"):
                take()
        factors = []
        while True:
            kind, val = peek()
            if kind != "name":
                break
            take()
            if val not in table:
                raise ParseError(f"unknown generator {val!r}")
            exp = 1
            if peek() == ("sym", "^"):
                take()
                kind, e = peek()
                if kind != "num" or e == 0:
                    raise ParseError(f"bad exponent after {val!r}")
                take()
                exp = e
            factors.append((val, exp))
            if peek() == ("sym", "*"):
                take()
                if peek()[0] != "name":
                    raise ParseError("dangling '*'")
        if not factors and not have_coeff:
            kind, val = peek()
            raise ParseError(f"unexpected token {val!r}" if kind else "dangling sign")
        kind, val = peek()
        if kind is not None and not (kind == "sym" and val in "+-"):
            raise ParseError(f"unexpected token {val!r}")
        s, m = normalize_product(table, factors) if factors else (1, ())
        if s:
            result = result + Element(table, {m: sign * s * coeff})
    return result


def parse_dga(text: str) -> DGAPresentation:
    gens = []
    diffs = []
    for n, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "generator":
            if len(parts) != 3:
                raise ParseError("expected 'generator <name> <degree>'", n)
            try:
                deg = int(parts[2])
            except ValueError:
                raise ParseError(f"bad degree {parts[2]!r}", n) from None
            if deg <= 0:
                raise ParseError("degrees must be positive", n)
            if not re.fullmatch(r"[A-Za-z_][\w.:]*", parts[1]):
                raise ParseError(f"bad generator name {parts[1]!r}", n)
            gens.append((parts[1], deg, n))
        elif parts[0] == "d":
            head, sep, body = line[1:].partition("=")
            if not sep or not head.strip():
                raise ParseError("expected 'd <name> = <polynomial>'", n)
            diffs.append((head.strip(), body, n))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", n)
    if not gens:
        raise ParseError("no generators declared")
    try:
        table = GeneratorTable((g, d) for g, d, _ in gens)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    images = {}
    for name, body, n in diffs:
        if name not in table:
            raise ParseError(f"differential of unknown generator {name!r}", n)
        if name in images:
            raise ParseError(f"second differential for {name!r}", n)
        try:
            images[name] = parse_element(table, body)
        except ParseError as exc:
            raise ParseError(str(exc), n) from None
    return DGAPresentation(table, Derivation(table, images, check_degrees=False))


def format_dga(p: DGAPresentation) -> str:
    lines = [f"generator {s.name} {s.degree}" for s in p.table]
    for i, s in enumerate(p.table.symbols):
        img = p.differential.images[i]
        if img:
            lines.append(f"d {s.name} = {format_element(img)}")
    return "\n".join(lines) + "\n"
