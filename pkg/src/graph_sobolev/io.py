"""Line-oriented graph and function files.

Graph files::

    # comment
    v <id> <mu> <core|halo> [<true_degree>]
    e <id1> <id2> <w>

Function files hold ``f <vertex_id> <value>`` lines; absent vertices are 0.
"""

from __future__ import annotations

from pathlib import Path

from .functions import GraphFunction
from .graph import Graph, GraphError, build_graph


class FormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok, lineno, what):
    try:
        value = int(tok)
    except ValueError:
        raise FormatError(lineno, f"{what} must be an integer, got {tok!r}") from None
    if value < 0:
        raise FormatError(lineno, f"{what} must be non-negative, got {tok!r}")
    return value


def _real(tok, lineno, what):
    try:
        return float(tok)
    except ValueError:
        raise FormatError(lineno, f"{what} must be a real number, got {tok!r}") from None


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def read_function(path, host: Graph) -> GraphFunction:
    return parse_function(Path(path).read_text(encoding="utf-8"), host)


def parse_graph(source: str) -> Graph:
    """Parse graph-file text. Errors carry the offending line number."""
    vertices, edges = [], []
    for lineno, tok in _lines(source):
        kind = tok[0]
        if kind == "v":
            if len(tok) not in (4, 5):
                raise FormatError(lineno, "expected 'v <id> <mu> <core|halo> [<true_degree>]'")
            vid = _int(tok[1], lineno, "vertex id")
            mu = _real(tok[2], lineno, "measure")
            role = tok[3]
            if role not in ("core", "halo"):
                raise FormatError(lineno, f"role must be 'core' or 'halo', got {role!r}")
            if role == "halo" and len(tok) != 5:
                raise FormatError(lineno, "halo vertex needs a true degree")
            if role == "core" and len(tok) == 5:
                raise FormatError(lineno, "core vertex must not carry a true degree")
            rec = (vid, mu, role) if role == "core" else (vid, mu, role, _real(tok[4], lineno, "true degree"))
            vertices.append((lineno, rec))
        elif kind == "e":
            if len(tok) != 4:
                raise FormatError(lineno, "expected 'e <id1> <id2> <w>'")
            rec = (_int(tok[1], lineno, "vertex id"), _int(tok[2], lineno, "vertex id"), _real(tok[3], lineno, "weight"))
            edges.append((lineno, rec))
        else:
            raise FormatError(lineno, f"unknown record type {kind!r}")
    # validate record by record so errors point at a line
    seen_v, seen_e = [], []
    for lineno, rec in vertices:
        try:
            build_graph(seen_v + [rec], [])
        except GraphError as exc:
            raise FormatError(lineno, str(exc)) from None
        seen_v.append(rec)
    declared = {rec[0] for rec in seen_v}
    pairs = set()
    for lineno, (a, b, w) in edges:
        key = (min(a, b), max(a, b))
        problem = None
        if a == b:
            problem = f"self-loop at vertex {a}"
        elif a not in declared or b not in declared:
            problem = f"edge ({a}, {b}) uses an undeclared vertex"
        elif key in pairs:
            problem = f"duplicate edge ({a}, {b})"
        elif not w > 0:
            problem = f"edge ({a}, {b}): weight must be positive"
        if problem:
            raise FormatError(lineno, problem)
        pairs.add(key)
        seen_e.append((a, b, w))
    return build_graph(seen_v, seen_e)


def parse_function(source: str, host: Graph) -> GraphFunction:
    values = {}
    for lineno, tok in _lines(source):
        if tok[0] != "f" or len(tok) != 3:
            raise FormatError(lineno, "expected 'f <vertex_id> <value>'")
        vid = _int(tok[1], lineno, "vertex id")
        if vid not in host:
            raise FormatError(lineno, f"unknown vertex {vid}")
        if vid in values:
            raise FormatError(lineno, f"vertex {vid} assigned twice")
        values[vid] = _real(tok[2], lineno, "value")
    return GraphFunction(host, values)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_graph(g: Graph) -> str:
    out = []
    for rec in g.vertex_records():
        fields = ["v", str(rec[0]), _fmt(rec[1]), rec[2]]
        if rec[2] == "halo":
            fields.append(_fmt(rec[3]))
        out.append(" ".join(fields))
    for a, b, w in g.edge_records():
        out.append(f"e {a} {b} {_fmt(w)}")
    return "\n".join(out) + "\n"


def format_function(u: GraphFunction) -> str:
    return "".join(f"f {v} {_fmt(x)}\n" for v, x in sorted(u.values.items()))
