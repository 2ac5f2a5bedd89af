"""Weighted graphs with a vertex measure and a core/halo partition.

A :class:`Graph` is the finite stand-in for an infinite locally finite graph.
Core vertices have every incident edge materialized. Halo vertices form the
one-step neighbourhood of the core and carry their degree in the full graph
(``halo_true_degree``), which may exceed the weight of their materialized
edges. Functions supported in the core then have exactly computable norms,
energies and boundary volumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

CORE = "core"
HALO = "halo"


class GraphError(ValueError):
    """A vertex or edge record violates the graph invariants."""


class Graph:
    """Immutable weighted graph with vertex measure.

    Parameters
    ----------
    vertex_records : iterable of tuples
        ``(id, mu, role)`` or ``(id, mu, role, true_degree)``; ``role`` is
        ``"core"`` or ``"halo"`` and ``true_degree`` is mandatory for halo
        vertices.
    edge_records : iterable of tuples
        ``(id1, id2, w)``, one record per undirected edge.
    total_measure : float, optional
        Measure of the whole (possibly infinite) graph this host was cut
        from. ``None`` means the host is the whole graph.
    root : int, optional
        Designated base vertex (the ``x0`` of the non-density argument).
    labels : mapping, optional
        Family-level position of each vertex (layer/index on trees, the
        integer coordinate on lines).
    """

    def __init__(
        self,
        vertex_records: Iterable[Sequence],
        edge_records: Iterable[Sequence],
        *,
        total_measure: float | None = None,
        root: int | None = None,
        labels: Mapping[int, object] | None = None,
    ):
        ids, mu, core, true_deg = [], [], [], {}
        index: dict[int, int] = {}
        for rec in vertex_records:
            if len(rec) not in (3, 4):
                raise GraphError(f"vertex record must have 3 or 4 fields: {rec!r}")
            vid, m, role = rec[0], float(rec[1]), rec[2]
            if isinstance(vid, bool) or not isinstance(vid, (int, np.integer)) or vid < 0:
                raise GraphError(f"vertex id must be a non-negative integer: {vid!r}")
            vid = int(vid)
            if vid in index:
                raise GraphError(f"duplicate vertex {vid}")
            if not (m > 0 and math.isfinite(m)):
                raise GraphError(f"vertex {vid}: measure must be positive, got {m!r}")
            if role not in (CORE, HALO):
                raise GraphError(f"vertex {vid}: role must be 'core' or 'halo', got {role!r}")
            if role == HALO:
                if len(rec) < 4 or rec[3] is None:
                    raise GraphError(f"halo vertex {vid} is missing its true degree")
                td = float(rec[3])
                if not (td > 0 and math.isfinite(td)):
                    raise GraphError(f"halo vertex {vid}: true degree must be positive")
                true_deg[vid] = td
            elif len(rec) == 4 and rec[3] is not None:
                raise GraphError(f"core vertex {vid} must not declare a true degree")
            index[vid] = len(ids)
            ids.append(vid)
            mu.append(m)
            core.append(role == CORE)

        src, dst, w = [], [], []
        seen = set()
        for rec in edge_records:
            if len(rec) != 3:
                raise GraphError(f"edge record must have 3 fields: {rec!r}")
            a, b, wt = int(rec[0]), int(rec[1]), float(rec[2])
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            for v in (a, b):
                if v not in index:
                    raise GraphError(f"edge ({a}, {b}) uses undeclared vertex {v}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise GraphError(f"duplicate edge ({a}, {b})")
            if not (wt > 0 and math.isfinite(wt)):
                raise GraphError(f"edge ({a}, {b}): weight must be positive, got {wt!r}")
            seen.add(key)
            src.append(index[a])
            dst.append(index[b])
            w.append(wt)

        n = len(ids)
        self._ids = np.array(ids, dtype=np.int64)
        self._index = index
        self._mu = np.array(mu, dtype=float)
        self._core = np.array(core, dtype=bool)
        self._src = np.array(src, dtype=np.int64)
        self._dst = np.array(dst, dtype=np.int64)
        self._w = np.array(w, dtype=float)
        adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for s, d, wt in zip(src, dst, w):
            adjacency[s].append((d, wt))
            adjacency[d].append((s, wt))
        self._adj = tuple(tuple(sorted(nb)) for nb in adjacency)
        self._weights = {}
        for s, d, wt in zip(src, dst, w):
            self._weights[(s, d)] = wt
            self._weights[(d, s)] = wt

        deg = np.empty(n)
        for i in range(n):
            materialized = math.fsum(wt for _, wt in self._adj[i])
            if self._core[i]:
                deg[i] = materialized
            else:
                td = true_deg[ids[i]]
                if td < materialized * (1 - 1e-12):
                    raise GraphError(
                        f"halo vertex {ids[i]}: true degree {td} is below its "
                        f"materialized degree {materialized}"
                    )
                deg[i] = td
        self._deg = deg
        self._halo_true_degree = dict(true_deg)

        for arr in (self._ids, self._mu, self._core, self._src, self._dst, self._w, self._deg):
            arr.setflags(write=False)

        if total_measure is not None:
            total_measure = float(total_measure)
            if not total_measure > 0:
                raise GraphError("total_measure must be positive")
        self.total_measure = total_measure
        if root is not None and root not in index:
            raise GraphError(f"root {root} is not a vertex")
        self.root = root
        self.labels = dict(labels) if labels is not None else None

    # -- sizes and arrays -------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self._ids)

    @property
    def n_edges(self) -> int:
        return len(self._w)

    @property
    def ids(self) -> np.ndarray:
        return self._ids

    @property
    def mu(self) -> np.ndarray:
        return self._mu

    @property
    def core_mask(self) -> np.ndarray:
        return self._core

    @property
    def edge_index(self) -> tuple[np.ndarray, np.ndarray]:
        """Positions (not ids) of the edge endpoints."""
        return self._src, self._dst

    @property
    def edge_weights(self) -> np.ndarray:
        return self._w

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every vertex, aligned with :attr:`ids`."""
        return self._deg

    @property
    def halo_true_degree(self) -> dict[int, float]:
        return dict(self._halo_true_degree)

    @property
    def core_ids(self) -> list[int]:
        return [int(v) for v in self._ids[self._core]]

    @property
    def halo_ids(self) -> list[int]:
        return [int(v) for v in self._ids[~self._core]]

    @property
    def has_halo(self) -> bool:
        return not bool(self._core.all())

    # -- queries ------------------------------------------------------------
    def position(self, x: int) -> int:
        try:
            return self._index[int(x)]
        except (KeyError, TypeError, ValueError):
            raise KeyError(f"unknown vertex {x!r}") from None

    def __contains__(self, x) -> bool:
        try:
            return int(x) in self._index
        except (TypeError, ValueError):
            return False

    def is_core(self, x: int) -> bool:
        return bool(self._core[self.position(x)])

    def measure(self, x: int) -> float:
        return float(self._mu[self.position(x)])

    def neighbors(self, x: int) -> list[tuple[int, float]]:
        """``(neighbor id, weight)`` pairs over materialized edges."""
        return [(int(self._ids[j]), w) for j, w in self._adj[self.position(x)]]

    def weight(self, x: int, y: int) -> float:
        """Weight of edge ``xy``; 0 when the edge is absent."""
        return self._weights.get((self.position(x), self.position(y)), 0.0)

    def vertex_records(self) -> list[tuple]:
        out = []
        for vid, m, c in zip(self._ids, self._mu, self._core):
            vid = int(vid)
            if c:
                out.append((vid, float(m), CORE))
            else:
                out.append((vid, float(m), HALO, self._halo_true_degree[vid]))
        return out

    def edge_records(self) -> list[tuple[int, int, float]]:
        return [
            (int(self._ids[s]), int(self._ids[d]), float(w))
            for s, d, w in zip(self._src, self._dst, self._w)
        ]

    def __repr__(self):
        return (
            f"Graph(n_core={int(self._core.sum())}, n_halo={int((~self._core).sum())}, "
            f"n_edges={self.n_edges})"
        )


def build_graph(vertex_records, edge_records, **kwargs) -> Graph:
    """Validate records and build an immutable :class:`Graph`."""
    return Graph(vertex_records, edge_records, **kwargs)


def degree(g: Graph, x: int) -> float:
    """Sum of incident weights; the stored true degree for halo vertices."""
    return float(g.degrees[g.position(x)])


def measures(g: Graph) -> tuple[float, float]:
    """Return ``(core_measure, tail_measure)``.

    The tail is everything outside the core: ``total_measure - core`` for
    truncations, the halo measure for a standalone host (0 without halo).
    """
    core = math.fsum(g.mu[g.core_mask])
    total = g.total_measure
    if total is None:
        return core, math.fsum(g.mu[~g.core_mask])
    if math.isinf(total):
        raise ValueError("tail measure is undefined: the family has infinite total measure")
    return core, max(total - core, 0.0)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphFamily:
    """Procedural description of an infinite (or finite) locally finite graph.

    Use :func:`tree_family`, :func:`line_family` or :func:`custom_family` to
    construct one; :meth:`truncate` emits the radius-``r`` host.
    """

    kind: str
    params: tuple
    total_measure: float
    graph: Graph | None = None

    def param(self, name):
        return dict(self.params)[name]

    def truncate(self, r: int) -> Graph:
        return truncate(self, r)


def tree_family(branching: int = 2, measure_ratio: float = 1 / 3, root_measure: float = 1 / 3) -> GraphFamily:
    """Rooted tree, every vertex with ``branching`` children, unit weights.

    Layer ``k`` (root in layer 1) carries measure ``root_measure * measure_ratio**(k-1)``.
    """
    if isinstance(branching, bool) or not isinstance(branching, (int, np.integer)) or branching < 1:
        raise ValueError(f"branching must be an integer >= 1, got {branching!r}")
    q, m = float(measure_ratio), float(root_measure)
    if not 0 < q < 1:
        raise ValueError(f"measure_ratio must lie in (0, 1), got {measure_ratio!r}")
    if not (m > 0 and math.isfinite(m)):
        raise ValueError(f"root_measure must be positive, got {root_measure!r}")
    growth = branching * q
    total = m / (1 - growth) if growth < 1 else math.inf
    return GraphFamily("tree", (("b", int(branching)), ("q", q), ("m", m)), total)


def line_family(profile: str = "constant", c: float = 1.0, q: float | None = None) -> GraphFamily:
    """The integer line with unit weights.

    ``profile="constant"`` gives ``mu == c``; ``profile="geometric"`` gives
    ``mu(k) = c * q**|k|``.
    """
    c = float(c)
    if not (c > 0 and math.isfinite(c)):
        raise ValueError(f"c must be positive, got {c!r}")
    if profile == "constant":
        if q is not None:
            raise ValueError("constant profile takes no ratio")
        return GraphFamily("line", (("profile", "constant"), ("c", c), ("q", 1.0)), math.inf)
    if profile == "geometric":
        if q is None or not 0 < float(q) < 1:
            raise ValueError(f"geometric profile needs 0 < q < 1, got {q!r}")
        q = float(q)
        return GraphFamily("line", (("profile", "geometric"), ("c", c), ("q", q)), c * (1 + q) / (1 - q))
    raise ValueError(f"unknown line profile {profile!r}")


def custom_family(graph: Graph) -> GraphFamily:
    """Wrap a finite host; every truncation returns the host itself."""
    total = graph.total_measure
    if total is None:
        total = math.fsum(graph.mu)
    return GraphFamily("custom", (), total, graph)


def _tree_layer_offsets(b: int, layers: int) -> list[int]:
    offsets = [0]
    size = 1
    for _ in range(layers):
        offsets.append(offsets[-1] + size)
        size *= b
    return offsets


def _truncate_tree(fam: GraphFamily, r: int) -> Graph:
    b, q, m = fam.param("b"), fam.param("q"), fam.param("m")
    offsets = _tree_layer_offsets(b, r + 1)
    vertices, edges, labels = [], [], {}
    for k in range(1, r + 2):
        mu = m * q ** (k - 1)
        for j in range(b ** (k - 1)):
            vid = offsets[k - 1] + j
            labels[vid] = (k, j)
            if k <= r:
                vertices.append((vid, mu, CORE))
            else:
                vertices.append((vid, mu, HALO, float(b + 1)))
            if k > 1:
                edges.append(((vid - 1) // b, vid, 1.0))
    return Graph(vertices, edges, total_measure=fam.total_measure, root=0, labels=labels)


def line_vertex_id(k: int) -> int:
    """Breadth-first id of integer ``k``: 0, 1, -1, 2, -2, ... -> 0, 1, 2, 3, 4, ..."""
    return 2 * k - 1 if k > 0 else -2 * k


def _truncate_line(fam: GraphFamily, r: int) -> Graph:
    c, q = fam.param("c"), fam.param("q")
    vertices, labels = [], {}
    for vid in range(2 * r + 3):
        k = (vid + 1) // 2 if vid % 2 else -(vid // 2)
        labels[vid] = k
        mu = c * q ** abs(k)
        if abs(k) <= r:
            vertices.append((vid, mu, CORE))
        else:
            vertices.append((vid, mu, HALO, 2.0))
    edges = [(line_vertex_id(k), line_vertex_id(k + 1), 1.0) for k in range(-r - 1, r + 1)]
    return Graph(vertices, edges, total_measure=fam.total_measure, root=0, labels=labels)


def truncate(family: GraphFamily, r: int) -> Graph:
    """Radius-``r`` host of ``family``: core is the ball, halo the next layer."""
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 1:
        raise ValueError(f"radius must be an integer >= 1, got {r!r}")
    if family.kind == "tree":
        return _truncate_tree(family, int(r))
    if family.kind == "line":
        return _truncate_line(family, int(r))
    if family.kind == "custom":
        return family.graph
    raise ValueError(f"unknown family kind {family.kind!r}")
