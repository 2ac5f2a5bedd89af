"""Vertex boundaries, volumes and Cheeger constants over subsets of the core.

Two boundary measures are supported:

``"edge"`` (default)
    weight of the edges leaving the set. The co-area formula and the Cheeger
    inequality hold for this measure, and it is the one that gives the
    binary tree its constant 1/3.
``"vertex"``
    degree volume of the outer vertex boundary. It dominates the edge
    measure and is provided for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .graph import Graph
from .validation import check_boundary, check_positive_int

TIE_RTOL = 1e-12
DEFAULT_LIMIT = 20


@dataclass(frozen=True)
class CheegerResult:
    alpha: float
    witness: tuple[int, ...]
    mode: str
    subsets_examined: int
    boundary: str = "edge"

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "witness": list(self.witness),
            "mode": self.mode,
            "subsets_examined": self.subsets_examined,
        }


def _check_subset(g: Graph, omega, allow_empty=False) -> frozenset[int]:
    members = frozenset(int(v) for v in omega)
    if not members and not allow_empty:
        raise ValueError("vertex set must be nonempty")
    for v in members:
        if not g.is_core(v):
            raise ValueError(f"vertex {v} is a halo vertex; sets must lie in the core")
    return members


def boundary(g: Graph, omega) -> frozenset[int]:
    """Vertices outside ``omega`` adjacent to it (may include halo vertices)."""
    members = _check_subset(g, omega)
    out = set()
    for x in members:
        for y, _ in g.neighbors(x):
            if y not in members:
                out.add(y)
    return frozenset(out)


_vertex_boundary = boundary


def volume(g: Graph, vertices) -> float:
    """Degree volume ``sum deg_x``; halo members count with their true degree."""
    return math.fsum(float(g.degrees[g.position(v)]) for v in vertices)


def boundary_weight(g: Graph, omega) -> float:
    """Total weight of edges with exactly one endpoint in ``omega``."""
    members = _check_subset(g, omega)
    return math.fsum(w for x in members for y, w in g.neighbors(x) if y not in members)


def boundary_measure(g: Graph, omega, boundary="edge") -> float:
    check_boundary(boundary)
    if boundary == "edge":
        return boundary_weight(g, omega)
    return volume(g, _vertex_boundary(g, omega))


def cheeger_ratio(g: Graph, omega, boundary="edge") -> float:
    """``|boundary(omega)| / |omega|``."""
    members = _check_subset(g, omega)
    vol = volume(g, members)
    if vol == 0:
        raise ValueError("vertex set has zero volume")
    return boundary_measure(g, members, boundary) / vol


# -- exhaustive search ------------------------------------------------------

def _core_layout(g: Graph):
    core_pos = np.flatnonzero(g.core_mask)
    core_ids = g.ids[core_pos]
    order = np.argsort(core_ids, kind="stable")
    core_pos, core_ids = core_pos[order], core_ids[order]
    bit_of = {int(p): i for i, p in enumerate(core_pos)}
    return core_pos, [int(v) for v in core_ids], bit_of


def _pick(g: Graph, candidates, boundary):
    """Canonical ratios for candidate witnesses; smallest, ties lexicographic."""
    scored = [(cheeger_ratio(g, c, boundary), tuple(sorted(c))) for c in candidates]
    best = min(r for r, _ in scored)
    tied = [w for r, w in scored if r <= best * (1 + TIE_RTOL)]
    witness = min(tied)
    return cheeger_ratio(g, witness, boundary), witness


def cheeger_exact(g: Graph, *, boundary="edge", method="enumerate", limit=DEFAULT_LIMIT,
                  chunk=1 << 16) -> CheegerResult:
    """Minimum Cheeger ratio over nonempty core subsets.

    ``method="enumerate"`` scans all ``2^n - 1`` subsets (``n <= limit``).
    ``method="mincut"`` (edge boundary only) solves the same problem exactly by
    Dinkelbach iteration over parametric minimum cuts. ``method="auto"``
    enumerates when the core fits under ``limit`` and uses the cut route
    otherwise.
    """
    check_boundary(boundary)
    core_pos, core_ids, bit_of = _core_layout(g)
    n = len(core_pos)
    if n == 0:
        raise ValueError("graph has no core vertices")
    if method == "auto":
        method = "enumerate" if n <= limit else "mincut"
    if method == "mincut":
        if boundary != "edge":
            raise ValueError("the min-cut route only supports the edge boundary")
        return _cheeger_mincut(g)
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    if n > limit:
        raise ValueError(f"core has {n} vertices; exhaustive search is limited to {limit}")

    deg = g.degrees[core_pos]
    src, dst = g.edge_index
    w = g.edge_weights
    # core-core edges as bit pairs; core-outside edges as single bits
    pair_edges, single_edges = [], []
    for s, d, wt in zip(src, dst, w):
        bs, bd = bit_of.get(int(s)), bit_of.get(int(d))
        if bs is not None and bd is not None:
            pair_edges.append((bs, bd, wt))
        elif bs is not None or bd is not None:
            single_edges.append((bs if bs is not None else bd, wt))
    if boundary == "vertex":
        nb_masks = np.zeros(g.n_vertices, dtype=np.int64)
        for s, d in zip(src, dst):
            if int(s) in bit_of:
                nb_masks[d] |= 1 << bit_of[int(s)]
            if int(d) in bit_of:
                nb_masks[s] |= 1 << bit_of[int(d)]
        own_bit = np.array([1 << bit_of[p] if p in bit_of else 0 for p in range(g.n_vertices)],
                           dtype=np.int64)

    total = (1 << n) - 1
    best_val = math.inf
    candidates: list[tuple[float, int]] = []
    for start in range(1, total + 1, chunk):
        masks = np.arange(start, min(start + chunk, total + 1), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(n)) & 1).astype(float)
        vol = bits @ deg
        bnd = np.zeros(len(masks))
        if boundary == "edge":
            for a, b, wt in pair_edges:
                bnd += wt * (bits[:, a] != bits[:, b])
            for a, wt in single_edges:
                bnd += wt * bits[:, a]
        else:
            for p_ in range(g.n_vertices):
                if nb_masks[p_] == 0:
                    continue
                outside = (masks & own_bit[p_]) == 0
                touches = (masks & nb_masks[p_]) != 0
                bnd += g.degrees[p_] * (outside & touches)
        ok = vol > 0
        ratio = np.full(len(masks), math.inf)
        ratio[ok] = bnd[ok] / vol[ok]
        best_val = min(best_val, float(ratio.min()))
        if not math.isfinite(best_val):
            continue
        # loose float screen; the canonical comparison happens in _pick
        near = np.flatnonzero(ratio <= best_val * (1 + 1e-9))
        candidates.extend((float(ratio[i]), int(masks[i])) for i in near)
        candidates = [c for c in candidates if c[0] <= best_val * (1 + 1e-9)]
    if not math.isfinite(best_val):
        raise ValueError("every core subset has zero volume")
    subsets = [[core_ids[i] for i in range(n) if m >> i & 1] for _, m in candidates]
    alpha, witness = _pick(g, subsets, boundary)
    return CheegerResult(alpha, witness, "exhaustive", total, boundary)


def _cheeger_mincut(g: Graph) -> CheegerResult:
    core_pos, core_ids, bit_of = _core_layout(g)
    deg = {core_ids[i]: float(g.degrees[p]) for i, p in enumerate(core_pos)}
    active = [v for v in core_ids if deg[v] > 0]
    if not active:
        raise ValueError("every core subset has zero volume")
    src, dst = g.edge_index
    core_set = set(core_ids)
    inner, outer = [], {}
    for s, d, wt in zip(src, dst, g.edge_weights):
        a, b = int(g.ids[s]), int(g.ids[d])
        if a in core_set and b in core_set:
            inner.append((a, b, float(wt)))
        elif a in core_set:
            outer[a] = outer.get(a, 0.0) + float(wt)
        elif b in core_set:
            outer[b] = outer.get(b, 0.0) + float(wt)

    current = tuple(sorted(active))
    lam = cheeger_ratio(g, current)
    vol_core = math.fsum(deg[v] for v in active)
    solves = 0
    while lam > 0:
        net = nx.DiGraph()
        net.add_node("s")
        net.add_node("t")
        for v in active:
            net.add_edge("s", v, capacity=lam * deg[v])
            if v in outer:
                net.add_edge(v, "t", capacity=outer[v])
        for a, b, wt in inner:
            if a in net and b in net:
                net.add_edge(a, b, capacity=wt)
                net.add_edge(b, a, capacity=wt)
        cut, (source_side, _) = nx.minimum_cut(net, "s", "t")
        solves += 1
        side = tuple(sorted(v for v in source_side if v != "s"))
        if cut - lam * vol_core >= -1e-12 * lam * vol_core or not side:
            break
        ratio = cheeger_ratio(g, side)
        if ratio >= lam:
            break
        current, lam = side, ratio
    return CheegerResult(cheeger_ratio(g, current), current, "mincut", solves, "edge")


# -- heuristic search ---------------------------------------------------------

def cheeger_heuristic(g: Graph, iterations=1000, seed=0, *, boundary="edge") -> CheegerResult:
    """Simulated annealing over core subsets, single-vertex flips.

    Deterministic for a given seed. Finishes with a greedy flip descent from
    the best state, so the result is at least a local minimum.
    """
    check_boundary(boundary)
    iterations = check_positive_int(iterations, "iterations")
    core_pos, core_ids, bit_of = _core_layout(g)
    keep = [i for i, p in enumerate(core_pos) if g.degrees[p] > 0]
    if not keep:
        raise ValueError("every core subset has zero volume")
    ids = [core_ids[i] for i in keep]
    n = len(ids)
    rng = np.random.default_rng(seed)

    def ratio(state):
        return cheeger_ratio(g, [ids[i] for i in np.flatnonzero(state)], boundary)

    state = np.ones(n, dtype=bool)
    cur = ratio(state)
    best_state, best = state.copy(), cur
    t0 = max(cur, 1e-3) * 0.5
    examined = 1
    for k in range(iterations):
        temp = t0 * (1e-3) ** (k / max(iterations - 1, 1))
        i = int(rng.integers(n))
        state[i] = not state[i]
        if not state.any():
            state[i] = True
            continue
        cand = ratio(state)
        examined += 1
        if cand <= cur or rng.random() < math.exp(-(cand - cur) / temp):
            cur = cand
            if cand < best:
                best, best_state = cand, state.copy()
        else:
            state[i] = not state[i]

    state = best_state
    improved = True
    while improved:
        improved = False
        for i in range(n):
            state[i] = not state[i]
            if state.any():
                cand = ratio(state)
                examined += 1
                if cand < best * (1 - TIE_RTOL):
                    best, improved = cand, True
                    continue
            state[i] = not state[i]
    witness = tuple(sorted(ids[i] for i in np.flatnonzero(state)))
    return CheegerResult(cheeger_ratio(g, witness, boundary), witness, "heuristic", examined, boundary)
