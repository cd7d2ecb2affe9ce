"""Directed multigraphs with dimension labels, tensor instances on them,
graph contraction, and the structural rewrites that preserve the contracted
set: edge flips, edge gauge changes, valence-one merges and vertex
truncation.

A vertex of dimension v with incident edge dimensions multiplying to f is
called critical when v = f; both non-strict comparisons are meaningful, so
the classifier reports equality and the two strict cases.

Vertex tensor axis order is pinned: the vertex axis first, then incoming
edges by increasing edge id, then outgoing edges by increasing edge id.
Merged vertices index their fused space with the removed vertex index as
the major digit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import prod

from .errors import SemanticError, ShapeError
from .fields import QQ, Field
from .linalg import Matrix, inverse
from .tensors import (
    INSTANCE_ENTRY_BOUND,
    Tensor,
    contract_pair,
    lin_index,
    mode_apply,
    outer,
    transpose_axes,
)


@dataclass(frozen=True)
class Vertex:
    id: int
    dim: int


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    dim: int


@dataclass(frozen=True)
class NetworkGraph:
    """Immutable labeled multigraph; self loops are rejected."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise SemanticError("duplicate vertex ids")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise SemanticError("duplicate edge ids")
        if any(v.dim < 1 for v in self.vertices):
            raise SemanticError("vertex dimensions must be positive")
        vset = set(vids)
        for e in self.edges:
            if e.dim < 1:
                raise SemanticError(f"edge {e.id} has nonpositive dimension")
            if e.tail not in vset or e.head not in vset:
                raise SemanticError(f"edge {e.id} references a missing vertex")
            if e.tail == e.head:
                raise SemanticError(f"edge {e.id} is a self loop")

    @classmethod
    def build(cls, vertices, edges) -> "NetworkGraph":
        return cls(
            tuple(Vertex(int(i), int(d)) for i, d in vertices),
            tuple(Edge(int(i), int(t), int(h), int(d)) for i, t, h, d in edges),
        )

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise SemanticError(f"no vertex {vid}")

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise SemanticError(f"no edge {eid}")

    def in_edges(self, vid: int) -> list[Edge]:
        return sorted((e for e in self.edges if e.head == vid), key=lambda e: e.id)

    def out_edges(self, vid: int) -> list[Edge]:
        return sorted((e for e in self.edges if e.tail == vid), key=lambda e: e.id)

    def incident(self, vid: int) -> list[Edge]:
        return sorted((e for e in self.edges if vid in (e.tail, e.head)), key=lambda e: e.id)

    def degree(self, vid: int) -> int:
        return len(self.incident(vid))

    def edge_product(self, vid: int) -> int:
        return prod((e.dim for e in self.incident(vid)), start=1)

    def tensor_shape(self, vid: int) -> tuple[int, ...]:
        v = self.vertex(vid)
        return (v.dim, *(e.dim for e in self.in_edges(vid)), *(e.dim for e in self.out_edges(vid)))

    def axis_labels(self, vid: int) -> list[tuple]:
        """Label per tensor axis: ('v', vid) or ('e', edge_id)."""
        labels = [("v", vid)]
        labels += [("e", e.id) for e in self.in_edges(vid)]
        labels += [("e", e.id) for e in self.out_edges(vid)]
        return labels


def classify_vertex(g: NetworkGraph, vid: int) -> str:
    """Compare a vertex dimension against the product of its edge dimensions."""
    v = g.vertex(vid).dim
    f = g.edge_product(vid)
    if v == f:
        return "critical"
    return "strictly_sub" if v < f else "strictly_super"


def is_subcritical(g: NetworkGraph, vid: int) -> bool:
    return g.vertex(vid).dim <= g.edge_product(vid)


def is_supercritical(g: NetworkGraph, vid: int) -> bool:
    return g.vertex(vid).dim >= g.edge_product(vid)


def loop_graph(edge_dims, vertex_dims=None) -> NetworkGraph:
    """Cycle on n >= 2 vertices; edge j runs from vertex j to vertex j+1.

    Without explicit vertex dimensions the loop is made critical, so vertex
    j gets dimension edge(j-1) * edge(j).
    """
    edge_dims = [int(e) for e in edge_dims]
    n = len(edge_dims)
    if n < 2:
        raise SemanticError("a loop needs at least two edges")
    if vertex_dims is None:
        vertex_dims = [edge_dims[j - 1] * edge_dims[j] for j in range(n)]
    vertex_dims = [int(v) for v in vertex_dims]
    if len(vertex_dims) != n:
        raise ShapeError("need one vertex dimension per edge")
    vertices = [(j + 1, vertex_dims[j]) for j in range(n)]
    edges = [(j + 1, j + 1, (j + 1) % n + 1, edge_dims[j]) for j in range(n)]
    return NetworkGraph.build(vertices, edges)


def chain_graph(vertex_dims, edge_dims) -> NetworkGraph:
    """Path graph; edge j runs from vertex j to vertex j+1."""
    vertex_dims = [int(v) for v in vertex_dims]
    edge_dims = [int(e) for e in edge_dims]
    if len(vertex_dims) != len(edge_dims) + 1:
        raise ShapeError("a chain on n vertices has n-1 edges")
    vertices = [(j + 1, d) for j, d in enumerate(vertex_dims)]
    edges = [(j + 1, j + 1, j + 2, d) for j, d in enumerate(edge_dims)]
    return NetworkGraph.build(vertices, edges)


@dataclass(frozen=True)
class TNSInstance:
    """Vertex tensors attached to a graph; axis order per tensor_shape."""

    graph: NetworkGraph
    tensors: dict[int, Tensor]

    def __post_init__(self):
        fields = set()
        for v in self.graph.vertices:
            t = self.tensors.get(v.id)
            if t is None:
                raise SemanticError(f"missing tensor for vertex {v.id}")
            want = self.graph.tensor_shape(v.id)
            if t.shape != want:
                raise ShapeError(f"vertex {v.id}: tensor shape {t.shape} != expected {want}")
            fields.add(t.field)
        if len(self.tensors) != len(self.graph.vertices):
            raise SemanticError("instance carries tensors for unknown vertices")
        if len(fields) > 1:
            raise SemanticError("vertex tensors live over different fields")

    @property
    def field(self) -> Field:
        return self.tensors[self.graph.vertices[0].id].field


def random_instance(g: NetworkGraph, seed: int, field: Field = QQ, bound: int = INSTANCE_ENTRY_BOUND) -> TNSInstance:
    """Deterministic instance; entries drawn uniformly from [-bound, bound]."""
    rng = random.Random(seed)
    tensors = {}
    for v in g.vertices:
        shape = g.tensor_shape(v.id)
        tensors[v.id] = Tensor(shape, [rng.randint(-bound, bound) for _ in range(prod(shape))], field)
    return TNSInstance(g, tensors)


def identity_instance(g: NetworkGraph, field: Field = QQ) -> TNSInstance:
    """Identity-reshape instance on a critical loop in canonical orientation.

    Requires every vertex to have exactly one incoming and one outgoing
    edge and dimension in_dim * out_dim; vertex j's tensor is then the
    identity on the edge pair, reshaped with the fused (in, out) index as
    the vertex axis.
    """
    tensors = {}
    for v in g.vertices:
        ins, outs = g.in_edges(v.id), g.out_edges(v.id)
        if len(ins) != 1 or len(outs) != 1:
            raise SemanticError("identity_instance needs a directed loop")
        a, b = ins[0].dim, outs[0].dim
        if v.dim != a * b:
            raise SemanticError(f"vertex {v.id} is not critical")
        items = {(c * b + d, c, d): 1 for c in range(a) for d in range(b)}
        tensors[v.id] = Tensor.from_nonzeros((a * b, a, b), items, field)
    return TNSInstance(g, tensors)


def contract_network(inst: TNSInstance, vertex_order=None) -> Tensor:
    """Contract all edges; the result keeps one axis per vertex, in graph order.

    Vertex tensors are absorbed one at a time and each edge is contracted
    as soon as both endpoint tensors are present (lowest edge id first).
    The result does not depend on the absorption order.
    """
    g = inst.graph
    order = [v.id for v in g.vertices] if vertex_order is None else list(vertex_order)
    if sorted(order) != sorted(v.id for v in g.vertices):
        raise SemanticError("vertex_order must enumerate every vertex exactly once")
    cur = None
    labels: list[tuple] = []
    for vid in order:
        t = inst.tensors[vid]
        cur = t if cur is None else outer(cur, t)
        labels += g.axis_labels(vid)
        while True:
            seen: dict[int, int] = {}
            pair = None
            for pos, lab in enumerate(labels):
                if lab[0] != "e":
                    continue
                eid = lab[1]
                if eid in seen:
                    if pair is None or eid < pair[0]:
                        pair = (eid, seen[eid], pos)
                else:
                    seen[eid] = pos
            if pair is None:
                break
            _, a, b = pair
            cur = contract_pair(cur, a, b)
            del labels[b]
            del labels[a]
    want = [("v", v.id) for v in g.vertices]
    perm = [labels.index(lab) for lab in want]
    return transpose_axes(cur, perm)


def flip_edge(obj, edge_id: int):
    """Reverse one edge.  On an instance the incident tensors keep their
    values and only reorder axes, since the edge pairing is symmetric."""
    if isinstance(obj, TNSInstance):
        g = obj.graph
        new_g = flip_edge(g, edge_id)
        e = g.edge(edge_id)
        tensors = dict(obj.tensors)
        for vid in (e.tail, e.head):
            old = g.axis_labels(vid)
            new = new_g.axis_labels(vid)
            perm = [old.index(lab) for lab in new]
            tensors[vid] = transpose_axes(tensors[vid], perm)
        return TNSInstance(new_g, tensors)
    g: NetworkGraph = obj
    e = g.edge(edge_id)
    flipped = Edge(e.id, e.head, e.tail, e.dim)
    return NetworkGraph(g.vertices, tuple(flipped if x.id == edge_id else x for x in g.edges))


def gauge_transform(inst: TNSInstance, edge_id: int, g_mat: Matrix) -> TNSInstance:
    """Act by g on the tail side of an edge and by its inverse transpose on
    the head side; the contraction is unchanged."""
    g = inst.graph
    e = g.edge(edge_id)
    if g_mat.rows != g_mat.cols or g_mat.rows != e.dim:
        raise ShapeError(f"gauge for edge {edge_id} must be {e.dim}x{e.dim}")
    g_inv_t = inverse(g_mat).transpose()
    tensors = dict(inst.tensors)
    tail_axis = g.axis_labels(e.tail).index(("e", edge_id))
    head_axis = g.axis_labels(e.head).index(("e", edge_id))
    tensors[e.tail] = mode_apply(tensors[e.tail], g_mat, tail_axis)
    tensors[e.head] = mode_apply(tensors[e.head], g_inv_t, head_axis)
    return TNSInstance(g, tensors)


@dataclass(frozen=True)
class MergeStep:
    removed: int
    edge: int
    target: int
    new_dim: int


def reduce_valence_one(g: NetworkGraph) -> tuple[NetworkGraph, tuple[MergeStep, ...]]:
    """Repeatedly fold valence-one vertices that fit inside their edge.

    A valence-one vertex whose dimension is at most its edge dimension is
    removed and its neighbor's dimension is multiplied by it (removed index
    major).  Candidates are processed by ascending vertex id; the merge log
    records each step.
    """
    vertices = {v.id: v.dim for v in g.vertices}
    edges = {e.id: (e.tail, e.head, e.dim) for e in g.edges}
    log: list[MergeStep] = []
    while True:
        candidate = None
        for vid in sorted(vertices):
            inc = [eid for eid, (t, h, _) in edges.items() if vid in (t, h)]
            if len(inc) != 1:
                continue
            eid = inc[0]
            if vertices[vid] <= edges[eid][2]:
                candidate = (vid, eid)
                break
        if candidate is None:
            break
        vid, eid = candidate
        tail, head, _ = edges.pop(eid)
        other = head if tail == vid else tail
        new_dim = vertices[vid] * vertices[other]
        log.append(MergeStep(removed=vid, edge=eid, target=other, new_dim=new_dim))
        vertices[other] = new_dim
        del vertices[vid]
    new_g = NetworkGraph(
        tuple(Vertex(v.id, vertices[v.id]) for v in g.vertices if v.id in vertices),
        tuple(Edge(eid, *edges[eid]) for eid in sorted(edges)),
    )
    return new_g, tuple(log)


def _replay_merges(g: NetworkGraph, merges) -> list[NetworkGraph]:
    """Graphs along a merge log, starting at g and ending at the reduced one."""
    graphs = [g]
    dims = {v.id: v.dim for v in g.vertices}
    edges = {e.id: (e.tail, e.head, e.dim) for e in g.edges}
    order = [v.id for v in g.vertices]
    for m in merges:
        if m.edge not in edges or m.removed not in dims or m.target not in dims:
            raise SemanticError(f"merge log step {m} does not match the graph")
        tail, head, _ = edges[m.edge]
        if {tail, head} != {m.removed, m.target}:
            raise SemanticError(f"edge {m.edge} does not join {m.removed} and {m.target}")
        if m.new_dim != dims[m.removed] * dims[m.target]:
            raise SemanticError(f"merge log step {m} has inconsistent dimension")
        del edges[m.edge]
        dims[m.target] = m.new_dim
        del dims[m.removed]
        order = [vid for vid in order if vid != m.removed]
        graphs.append(NetworkGraph(
            tuple(Vertex(vid, dims[vid]) for vid in order),
            tuple(Edge(eid, *edges[eid]) for eid in sorted(edges)),
        ))
    return graphs


def reduction_preimage(g: NetworkGraph, merges, inst: TNSInstance) -> TNSInstance:
    """Lift an instance of the reduced graph back to the original graph.

    Reverses a merge log from reduce_valence_one one step at a time: the
    removed vertex gets the identity embedding of its space into the edge,
    and the fused tensor is unpacked onto the neighbor with the edge axis
    carrying the removed vertex's index.  Contracting the lift reproduces
    the reduced instance's contraction with each fused axis split in two.
    """
    graphs = _replay_merges(g, merges)
    if inst.graph != graphs[-1]:
        raise SemanticError("instance graph does not match the reduced graph")
    tensors = dict(inst.tensors)
    for k in range(len(merges) - 1, -1, -1):
        m = merges[k]
        fine, coarse = graphs[k], graphs[k + 1]
        d_z = fine.vertex(m.removed).dim
        d_w = fine.vertex(m.target).dim
        e_dim = fine.edge(m.edge).dim
        field = tensors[m.target].field

        emb = [field.zero] * (d_z * e_dim)
        for i in range(d_z):
            emb[i * e_dim + i] = field.one
        tensors[m.removed] = Tensor((d_z, e_dim), emb, field)

        fused = tensors.pop(m.target)
        old_labels = coarse.axis_labels(m.target)
        new_labels = fine.axis_labels(m.target)
        new_shape = tuple(
            d_w if lab == ("v", m.target) else fine.edge(lab[1]).dim
            for lab in new_labels
        )
        slot = {lab: p for p, lab in enumerate(new_labels)}
        data = [field.zero] * prod(new_shape)
        for idx, val in fused.nonzeros():
            a, j = divmod(idx[0], d_w)
            new_idx = [0] * len(new_labels)
            new_idx[0] = j
            new_idx[slot[("e", m.edge)]] = a
            for p, lab in enumerate(old_labels[1:], start=1):
                new_idx[slot[lab]] = idx[p]
            data[lin_index(tuple(new_idx), new_shape)] = val
        tensors[m.target] = Tensor(new_shape, data, field)
    return TNSInstance(g, tensors)


def supercritical_truncate(g: NetworkGraph) -> tuple[NetworkGraph, int]:
    """Clamp every vertex dimension to its incident edge product.

    Returns the truncated graph and the dimension offset
    sum_j f_j * (v_j - f_j) contributed by the choice of subspaces.
    """
    offset = 0
    new_vertices = []
    for v in g.vertices:
        f = min(v.dim, g.edge_product(v.id))
        offset += f * (v.dim - f)
        new_vertices.append(Vertex(v.id, f))
    return NetworkGraph(tuple(new_vertices), g.edges), offset


def _secant_dim(a: int, b: int, r: int) -> int:
    return min(r * (a + b - r), a * b)


def _cycle_edge_sequence(g: NetworkGraph):
    """Edge dims in cycle order starting at the smallest vertex, or None."""
    if len(g.vertices) < 2 or len(g.edges) != len(g.vertices):
        return None
    if any(g.degree(v.id) != 2 for v in g.vertices):
        return None
    start = min(v.id for v in g.vertices)
    seq = []
    prev_edge = None
    vid = start
    for _ in range(len(g.edges)):
        nxt = [e for e in g.incident(vid) if e.id != (prev_edge.id if prev_edge else None)]
        if prev_edge is None:
            nxt = [g.incident(vid)[0]]
        e = nxt[0]
        seq.append(e)
        vid = e.head if e.tail == vid else e.tail
        prev_edge = e
    if vid != start or len({e.id for e in seq}) != len(g.edges):
        return None
    return seq


def loop_dim_formula(edge_dims) -> int:
    """Dimension of the contracted set over a critical cycle with 3+ edges."""
    e = list(edge_dims)
    n = len(e)
    if n < 3:
        raise SemanticError("the cycle formula needs at least three edges")
    return sum(e[j] ** 2 * e[(j + 1) % n] ** 2 for j in range(n)) - (sum(x * x for x in e) - 1)


def expected_dim(g: NetworkGraph) -> int | None:
    """Closed-form dimension when the reduced graph is a known family.

    Valence-one folds are exact, so they run first.  A single vertex gives
    the full space; two vertices give the bounded-rank (secant) formula
    with rank the product of the connecting edge dimensions; a cycle that
    becomes critical after truncation gives the cycle formula plus the
    truncation offset.  Anything else returns None.
    """
    g1, _ = reduce_valence_one(g)
    if len(g1.vertices) == 1 and not g1.edges:
        return g1.vertices[0].dim
    if len(g1.vertices) == 2 and g1.edges:
        a, b = (v.dim for v in g1.vertices)
        r = prod(e.dim for e in g1.edges)
        return _secant_dim(a, b, r)
    g2, offset = supercritical_truncate(g1)
    seq = _cycle_edge_sequence(g2)
    if seq is not None and len(seq) >= 3:
        if all(classify_vertex(g2, v.id) == "critical" for v in g2.vertices):
            dims = [e.dim for e in seq]
            return loop_dim_formula(dims) + offset
    return None
