"""JSON wire formats.

All scalars travel as strings ("3", "-7/2", prime-field residues as
decimal digits) so nothing is ever rounded.  Serialization is
deterministic: fixed key order, nonzero tensor entries in lexicographic
index order, two-space indentation, trailing newline.

Structural problems (missing keys, wrong JSON types, unparsable scalars)
raise FormatError; well-formed data describing an impossible object
(bad shapes, non-idempotent projectors, dangling edges) is left to the
constructors, which raise SemanticError subclasses.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .curves import MatrixCurve
from .errors import FormatError
from .fields import Field, Fp
from .linalg import Matrix
from .networks import NetworkGraph, TNSInstance
from .tensors import Tensor
from .varieties import Certificate
from .zoo import Splitting


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def load_path(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _require(cond: bool, msg: str):
    if not cond:
        raise FormatError(msg)


def _as_dict(obj, what: str) -> dict:
    _require(isinstance(obj, dict), f"{what} must be a JSON object")
    return obj


def _as_list(obj, what: str) -> list:
    _require(isinstance(obj, list), f"{what} must be a JSON array")
    return obj


def _as_int(obj, what: str) -> int:
    _require(isinstance(obj, int) and not isinstance(obj, bool), f"{what} must be an integer")
    return obj


def _field_key(d: dict, key: str, what: str):
    _require(key in d, f"{what} is missing key '{key}'")
    return d[key]


def scalar_to_str(x) -> str:
    if isinstance(x, Fp):
        return str(x.val)
    return str(x)


def parse_scalar(s, field: Field):
    if isinstance(s, int) and not isinstance(s, bool):
        return field.coerce(s)
    _require(isinstance(s, str), f"scalar must be a string, got {type(s).__name__}")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad scalar {s!r}: {exc}") from exc
    return field.coerce(q)


# --- matrices ---

def matrix_to_obj(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [scalar_to_str(x) for x in m.entries],
    }


def matrix_from_obj(obj, field: Field) -> Matrix:
    d = _as_dict(obj, "matrix")
    rows = _as_int(_field_key(d, "rows", "matrix"), "rows")
    cols = _as_int(_field_key(d, "cols", "matrix"), "cols")
    raw = _as_list(_field_key(d, "entries", "matrix"), "matrix entries")
    _require(len(raw) == rows * cols, f"matrix needs {rows * cols} entries, got {len(raw)}")
    return Matrix(rows, cols, [parse_scalar(x, field) for x in raw], field)


# --- tensors (nonzero entries only) ---

def tensor_to_obj(t: Tensor) -> dict:
    entries = []
    for idx, v in t.nonzeros():
        entries.append({"idx": list(idx), "val": scalar_to_str(v)})
    return {"shape": list(t.shape), "entries": entries}


def tensor_from_obj(obj, field: Field) -> Tensor:
    d = _as_dict(obj, "tensor")
    shape = tuple(_as_int(s, "shape entry") for s in _as_list(_field_key(d, "shape", "tensor"), "shape"))
    items = {}
    for ent in _as_list(_field_key(d, "entries", "tensor"), "tensor entries"):
        ed = _as_dict(ent, "tensor entry")
        idx = tuple(_as_int(i, "index entry") for i in _as_list(_field_key(ed, "idx", "tensor entry"), "idx"))
        _require(len(idx) == len(shape), f"index {idx} has wrong length for shape {shape}")
        items[idx] = parse_scalar(_field_key(ed, "val", "tensor entry"), field)
    return Tensor.from_nonzeros(shape, items, field)


# --- graphs and instances ---

def graph_to_obj(g: NetworkGraph) -> dict:
    return {
        "vertices": [{"id": v.id, "dim": v.dim} for v in g.vertices],
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "dim": e.dim} for e in g.edges
        ],
    }


def graph_from_obj(obj) -> NetworkGraph:
    d = _as_dict(obj, "graph")
    vertices = []
    for v in _as_list(_field_key(d, "vertices", "graph"), "vertices"):
        vd = _as_dict(v, "vertex")
        vertices.append((_as_int(_field_key(vd, "id", "vertex"), "vertex id"),
                         _as_int(_field_key(vd, "dim", "vertex"), "vertex dim")))
    edges = []
    for e in _as_list(_field_key(d, "edges", "graph"), "edges"):
        ed = _as_dict(e, "edge")
        edges.append((_as_int(_field_key(ed, "id", "edge"), "edge id"),
                      _as_int(_field_key(ed, "tail", "edge"), "edge tail"),
                      _as_int(_field_key(ed, "head", "edge"), "edge head"),
                      _as_int(_field_key(ed, "dim", "edge"), "edge dim")))
    return NetworkGraph.build(vertices, edges)


def instance_to_obj(inst: TNSInstance) -> dict:
    obj = graph_to_obj(inst.graph)
    obj["tensors"] = {str(v.id): tensor_to_obj(inst.tensors[v.id]) for v in inst.graph.vertices}
    return obj


def instance_from_obj(obj, field: Field) -> TNSInstance:
    d = _as_dict(obj, "instance")
    g = graph_from_obj(d)
    tensors = {}
    for key, tobj in _as_dict(_field_key(d, "tensors", "instance"), "tensors").items():
        try:
            vid = int(key)
        except ValueError as exc:
            raise FormatError(f"tensor key {key!r} is not a vertex id") from exc
        tensors[vid] = tensor_from_obj(tobj, field)
    return TNSInstance(g, tensors)


# --- splittings and curves ---

_SPLIT_KEYS = ("X0", "Y0", "Z0")


def splitting_to_obj(s: Splitting) -> dict:
    return {k: matrix_to_obj(p) for k, p in zip(_SPLIT_KEYS, s.projectors())}


def splitting_from_obj(obj, field: Field) -> Splitting:
    d = _as_dict(obj, "splitting")
    mats = [matrix_from_obj(_field_key(d, k, "splitting"), field) for k in _SPLIT_KEYS]
    return Splitting(*mats)


def curve_to_obj(factor: int, curve: MatrixCurve) -> dict:
    return {
        "factor": factor,
        "terms": [{"power": p, "matrix": matrix_to_obj(m)} for p, m in curve.terms],
    }


def curve_from_obj(obj, field: Field) -> tuple[int, MatrixCurve]:
    d = _as_dict(obj, "curve")
    factor = _as_int(_field_key(d, "factor", "curve"), "curve factor")
    terms = []
    for term in _as_list(_field_key(d, "terms", "curve"), "curve terms"):
        td = _as_dict(term, "curve term")
        power = _as_int(_field_key(td, "power", "curve term"), "power")
        terms.append((power, matrix_from_obj(_field_key(td, "matrix", "curve term"), field)))
    return factor, MatrixCurve(tuple(terms))


# --- reports ---

def certificate_to_obj(c: Certificate) -> dict:
    return {
        "e": c.e,
        "stab_mmult": c.stab_mmult,
        "stab_mtilde": c.stab_mtilde,
        "mlrank_mtilde": list(c.mlrank_mtilde),
        "leading_power": c.leading_power,
        "leading_matches_formula": c.leading_matches_formula,
        "conclusion": c.conclusion,
        "reason": c.reason,
    }


def field_label(field: Field) -> dict:
    if field.prime is None:
        return {"field": "rational", "prime": None}
    return {"field": "Fp", "prime": field.prime}
