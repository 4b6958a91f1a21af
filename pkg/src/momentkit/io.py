"""JSON and CSV interchange.

Complex matrices are encoded row-major as nested lists of [re, im] pairs.
Moment files carry {"dim", "order", "moments"}; measure files carry
{"dim", "nodes", "weights"}; Schur parameter files carry {"kind", ...}
with kind one of "zero", "unitary" (scalar angle) or "matrix".
"""

import json

import numpy as np

from .cayley import SchurParameter
from .errors import ValidationError
from .measures import DiscreteMatrixMeasure
from .moments import TOL_HERM, MomentSequence


def encode_matrix(mat):
    mat = np.atleast_2d(np.asarray(mat, dtype=complex))
    return [[[float(v.real), float(v.imag)] for v in row] for row in mat]


def decode_matrix(obj, context="matrix"):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{context}: not a numeric array") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValidationError(f"{context}: expected a 2-d array of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def moments_to_dict(m: MomentSequence) -> dict:
    return {
        "dim": m.dim,
        "order": m.order,
        "moments": [encode_matrix(s) for s in m.moments],
    }


def moments_from_dict(obj, tol_herm=TOL_HERM) -> MomentSequence:
    try:
        dim, order, mats = obj["dim"], obj["order"], obj["moments"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("moment file needs dim, order and moments") from exc
    decoded = [decode_matrix(s, f"moment S_{k}") for k, s in enumerate(mats)]
    if not decoded or any(s.shape != decoded[0].shape for s in decoded):
        raise ValidationError("moment matrices must share one square shape")
    moments = np.stack(decoded)
    m = MomentSequence(moments, tol_herm=tol_herm)
    if m.dim != dim or m.order != order:
        raise ValidationError(
            f"declared dim/order ({dim}, {order}) do not match data "
            f"({m.dim}, {m.order})"
        )
    return m


def measure_to_dict(mu: DiscreteMatrixMeasure) -> dict:
    return {
        "dim": mu.dim,
        "nodes": [float(t) for t in mu.nodes],
        "weights": [encode_matrix(w) for w in mu.weights],
    }


def measure_from_dict(obj) -> DiscreteMatrixMeasure:
    try:
        dim, nodes, weights = obj["dim"], obj["nodes"], obj["weights"]
    except (KeyError, TypeError) as exc:
        raise ValidationError("measure file needs dim, nodes and weights") from exc
    decoded = [decode_matrix(w, f"weight W_{j}") for j, w in enumerate(weights)]
    if not decoded or any(w.shape != decoded[0].shape for w in decoded):
        raise ValidationError("weight matrices must share one square shape")
    mats = np.stack(decoded)
    mu = DiscreteMatrixMeasure(nodes=np.asarray(nodes, dtype=float), weights=mats)
    if mu.dim != dim:
        raise ValidationError(f"declared dim {dim} does not match weights ({mu.dim})")
    return mu


def schur_to_dict(p: SchurParameter) -> dict:
    return {"kind": "matrix", "matrix": encode_matrix(p.matrix)}


def schur_from_dict(obj, defect_dims) -> SchurParameter:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "zero":
        return SchurParameter.zero(defect_dims)
    if kind == "unitary":
        if "theta" not in obj:
            raise ValidationError("unitary Schur parameter needs a theta field")
        return SchurParameter.scalar_unitary(float(obj["theta"]), defect_dims)
    if kind == "matrix":
        p = SchurParameter(decode_matrix(obj.get("matrix"), "Schur parameter"))
        d_plus, d_minus = defect_dims
        if p.shape != (d_minus, d_plus):
            raise ValidationError(
                f"Schur parameter shape {p.shape} does not match defect dims "
                f"({d_plus}, {d_minus})"
            )
        return p
    raise ValidationError('Schur parameter kind must be "zero", "unitary" or "matrix"')


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def load_moments(path, tol_herm=TOL_HERM) -> MomentSequence:
    return moments_from_dict(load_json(path), tol_herm=tol_herm)


def save_moments(m: MomentSequence, path) -> str:
    return dump_json(moments_to_dict(m), path)


def load_measure(path) -> DiscreteMatrixMeasure:
    return measure_from_dict(load_json(path))


def save_measure(mu: DiscreteMatrixMeasure, path) -> str:
    return dump_json(measure_to_dict(mu), path)


def format_float(x) -> str:
    # '.' decimal, locale-free, 17 significant digits
    return format(float(x), ".17g")


def transform_csv_header(dim) -> str:
    cols = ["z_re", "z_im"]
    for j in range(dim):
        for k in range(dim):
            cols += [f"R_{j}{k}_re", f"R_{j}{k}_im"]
    return ",".join(cols)


def transform_csv_rows(values) -> str:
    """CSV body for a list of transform values (row-major d^2 entry pairs)."""
    lines = []
    for val in values:
        cells = [format_float(val.z.real), format_float(val.z.imag)]
        for entry in np.asarray(val.R).reshape(-1):
            cells += [format_float(entry.real), format_float(entry.imag)]
        lines.append(",".join(cells))
    return "\n".join(lines)


def write_transform_csv(values, dim, path=None) -> str:
    text = transform_csv_header(dim) + "\n" + transform_csv_rows(values) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def read_transform_csv(path):
    """Parse a transform CSV back into (z, R) pairs."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValidationError(f"{path}: empty CSV")
    ncols = len(lines[0].split(","))
    dim = int(round(np.sqrt((ncols - 2) / 2)))
    if 2 + 2 * dim * dim != ncols:
        raise ValidationError(f"{path}: column count {ncols} is not 2 + 2 d^2")
    out = []
    for ln in lines[1:]:
        vals = [float(c) for c in ln.split(",")]
        z = complex(vals[0], vals[1])
        flat = np.asarray(vals[2:]).reshape(dim * dim, 2)
        out.append((z, (flat[:, 0] + 1j * flat[:, 1]).reshape(dim, dim)))
    return out
