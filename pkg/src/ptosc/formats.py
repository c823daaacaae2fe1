"""File formats for grids and tables.

Grid CSV: one ``# key=value ...`` header line, then ``x,y,re,im`` rows with
y as the outer loop.  Grid JSON: the FieldGrid fields with ``values`` as a
flat row-major list of [re, im] pairs.  Floats are written with 17
significant digits so a parse reproduces them exactly.
"""

import json
import os
import tempfile

import numpy as np

from . import GENERATED_BY
from .fields import FieldGrid, GridSpec

HEADER_KEYS = ("quantity", "n", "m", "N", "A", "theta", "lambda")
SPEC_KEYS = ("nx", "ny", "x_min", "x_max", "y_min", "y_max")


def fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temp file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_number(text):
    if text == "none":
        return None
    try:
        return int(text)
    except ValueError:
        return float(text)


def grid_to_csv(grid):
    spec = grid.spec
    fields = [f"quantity={grid.quantity}"]
    for key in HEADER_KEYS[1:]:
        value = grid.params.get(key)
        fields.append(f"{key}={'none' if value is None else fmt(value)}")
    for key in sorted(set(grid.params) - set(HEADER_KEYS)):
        fields.append(f"{key}={fmt(grid.params[key])}")
    for key in SPEC_KEYS:
        fields.append(f"{key}={fmt(getattr(spec, key))}")
    fields.append(f"generated_by={GENERATED_BY.replace(' ', '-')}")
    lines = ["# " + " ".join(fields)]
    xs, ys = spec.xs, spec.ys
    re, im = grid.values.real, grid.values.imag
    for j in range(spec.ny):
        yj = fmt(ys[j])
        for i in range(spec.nx):
            lines.append(f"{fmt(xs[i])},{yj},{fmt(re[i, j])},{fmt(im[i, j])}")
    return "\n".join(lines) + "\n"


def grid_from_csv(text):
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("grid CSV must start with a '# key=value' header")
    meta = dict(item.split("=", 1) for item in lines[0][1:].split())
    spec = GridSpec(**{k: _parse_number(meta[k]) for k in SPEC_KEYS})
    params = {}
    for key, text in meta.items():
        if key in SPEC_KEYS or key in ("quantity", "generated_by"):
            continue
        value = _parse_number(text)
        if value is not None:
            params[key] = value
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:] if ln])
    if data.shape != (spec.nx * spec.ny, 4):
        raise ValueError(f"expected {spec.nx * spec.ny} rows of x,y,re,im")
    # rows are y-outer, x-inner -> reshape to (ny, nx) then transpose to [i, j]
    re = data[:, 2].reshape(spec.ny, spec.nx).T
    im = data[:, 3].reshape(spec.ny, spec.nx).T
    return FieldGrid(spec, re + 1j * im, meta["quantity"], params)


def grid_to_json(grid):
    spec = grid.spec
    doc = {
        "generated_by": GENERATED_BY,
        "quantity": grid.quantity,
        "params": dict(grid.params),
        "spec": {k: getattr(spec, k) for k in SPEC_KEYS},
        "values": [[float(v.real), float(v.imag)] for v in grid.values.ravel()],
    }
    return json.dumps(doc, indent=1) + "\n"


def grid_from_json(text):
    doc = json.loads(text)
    spec = GridSpec(**doc["spec"])
    pairs = np.array(doc["values"], dtype=float).reshape(spec.nx, spec.ny, 2)
    return FieldGrid(spec, pairs[..., 0] + 1j * pairs[..., 1], doc["quantity"], doc["params"])


def table_to_csv(name, columns, rows, meta=None):
    head = [f"table={name}"]
    head += [f"{k}={v}" for k, v in (meta or {}).items()]
    head.append(f"generated_by={GENERATED_BY.replace(' ', '-')}")
    lines = ["# " + " ".join(head), ",".join(columns)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def table_to_json(name, columns, rows, meta=None):
    doc = {
        "generated_by": GENERATED_BY,
        "table": name,
        "meta": meta or {},
        "columns": list(columns),
        "rows": [[float(v) if not isinstance(v, (int, np.integer)) else int(v) for v in row]
                 for row in rows],
    }
    return json.dumps(doc, indent=1) + "\n"


def table_from_csv(text):
    lines = [ln for ln in text.splitlines() if ln]
    columns = lines[1].split(",")
    rows = [[_parse_number(v) for v in ln.split(",")] for ln in lines[2:]]
    return columns, rows


def write_grid(grid, path, fmt_name="csv"):
    atomic_write(path, grid_to_csv(grid) if fmt_name == "csv" else grid_to_json(grid))


def read_grid(path):
    with open(path) as fh:
        text = fh.read()
    return grid_from_json(text) if path.endswith(".json") else grid_from_csv(text)
