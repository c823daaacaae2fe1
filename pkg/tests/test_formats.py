import json
import math

import numpy as np
import pytest

from ptosc.coherent import CoherentSpec
from ptosc.fields import GridSpec, sample_coherent_density, sample_density
from ptosc.formats import (
    atomic_write,
    grid_from_csv,
    grid_from_json,
    grid_to_csv,
    grid_to_json,
    read_grid,
    table_from_csv,
    table_to_csv,
    write_grid,
)
from ptosc.oscillator import EigenState

SPEC = GridSpec(-2.5, 3.0, -1.0, 1.0, 7, 5)


@pytest.fixture
def density():
    return sample_density(EigenState(2, 1, 1.5), SPEC)


def test_csv_header_and_row_order(density):
    lines = grid_to_csv(density).splitlines()
    assert lines[0] == (
        "# quantity=density n=2 m=1 N=none A=none theta=none lambda=1.5 nx=7 ny=5 "
        "x_min=-2.5 x_max=3 y_min=-1 y_max=1 generated_by=ptosc-0.1.0"
    )
    assert len(lines) == 1 + 7 * 5
    rows = [ln.split(",") for ln in lines[1:]]
    # y outer, x inner
    assert [float(r[1]) for r in rows[:7]] == [-1.0] * 7
    assert [float(r[0]) for r in rows[:7]] == SPEC.xs.tolist()
    x3, y2 = SPEC.xs[3], SPEC.ys[2]
    r = rows[2 * 7 + 3]
    assert (float(r[0]), float(r[1])) == (x3, y2)
    assert complex(float(r[2]), float(r[3])) == density.values[3, 2]


def test_csv_round_trip_is_exact(density):
    back = grid_from_csv(grid_to_csv(density))
    assert back.spec == density.spec
    assert back.quantity == "density"
    assert back.params == {"n": 2, "m": 1, "lambda": 1.5}
    assert np.array_equal(back.values, density.values)


def test_json_round_trip_is_exact():
    g = sample_coherent_density(CoherentSpec(3, 0.5, math.pi / 2, 1.0), SPEC)
    text = grid_to_json(g)
    doc = json.loads(text)
    assert len(doc["values"]) == 35
    assert doc["values"][1] == [g.values[0, 1].real, g.values[0, 1].imag]  # row-major
    back = grid_from_json(text)
    assert back.params == g.params
    assert np.array_equal(back.values, g.values)


def test_file_round_trip(tmp_path, density):
    for ext in ("csv", "json"):
        path = str(tmp_path / f"g.{ext}")
        write_grid(density, path, ext)
        assert np.array_equal(read_grid(path).values, density.values)


def test_extra_params_survive_csv(density):
    density.params["t"] = 0.25
    back = grid_from_csv(grid_to_csv(density))
    assert back.params["t"] == 0.25


def test_table_round_trip():
    rows = [[0.1, 1 / 3, -2.0], [1e-300, math.pi, 7.0]]
    cols, parsed = table_from_csv(table_to_csv("demo", ["a", "b", "c"], rows))
    assert cols == ["a", "b", "c"]
    assert parsed == rows


def test_atomic_write_leaves_no_temp_files(tmp_path):
    path = tmp_path / "sub" / "out.txt"
    atomic_write(str(path), "hello\n")
    atomic_write(str(path), "again\n")
    assert path.read_text() == "again\n"
    assert [p.name for p in path.parent.iterdir()] == ["out.txt"]


def test_malformed_csv_rejected():
    with pytest.raises(ValueError):
        grid_from_csv("0,0,1,0\n")
