import json
import threading

import numpy as np
import pytest

from sepvol.bodies import euclidean_ball
from sepvol.operators import FactorShape
from sepvol.ppt import ppt_fraction_mc
from sepvol.sampling import SeededStream
from sepvol.utils import CheckRecord, chunk_sizes, map_streams, track
from sepvol.widths import gaussian_width_mc


def test_check_record_access():
    rec = CheckRecord(passed=True, ratio=0.5)
    assert rec.passed and rec["ratio"] == 0.5
    rec.slack = 0.1
    assert rec["slack"] == 0.1

    rec["gap"] = 2.0
    assert rec.gap == 2.0


def test_check_record_from_nested_dict():
    dct = {"a": 1, "b": {"c": 2}}
    rec = CheckRecord(dct)
    assert isinstance(rec.b, CheckRecord) and rec.b.c == 2
    assert dict(rec) == dct

    # CheckRecord creates a copy of dct.
    rec.b.c = 3
    assert dct["b"]["c"] == 2


def test_check_record_rejects_dict_attributes():
    with pytest.raises(ValueError):
        CheckRecord(items=1)
    with pytest.raises(ValueError):
        CheckRecord({"keys": 1})


def test_check_record_to_builtin():
    rec = CheckRecord(
        passed=np.bool_(True),
        count=np.int64(3),
        grid=np.arange(3.0),
        z=1 + 2j,
        nested={"x": np.float32(0.5)},
    )
    out = rec.to_builtin()
    assert out == {
        "passed": True,
        "count": 3,
        "grid": [0.0, 1.0, 2.0],
        "z": {"re": 1.0, "im": 2.0},
        "nested": {"x": 0.5},
    }
    assert json.loads(rec.to_json()) == out


def test_check_record_non_finite_floats():
    rec = CheckRecord(delta=float("nan"), bound=np.inf, x=np.float64(-np.inf), z=complex(1, np.nan), ok=0.5)
    out = rec.to_builtin()
    assert out == {"delta": None, "bound": None, "x": None, "z": {"re": 1.0, "im": None}, "ok": 0.5}
    assert json.loads(rec.to_json()) == out


def test_check_record_serializes_estimates():
    fraction = ppt_fraction_mc(FactorShape(2, 2), 100, SeededStream(0))
    out = CheckRecord(fraction=fraction).to_builtin()
    assert out["fraction"]["samples"] == 100
    assert 0 <= out["fraction"]["fraction"] <= 1


def test_chunk_sizes():
    assert chunk_sizes(5000) == [2048, 2048, 904]
    assert chunk_sizes(2048) == [2048]
    assert chunk_sizes(3, chunk_size=2) == [2, 1]
    with pytest.raises(ValueError):
        chunk_sizes(0)


def test_map_streams_preserves_order():
    stream = SeededStream(1)

    def draw(i, child):
        return i, child.generator().standard_normal()

    serial = map_streams(draw, 10, stream, n_workers=1)
    threaded = map_streams(draw, 10, stream, n_workers=4)
    assert serial == threaded
    assert [i for i, _ in serial] == list(range(10))
    assert serial[3][1] == stream.child(3).generator().standard_normal()
    with pytest.raises(ValueError):
        map_streams(draw, 2, stream, n_workers=0)


def test_map_streams_serial_runs_inline():
    seen = set()

    def record(i, child):
        seen.add(threading.get_ident())
        return i

    assert map_streams(record, 8, SeededStream(0), n_workers=1) == list(range(8))
    assert seen == {threading.get_ident()}


def test_estimates_do_not_depend_on_workers():
    body = euclidean_ball(6)
    a = gaussian_width_mc(body, 5000, SeededStream(9), n_workers=1)
    b = gaussian_width_mc(body, 5000, SeededStream(9), n_workers=2)
    assert a.mean == b.mean and a.std_error == b.std_error


@pytest.mark.parametrize("style", ["rich", "tqdm"])
def test_track(style):
    items = [1, 2, 3]
    assert list(track(items, style=style)) == items
    assert track(items, disable=True, style=style) is items
    single = [0]
    assert track(single, style=style) is single


def test_track_bad_style():
    with pytest.raises(ValueError):
        track([1], style="ascii")
