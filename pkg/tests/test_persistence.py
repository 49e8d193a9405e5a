"""
Tests for witness file persistence
"""

import json

import numpy as np
import pytest

from rankbound.errors import WitnessFileError
from rankbound.utils.metrics import run_metrics
from rankbound.utils.persistence import (
    decode_complex,
    encode_complex,
    load_witness,
    save_witness,
    witness_from_dict,
    witness_to_dict,
)


def test_save_then_load_is_bit_exact(sigma4_333, tmp_path):
    ws = sigma4_333
    path = save_witness(ws, tmp_path / "nested" / "sigma4.json")
    assert run_metrics.checkpoints == 1
    loaded = load_witness(path)

    assert loaded.profile == ws.profile
    assert loaded.meta == ws.meta
    for name in ("A", "B", "H", "u0"):
        np.testing.assert_array_equal(getattr(loaded.params, name), getattr(ws.params, name))
    for a, b in zip(loaded.solutions, ws.solutions):
        np.testing.assert_array_equal(a.u, b.u)
        np.testing.assert_array_equal(a.t, b.t)


def test_file_declares_its_layout(sigma4_333, tmp_path):
    path = save_witness(sigma4_333, tmp_path / "w.json")
    data = json.loads(path.read_text())
    assert data["meta"]["index_order"] == "row-major-ijk"
    assert data["format"] == {"a": 3, "b": 3, "c": 3, "r": 4}
    assert data["profile"] == {"dim": 26, "codim": 1, "fiber_dim": 2}
    assert not list(tmp_path.glob("*.tmp"))


def test_corrupted_solution_is_rejected_with_its_index(sigma4_333):
    data = witness_to_dict(sigma4_333)
    data["solutions"].append(json.loads(json.dumps(data["solutions"][0])))
    data["solutions"][1]["t"] = [[1.0, 0.0]]
    with pytest.raises(WitnessFileError) as excinfo:
        witness_from_dict(data)
    assert excinfo.value.index == 1


def test_malformed_solution_is_rejected_with_its_index(sigma4_333):
    data = witness_to_dict(sigma4_333)
    data["solutions"][0]["u"] = [[1.0, 0.0]]
    with pytest.raises(WitnessFileError) as excinfo:
        witness_from_dict(data)
    assert excinfo.value.index == 0


def test_schema_violations(sigma4_333, tmp_path):
    data = witness_to_dict(sigma4_333)
    del data["params"]
    with pytest.raises(WitnessFileError):
        witness_from_dict(data)

    data = witness_to_dict(sigma4_333)
    data["meta"]["index_order"] = "column-major"
    with pytest.raises(WitnessFileError):
        witness_from_dict(data)

    data = witness_to_dict(sigma4_333)
    data["profile"]["codim"] = 2
    with pytest.raises(WitnessFileError):
        witness_from_dict(data)

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(WitnessFileError):
        load_witness(broken)
    with pytest.raises(WitnessFileError):
        load_witness(tmp_path / "missing.json")


def test_complex_codec():
    values = np.array([[1.5 - 2j, 0.1 + 0.2j]])
    encoded = encode_complex(values)
    assert encoded == [[[1.5, -2.0], [0.1, 0.2]]]
    np.testing.assert_array_equal(decode_complex(encoded, (1, 2)), values)
    assert decode_complex([], (0, 4)).shape == (0, 4)
    with pytest.raises(ValueError):
        decode_complex(encoded, (2, 1))
    with pytest.raises(ValueError):
        decode_complex([[float("nan"), 0.0]], (1,))


def test_failed_write_leaves_no_temporary_file(sigma4_333, tmp_path, monkeypatch):
    def refuse(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr("rankbound.utils.persistence.os.replace", refuse)
    with pytest.raises(WitnessFileError):
        save_witness(sigma4_333, tmp_path / "w.json")
    assert not list(tmp_path.iterdir())
    assert run_metrics.checkpoints == 0


def test_loop_path_count_survives_a_round_trip(sigma4_333, tmp_path):
    ws = sigma4_333
    ws.meta.loop_paths, ws.meta.paths_failed = 12, 3
    loaded = load_witness(save_witness(ws, tmp_path / "w.json"))
    assert loaded.meta.loop_paths == 12
    assert loaded.meta.failure_rate == pytest.approx(0.25)
