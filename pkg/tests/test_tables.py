"""
Tests for the published tables and their recomputation
"""

import pytest

from rankbound.certify.tables import (
    CODIM_ONE_ROWS,
    HIGHER_CODIM_ROWS,
    check_codim_one,
    check_higher_codim,
    scan_formats,
)
from rankbound.core.formats import Format


def test_table_data():
    assert len(CODIM_ONE_ROWS) == 7
    assert len(HIGHER_CODIM_ROWS) == 17
    family = [row for row in CODIM_ONE_ROWS if row.family]
    assert [(row.r, row.format.sides, row.degree) for row in family] == [
        (4, (3, 3, 3), 9), (7, (3, 5, 5), 15)]
    assert all(row.bound is None for row in family)
    assert sum(row.degree is None for row in HIGHER_CODIM_ROWS) == 1


@pytest.mark.slow
def test_codim_one_rows_reproduce():
    """Only the reduced variable count of the defective family differs."""
    rows = check_codim_one(rng_seed=0, degrees={Format(3, 3, 3, 4): 9})
    assert len(rows) == 7
    for row in rows:
        assert row["codim"] == 1
        for mismatch in row["mismatches"]:
            assert mismatch["known"]
            assert mismatch["column"] == "n_vars"
    improving = [row["format"]["r"] for row in rows if row["improving"]]
    assert improving == [8, 17, 17, 18, 19]
    assert rows[0]["measured_degree"] == 9


@pytest.mark.slow
def test_higher_codim_rows_reproduce():
    rows = check_higher_codim(rng_seed=0)
    assert [row["minimal_q"] for row in rows] == [row.minimal_q for row in HIGHER_CODIM_ROWS]
    for row, published in zip(rows, HIGHER_CODIM_ROWS):
        assert row["mismatches"] == []
        assert row["generic_border_rank"] == published.r + 1


@pytest.mark.slow
def test_desk_scale_degree_mismatch_is_reported():
    rows = check_codim_one(rng_seed=0, degrees={Format(3, 3, 3, 4): 7})
    mismatches = rows[0]["mismatches"]
    assert {"column": "degree", "published": 9, "computed": 7, "known": False} in mismatches


def test_scan_small_formats():
    rows = scan_formats(4)
    assert [row["format"]["r"] for row in rows] == [2, 3, 4]
    assert all(row["format"]["a"] == 3 and row["generic_border_rank"] == 5 for row in rows)
    assert [row["codim"] for row in rows] == [13, 6, 1]
    assert [row["defective"] for row in rows] == [False, False, True]
