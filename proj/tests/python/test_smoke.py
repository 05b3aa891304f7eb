"""Smoke tests for the python surface of the synchronization library."""

import math

import pytest

import ranksync as rs


def test_syndrome_checksum_reinsert():
    seq = [3, 1, 5, 7, 2, 6, 4]
    assert rs.inversion_bits(seq) == [1, 0, 0, 1, 0, 1]
    assert rs.sequence_vt_syndrome(seq) == 4
    assert rs.checksum(seq) == 28
    # drop position 2, then reinsert its symbol by syndrome alone
    shorter = seq[:1] + seq[2:]
    assert rs.reinsert_by_vt(shorter, 1, 4) == seq


def test_stride_split_roundtrip():
    seq = [1, 5, 2, 8, 3, 4, 9, 6, 10, 7]
    parts = rs.deinterleave(seq, 3)
    assert parts == [[1, 8, 9, 7], [5, 3, 6], [2, 4, 10]]
    assert rs.interleave(parts) == seq
    assert rs.missing_symbols([3, 1], 4) == [2, 4]


def test_corruption_models():
    x = list(range(1, 8))
    assert rs.delete_positions(x, [2, 5]) == [1, 3, 4, 6, 7]
    assert rs.apply_translocation(x, 2, 6) == [1, 3, 4, 5, 6, 2, 7]
    assert rs.apply_transposition(x, 2, 5) == [1, 5, 3, 4, 2, 6, 7]
    with pytest.raises(ValueError):
        rs.apply_transposition([1, 1, 2], 1, 2)


def test_codec_matches_python_bignums():
    assert rs.binomial(1024, 16) == math.comb(1024, 16)
    assert rs.factorial(16) == math.factorial(16)
    assert rs.bit_width(math.comb(1024, 16)) == 116
    assert abs(rs.log2_binomial(1024, 16) - math.log2(math.comb(1024, 16))) < 1e-9

    last = list(range(1009, 1025))
    top = math.comb(1024, 16) - 1
    assert rs.subset_rank(last, 1024) == top
    assert rs.subset_unrank(top, 1024, 16) == last
    assert rs.ordering_rank([3, 1, 2], [1, 2, 3]) == 4
    assert rs.ordering_unrank(4, [1, 2, 3]) == [3, 1, 2]


def test_deletion_protocols_restore_exactly():
    x = [3, 1, 5, 7, 2, 6, 4]
    y = rs.delete_positions(x, [2, 6])
    for fn in (rs.sync_deletions_interactive, rs.sync_deletions_limited_feedback):
        out = fn(x, y, 2)
        assert out["success"]
        assert out["restored"] == x
        assert out["forward_wire"] > 0
    short = rs.sync_insertions_oneway(y, x, 2)
    assert short["success"] and short["restored"] == y and short["feedback_wire"] == 0


def test_block_deletion_frozen_cost():
    x = [1, 5, 2, 8, 3, 4, 9, 6, 10, 7]
    y = [1, 5, 2, 8, 6, 10, 7]
    out = rs.sync_block_deletion(x, y, 3)
    assert out["success"] and out["restored"] == x
    assert out["forward_wire"] == 25
    assert out["rounds"] == 2


def test_rearrangement_protocols():
    x = list(range(1, 8))
    y = rs.apply_translocation(x, 2, 6)
    out = rs.sync_translocation(x, y)
    assert out["success"] and out["restored"] == x

    y2 = rs.apply_transposition(x, 2, 5)
    out2 = rs.sync_transposition_oneway(x, y2)
    assert out2["success"] and out2["restored"] == x
    assert out2["feedback_wire"] == 0

    assert 1 <= rs.anchor_transposition_rounds(x, 2, 5, seed=7) <= 7


def test_experiment_report():
    rep = rs.run_experiment("p2", n=64, d=2, trials=40, seed=9)
    assert rep["config"]["protocol"] == "p2"
    assert rep["measured"]["success_rate"] == 1.0
    assert rep["measured"]["forward"]["wire"]["mean"] > 0
    assert "genie_deletions" in rep["theoretical"]


def test_reference_values():
    mean, var = rs.reference_value("genie_deletions", 16, 2)
    assert abs(mean - math.log2(240)) < 1e-9
    assert var is None
    mean, var = rs.reference_value("block_forward_expectation", 1024, 2)
    assert abs(mean - 90.0) < 1e-9
    assert abs(var - 225.0) < 1e-9
    with pytest.raises(ValueError):
        rs.reference_value("no_such_reference", 16, 2)


def test_verify_suites():
    checks = rs.verify("roundtrip", 4)
    assert checks
    assert all(c["passed"] for c in checks)
