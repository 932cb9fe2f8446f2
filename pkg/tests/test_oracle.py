from binset import OracleLedger


def test_hand_computed_prefix_sums():
    oracle = OracleLedger()
    for t, d in [(10, -7), (1, 3), (5, 4)]:
        oracle.add_event(t, d)
    assert oracle.events == [(1, 3), (5, 4), (10, -7)]
    assert oracle.max_reserved(1, 16) == 7
    assert oracle.min_reserved(1, 16) == 0


def test_empty_oracle():
    oracle = OracleLedger()
    assert oracle.max_reserved(-3, 3) == oracle.min_reserved(-3, 3) == 0


def test_start_is_included_end_is_not():
    oracle = OracleLedger()
    oracle.add_event(5, 2)
    assert oracle.max_reserved(1, 5) == 0
    assert oracle.max_reserved(5, 6) == 2
    assert oracle.min_reserved(1, 6) == 0


def test_merge_and_cancel():
    oracle = OracleLedger()
    oracle.add_event(4, 2)
    oracle.add_event(4, 3)
    assert oracle.events == [(4, 5)]
    oracle.add_event(4, -5)
    assert oracle.events == []


def test_values_against_pointwise_definition():
    oracle = OracleLedger()
    for t, d in [(0, 4), (3, -6), (4, 9), (8, -2), (12, -5)]:
        oracle.add_event(t, d)
    for q0 in range(-2, 15):
        for q1 in range(q0 + 1, 16):
            pointwise = [oracle.reserved_at(t) for t in range(q0, q1)]
            assert oracle.max_reserved(q0, q1) == max(pointwise)
            assert oracle.min_reserved(q0, q1) == min(pointwise)
