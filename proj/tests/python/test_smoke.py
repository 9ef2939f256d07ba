import json

import pytest

import _rectpath as rp

SQUARE = json.dumps({"outer": [[0, 0], [10, 0], [10, 10], [0, 10]]})
WITH_HOLE = json.dumps(
    {
        "outer": [[0, 0], [10, 0], [10, 10], [0, 10]],
        "holes": [[[4, 4], [6, 4], [6, 6], [4, 6]]],
    }
)


def test_domain_roundtrip():
    d = rp.Domain.from_json(WITH_HOLE)
    assert d.n == 8
    assert d.h == 1
    d2 = rp.Domain.from_json(d.to_json())
    assert d2.n == 8
    assert d.contains(1, 1)
    assert not d.contains(5, 5)  # inside the hole
    assert d.contains(4, 5)  # on the hole boundary


def test_invalid_domain():
    with pytest.raises(ValueError):
        rp.Domain.from_json(json.dumps({"outer": [[0, 0], [3, 1], [0, 2]]}))


def test_measures_and_frontier():
    d = rp.Domain.from_json(SQUARE)
    assert rp.oracle_measures(d, (1, 1), (8, 6), "mls") == (12, 2)
    dh = rp.Domain.from_json(WITH_HOLE)
    assert rp.oracle_measures(dh, (1, 5), (9, 5), "mls") == (10, 3)
    assert rp.oracle_frontier(dh, (1, 5), (9, 5)) == [(10, 3)]
