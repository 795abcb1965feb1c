import json

import pytest

from parahoric.utils.hash_utils import canonical_json, payload_digest
from parahoric.utils.logging_config import configure_from_env, configure_logging, get_logger
from parahoric.utils.process_pool import ordered_map
from parahoric.utils.validation import (
    ArgumentError,
    RangeError,
    is_prime_power,
    is_squarefree,
    require_prime_power,
    require_range,
    require_squarefree,
)


@pytest.mark.parametrize("q,expected", [(2, True), (8, True), (9, True), (6, False), (1, False), (0, False)])
def test_is_prime_power(q, expected):
    assert is_prime_power(q) is expected


@pytest.mark.parametrize("n,expected", [(1, True), (6, True), (30, True), (4, False), (18, False), (0, False)])
def test_is_squarefree(n, expected):
    assert is_squarefree(n) is expected


def test_require_helpers():
    assert require_range("r", 4, 2, 10) == 4
    with pytest.raises(RangeError):
        require_range("r", 12, 2, 10)
    with pytest.raises(RangeError):
        require_prime_power(12)
    with pytest.raises(ArgumentError):
        require_squarefree("N", 12)


def test_digest_ignores_key_order():
    a = {"b": 1, "a": [1, 2]}
    b = {"a": [1, 2], "b": 1}
    assert canonical_json(a) == '{"a":[1,2],"b":1}'
    assert payload_digest(a) == payload_digest(b)
    assert len(payload_digest(a).hex()) == 64
    with pytest.raises(ValueError):
        payload_digest(a, algo="nope")


@pytest.mark.parametrize("jobs", [1, 2])
def test_ordered_map_keeps_order(jobs):
    assert ordered_map(abs, [-3, 1, -2, 5], jobs=jobs) == [3, 1, 2, 5]


def test_json_logs_go_to_stderr(capsys):
    configure_logging(log_level="INFO", json_logs=True)
    try:
        get_logger("parahoric.tests.logging").info("Sweep finished", weights=3)
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["event"] == "Sweep finished"
        assert record["weights"] == 3
        assert record["level"] == "info"
    finally:
        configure_from_env()
