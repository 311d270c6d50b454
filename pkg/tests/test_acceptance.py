"""Acceptance checks, one test per criterion line.

Each test prints the same ``[PASS]``/``[FAIL]`` line as ``fracvar selftest``.
"""

import functools

import pytest

from fracvar import acceptance

LINES = [
    ("criterion_1", 0, "1a"), ("criterion_1", 1, "1b"), ("criterion_1", 2, "1c"),
    ("criterion_2", 0, "2"), ("criterion_3", 0, "3"), ("criterion_4", 0, "4"),
    ("criterion_5", 0, "5"), ("criterion_6", 0, "6"), ("criterion_7", 0, "7"),
    ("criterion_8", 0, "8a"), ("criterion_8", 1, "8b"), ("criterion_8", 2, "8c"),
    ("criterion_9", 0, "9"), ("criterion_10", 0, "10a"), ("criterion_10", 1, "10b"),
    ("criterion_11", 0, "11a-b3"), ("criterion_11", 1, "11a-b6"),
    ("criterion_11", 2, "11b"), ("criterion_11", 3, "11c"),
    ("criterion_sweep", 0, "12-left"), ("criterion_sweep", 1, "12-right"),
]


@functools.cache
def _checks(name):
    return tuple(getattr(acceptance, name)())


def test_every_check_is_listed():
    for crit in acceptance.CRITERIA:
        listed = [i for name, i, _ in LINES if name == crit.__name__]
        assert listed == list(range(len(_checks(crit.__name__))))


@pytest.mark.parametrize("name,index", [(n, i) for n, i, _ in LINES],
                         ids=[label for *_, label in LINES])
def test_criterion(name, index):
    check = _checks(name)[index]
    print(check.line())
    assert check.passed, check.line()
