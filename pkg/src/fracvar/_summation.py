"""Compensated summation helpers.

``math.fsum`` gives correctly rounded sums of flat sequences, so results do
not depend on how the terms were chunked.  For adding whole arrays term by
term (series evaluated on a grid) a vectorised Neumaier accumulator is used.
"""

import math

import numpy as np


class ArrayAccumulator:
    """Elementwise Neumaier-compensated running sum of numpy arrays."""

    def __init__(self, shape):
        self._s = np.zeros(shape)
        self._c = np.zeros(shape)

    def add(self, x):
        x = np.asarray(x, dtype=float)
        t = self._s + x
        big = np.abs(self._s) >= np.abs(x)
        # lost low-order bits of whichever operand was smaller
        self._c += np.where(big, (self._s - t) + x, (x - t) + self._s)
        self._s = t

    @property
    def value(self):
        return self._s + self._c


def fsum(values):
    """Correctly rounded sum of a numpy array or iterable."""
    if isinstance(values, np.ndarray):
        values = values.ravel().tolist()
    return math.fsum(values)

