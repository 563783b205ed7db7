"""Interpretations used by the standard model.

The kernel compiler recognises these exact function objects and runs them
as native opcodes, so a model built from them evaluates without calling
back into Python.
"""


def add(m, n):
    return m + n


def mul(m, n):
    return m * n


def leq(m, n):
    return 1 if m <= n else 0


def delta(m, n):
    return 1 if m == n else 0


def some_nonzero(seq):
    """1 if some entry is nonzero, else 0."""
    return 1 if any(seq) else 0


def total(seq):
    return sum(seq)
