"""Polynomials in a formal parameter, truncated at a fixed order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

MAX_ORDER = 6
DEFAULT_ORDER = 4


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """``c_0 + c_1 l + ... + c_K l^K``; coefficients are any values with
    ``+``, ``-``, scalar ``*`` and ``is_zero()``."""

    coefficients: tuple

    def __init__(self, coefficients: Sequence):
        object.__setattr__(self, "coefficients", tuple(coefficients))
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant coefficient")

    @classmethod
    def constant(cls, c0, zero, order: int) -> "TruncatedSeries":
        return cls([c0] + [zero] * order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int):
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def _check(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise ValueError(f"series orders differ ({self.order} vs {other.order})")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self, other)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self])

    def __mul__(self, c) -> "TruncatedSeries":
        return TruncatedSeries([a * c for a in self])

    __rmul__ = __mul__

    def map(self, f: Callable) -> "TruncatedSeries":
        return TruncatedSeries([f(a) for a in self])

    def convolve(self, other: "TruncatedSeries", op: Callable, zero) -> "TruncatedSeries":
        """``sum_(i+j=n) op(a_i, b_j)`` for ``n <= K``; higher terms are dropped."""
        self._check(other)
        out = []
        for n in range(self.order + 1):
            acc = zero
            for i in range(n + 1):
                acc = acc + op(self[i], other[n - i])
            out.append(acc)
        return TruncatedSeries(out)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients[: order + 1])

    def extend(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients + (c,))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def lowest_nonzero(self):
        """Index of the first nonzero coefficient, or ``None``."""
        return next((k for k, c in enumerate(self) if not c.is_zero()), None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self, other))

    __hash__ = None
