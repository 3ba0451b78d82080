"""Baker-Campbell-Hausdorff product on gauge series.

``log(e^X e^Y)`` is expanded as a sum of left-normed brackets
``[[[w_1, w_2], w_3], ...]`` over words in ``X, Y``.  The table is the Dynkin
projection (coefficient of the word in ``log(e^X e^Y)`` divided by its length)
with words starting ``XX`` or ``YY`` dropped since their brackets vanish.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import OrderTooLarge
from .series import MAX_ORDER, TruncatedSeries

DYNKIN_TABLE = (
    ("X", "1"),
    ("Y", "1"),
    ("XY", "1/4"),
    ("YX", "-1/4"),
    ("XYX", "-1/18"),
    ("XYY", "1/36"),
    ("YXX", "1/36"),
    ("YXY", "-1/18"),
    ("XYXY", "-1/48"),
    ("YXYX", "1/48"),
    ("XYXXX", "1/900"),
    ("XYXXY", "-1/600"),
    ("XYXYX", "1/150"),
    ("XYXYY", "-1/600"),
    ("XYYXX", "-1/600"),
    ("XYYXY", "-1/600"),
    ("XYYYX", "1/900"),
    ("XYYYY", "-1/3600"),
    ("YXXXX", "-1/3600"),
    ("YXXXY", "1/900"),
    ("YXXYX", "-1/600"),
    ("YXXYY", "-1/600"),
    ("YXYXX", "-1/600"),
    ("YXYXY", "1/150"),
    ("YXYYX", "-1/600"),
    ("YXYYY", "1/900"),
    ("XYXXXY", "1/2160"),
    ("XYXXYY", "-1/1440"),
    ("XYXYXY", "1/360"),
    ("XYXYYY", "1/2160"),
    ("XYYXXY", "-1/1440"),
    ("XYYXYY", "-1/1440"),
    ("XYYYXY", "1/2160"),
    ("YXXXYX", "-1/2160"),
    ("YXXYXX", "1/1440"),
    ("YXXYYX", "1/1440"),
    ("YXYXXX", "-1/2160"),
    ("YXYXYX", "-1/360"),
    ("YXYYXX", "1/1440"),
    ("YXYYYX", "-1/2160"),
)

_COEFFS = tuple((w, mpq(c)) for w, c in DYNKIN_TABLE)


def bch_words(X, Y, bracket, max_length: int = MAX_ORDER):
    """``sum c_w [w]`` over table words of length ``<= max_length``.

    ``X``, ``Y`` are any values with ``+`` and scalar ``*``; brackets of
    shared prefixes are computed once.
    """
    letters = {"X": X, "Y": Y}
    cache = {}

    def nested(w):
        if w not in cache:
            cache[w] = letters[w] if len(w) == 1 else bracket(nested(w[:-1]), letters[w[-1]])
        return cache[w]

    total = None
    for w, c in _COEFFS:
        if len(w) > max_length:
            continue
        term = nested(w) * c
        total = term if total is None else total + term
    return total


def bch_mul(dgla, X: TruncatedSeries, Y: TruncatedSeries) -> TruncatedSeries:
    """``X . Y = log(e^X e^Y)`` for gauge series without constant term."""
    if X.order != Y.order:
        raise ValueError("gauge elements have different orders")
    K = X.order
    if K > MAX_ORDER:
        raise OrderTooLarge(f"BCH table covers orders up to {MAX_ORDER}, got {K}")
    for s in (X, Y):
        if not s[0].is_zero():
            raise ValueError("gauge elements must have zero constant term")
    zero = X[0] * 0

    def bracket(a, b):
        return a.convolve(b, dgla.bracket, zero)

    return bch_words(X, Y, bracket, max_length=K)
