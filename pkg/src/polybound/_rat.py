"""Exact rational arithmetic helpers.

All exact computation in this package runs on a single rational type ``Rat``.
When gmpy2 is installed (the normal case) that is ``gmpy2.mpq``, which is a
drop-in replacement for ``fractions.Fraction`` but roughly an order of
magnitude faster on the large numerators/denominators that show up while
factoring moment matrices.  Without gmpy2 everything still works on
``Fraction``, just slower.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only on gmpy2-less installs
    Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def rat(x) -> Rat:
    """Convert x to an exact rational.

    Strings may be "p/q", integers or decimal/scientific literals ("0.375",
    "1e-3"), all parsed exactly.  Floats are converted via their shortest
    decimal representation, so rat(0.1) == 1/10, not the binary expansion.
    """
    if isinstance(x, (int, Fraction)):
        return Rat(x)
    if type(x) is Rat:
        return x
    if isinstance(x, str):
        return Rat(Fraction(x.strip()))
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"cannot convert {x!r} to a rational")
        return Rat(Fraction(repr(x)))
    return Rat(x)


def rat_str(x) -> str:
    """Serialize exactly; inverse of rat() for rational inputs."""
    f = Fraction(x)
    return str(f)


def to_float(x) -> float:
    """Correctly rounded float of a rational; +-inf on overflow."""
    try:
        return float(x)
    except OverflowError:
        return float("inf") if x > 0 else float("-inf")
