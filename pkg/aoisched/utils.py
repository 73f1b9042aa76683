# encoding: utf-8
from __future__ import print_function, unicode_literals, absolute_import, division

import math
import numbers


is_number = lambda v: isinstance(v, numbers.Real) and not isinstance(v, bool)
is_finite = lambda v: is_number(v) and math.isfinite(v)


def to_floats(values, name):
    """Convert a sequence of real numbers into a tuple of floats.

    @param values(sequence): the numbers.
    @param name(string): the field name used in the error message.

    @return(tuple): the floats.
    """
    if values is None or isinstance(values, (str, bytes)):
        raise ValueError("{} must be a sequence of numbers".format(name))
    try:
        items = list(values)
    except TypeError:
        raise ValueError("{} must be a sequence of numbers".format(name))

    result = []
    for k, v in enumerate(items):
        if not is_finite(v):
            raise ValueError("{}[{}] must be a finite number, got {!r}".format(name, k, v))
        result.append(float(v))
    return tuple(result)


def fmt_decimal(value, digits=9):
    """Format a number with at most `digits` fractional digits.

    Trailing zeros are dropped, so 3.0 gives "3" and 2.5 gives "2.5".
    """
    text = "{:.{}f}".format(round(float(value), digits), digits)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        text = "0"
    return text


def fmt_seconds(value):
    """Return the shortest decimal string that reads back to the same float."""
    return repr(float(value))


def fmt_list(values):
    return "(" + ", ".join(fmt_seconds(v) for v in values) + ")"
