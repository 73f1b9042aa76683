# encoding: utf-8
"""Instance and schedule files (JSON) and curve files (CSV).

An instance file:

    {
      "tx_times": [0.5, 0.1, 0.3, 0.7, 0.4],
      "comp_times": [0.2, 0.4, 0.3, 0.6, 0.8],
      "initial_age": 1,
      "deadline": 3
    }

"initial_age" defaults to 0; an optional "n" must match the array lengths.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import csv
import io
import json
import logging
from collections import OrderedDict

from aoisched.errors import FileFormatError
from aoisched.model import Instance, Schedule
from aoisched.utils import is_finite, fmt_decimal

logger = logging.getLogger(__name__)

INSTANCE_KEYS = ("n", "tx_times", "comp_times", "initial_age", "deadline")
SCHEDULE_KEYS = ("gen_times", "comp_starts", "area", "average", "peaks", "method")


def _read_json(path):
    with io.open(path, encoding="utf-8") as f:
        text = f.read()
    try:
        doc = json.loads(text)
    except ValueError as e:
        if hasattr(e, "lineno"):
            raise FileFormatError(path, "line {}, column {}: {}".format(e.lineno, e.colno, e.msg))
        raise FileFormatError(path, str(e))
    if not isinstance(doc, dict):
        raise FileFormatError(path, "expected a JSON object at the top level")
    return doc


def _numbers(doc, key, path):
    if key not in doc:
        raise FileFormatError(path, 'missing key "{}"'.format(key))
    values = doc[key]
    if not isinstance(values, list) or not values:
        raise FileFormatError(path, 'key "{}" must be a non-empty array of numbers'.format(key))
    for k, v in enumerate(values):
        if not is_finite(v):
            raise FileFormatError(path, 'key "{}" item {} must be a finite number, got {!r}'.format(
                key, k, v))
    return values


def _number(doc, key, path, default=None):
    if key not in doc:
        if default is None:
            raise FileFormatError(path, 'missing key "{}"'.format(key))
        return default
    value = doc[key]
    if not is_finite(value):
        raise FileFormatError(path, 'key "{}" must be a finite number, got {!r}'.format(key, value))
    return value


def load_instance(path):
    """Read an instance file.

    @param path(string): the file path.

    @return(Instance): the instance.
    @raise FileFormatError: the file is not a valid instance file.
    @raise InstanceError: the values break an instance invariant.
    """
    doc = _read_json(path)

    unknown = sorted(set(doc) - set(INSTANCE_KEYS))
    if unknown:
        logger.warning("%s: ignoring unknown keys %s", path, ", ".join(unknown))

    tx_times = _numbers(doc, "tx_times", path)
    comp_times = _numbers(doc, "comp_times", path)
    if len(tx_times) != len(comp_times):
        raise FileFormatError(path, 'keys "tx_times" and "comp_times" have {} and {} items'.format(
            len(tx_times), len(comp_times)))
    if "n" in doc and doc["n"] != len(tx_times):
        raise FileFormatError(path, 'key "n" is {!r} but the arrays have {} items'.format(
            doc["n"], len(tx_times)))

    return Instance(tx_times, comp_times,
                    _number(doc, "initial_age", path, default=0.0),
                    _number(doc, "deadline", path))


def dump_instance(path, instance):
    doc = {
        "tx_times": list(instance.tx_times),
        "comp_times": list(instance.comp_times),
        "initial_age": instance.initial_age,
        "deadline": instance.deadline,
    }
    _write_json(path, doc, INSTANCE_KEYS)


def load_schedule(path):
    """Read a schedule file.

    @return(tuple): (Schedule, dict) where the dict holds the optional keys
                    "area", "average", "peaks" and "method" found in the file.
    @raise FileFormatError: the file is not a valid schedule file.
    """
    doc = _read_json(path)
    gen_times = _numbers(doc, "gen_times", path)
    comp_starts = _numbers(doc, "comp_starts", path)
    if len(gen_times) != len(comp_starts):
        raise FileFormatError(path, 'keys "gen_times" and "comp_starts" have {} and {} items'.format(
            len(gen_times), len(comp_starts)))

    extras = dict((k, doc[k]) for k in SCHEDULE_KEYS[2:] if k in doc)
    return Schedule(gen_times, comp_starts), extras


def dump_schedule(path, result):
    """Write a SolveResult as a schedule file.

    Numbers are written in their shortest round-trip form.
    """
    doc = {
        "gen_times": list(result.schedule.gen_times),
        "comp_starts": list(result.schedule.comp_starts),
        "area": result.metrics.area,
        "average": result.metrics.average,
        "peaks": list(result.metrics.peaks),
        "final_age": result.metrics.final_age,
        "method": result.method,
        "regime": result.regime.kind,
    }
    if result.water_level is not None:
        doc["water_level"] = result.water_level
    _write_json(path, doc, SCHEDULE_KEYS + ("final_age", "regime", "water_level"))


def _write_json(path, doc, order):
    ordered = OrderedDict((k, doc[k]) for k in order if k in doc)
    with io.open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(ordered, indent=2) + "\n")


def write_curve_csv(path, curve):
    """Write the breakpoints of an AoiCurve as CSV with the header "time,age"."""
    with io.open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(("time", "age"))
        for time, age in curve.breakpoints:
            writer.writerow((fmt_decimal(time), fmt_decimal(age)))
