# encoding: utf-8
"""Problem instances, schedules and the exact evaluation of the AoI objective.

A packet k is generated and transmitted at t_k, takes T_k seconds on the
channel, starts computing at c_k and takes C_k seconds on the edge server.
Its computation completes at d_k = c_k + C_k, where the age drops to
d_k - t_k. Before the first packet the age starts at the initial age, so
the generation time of the virtual packet 0 is t_0 = -initial_age.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import logging
from collections import namedtuple

import numpy as np
from scipy.integrate import trapezoid

from aoisched.errors import DimensionError, InstanceError, ScheduleError
from aoisched.utils import is_finite, to_floats, fmt_seconds

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9

# The constraint ids reported by validate_schedule.
START = "start"          # t_1 >= 0
TRANSMIT = "transmit"    # t_k >= t_{k-1} + T_{k-1}
COMPUTE = "compute"      # c_k >= c_{k-1} + C_{k-1}
ARRIVAL = "arrival"      # c_k >= t_k + T_k
DEADLINE = "deadline"    # c_N + C_N <= T

DEMO_TX_TIMES = (0.5, 0.1, 0.3, 0.7, 0.4)
DEMO_COMP_TIMES = (0.2, 0.4, 0.3, 0.6, 0.8)
DEMO_INITIAL_AGE = 1.0


class Instance(namedtuple("Instance", "tx_times comp_times initial_age deadline")):
    """The data of a scheduling problem.

    @param tx_times(sequence): the transmission times T_k in seconds, each > 0.
    @param comp_times(sequence): the computing times C_k in seconds, each > 0.
    @param initial_age(float): the age at time 0, >= 0.
    @param deadline(float): the deadline T in seconds, > 0.
    """

    __slots__ = ()

    def __new__(cls, tx_times, comp_times, initial_age, deadline):
        try:
            tx_times = to_floats(tx_times, "tx_times")
            comp_times = to_floats(comp_times, "comp_times")
        except ValueError as e:
            raise InstanceError(str(e))

        if not tx_times:
            raise InstanceError("at least one packet is required")
        if len(tx_times) != len(comp_times):
            raise InstanceError("tx_times has {} entries but comp_times has {}".format(
                len(tx_times), len(comp_times)))
        _validate_positive(tx_times, "tx_times")
        _validate_positive(comp_times, "comp_times")

        if not is_finite(initial_age) or initial_age < 0:
            raise InstanceError("initial_age must be a finite number >= 0, got {!r}".format(initial_age))
        if not is_finite(deadline) or deadline <= 0:
            raise InstanceError("deadline must be a finite number > 0, got {!r}".format(deadline))

        return super(Instance, cls).__new__(cls, tx_times, comp_times,
                                            float(initial_age), float(deadline))

    @property
    def n(self):
        return len(self.tx_times)

    def with_deadline(self, deadline):
        """Return a copy of the instance with another deadline."""
        return Instance(self.tx_times, self.comp_times, self.initial_age, deadline)


class Schedule(namedtuple("Schedule", "gen_times comp_starts")):
    """The decision variables: generation instants t_k and computing starts c_k.

    A schedule is not checked against any instance when it is built; use
    validate_schedule for that.
    """

    __slots__ = ()

    def __new__(cls, gen_times, comp_starts):
        try:
            gen_times = to_floats(gen_times, "gen_times")
            comp_starts = to_floats(comp_starts, "comp_starts")
        except ValueError as e:
            raise DimensionError(str(e))
        if len(gen_times) != len(comp_starts):
            raise DimensionError("gen_times has {} entries but comp_starts has {}".format(
                len(gen_times), len(comp_starts)))
        return super(Schedule, cls).__new__(cls, gen_times, comp_starts)

    @property
    def n(self):
        return len(self.gen_times)

    def completions(self, instance):
        """Return the computing completion epochs d_k = c_k + C_k."""
        return tuple(float(v) for v in np.add(self.comp_starts, instance.comp_times))

    def is_nowait(self, instance, tol=DEFAULT_TOL):
        """Whether every packet starts computing on arrival, c_k = t_k + T_k."""
        arrivals = np.add(self.gen_times, instance.tx_times)
        return bool(np.all(np.abs(np.subtract(self.comp_starts, arrivals)) <= tol))


class Violation(namedtuple("Violation", "constraint index slack")):
    """A broken constraint: its id, the 1-based packet index and the (negative) slack."""

    __slots__ = ()

    def __str__(self):
        return "{} constraint of packet {} short by {}".format(
            self.constraint, self.index, fmt_seconds(-self.slack))


class AoiMetrics(namedtuple("AoiMetrics", "area average peaks final_age")):
    """The evaluated objective of a schedule.

    @attr area(float): the integral of the age over [0, T].
    @attr average(float): area / T.
    @attr peaks(tuple): the peak ages x_k = c_k + C_k - t_{k-1}.
    @attr final_age(float): T - t_N, the age reached at the deadline.
    """

    __slots__ = ()

    def peak_values(self):
        """The n + 1 values (peaks..., final_age)."""
        return self.peaks + (self.final_age,)

    def peak_variance(self):
        values = np.asarray(self.peak_values())
        if values.size < 2:
            return 0.0
        return float(np.var(values, ddof=1))


class AoiCurve(namedtuple("AoiCurve", "breakpoints")):
    """The piecewise-linear sample path of the age on [0, T].

    At every completion epoch the curve holds two points with the same
    time: the age right before the drop, then the age right after it.
    """

    __slots__ = ()

    def times(self):
        return np.array([p[0] for p in self.breakpoints])

    def ages(self):
        return np.array([p[1] for p in self.breakpoints])

    def integrate(self):
        """Return the area below the curve by the trapezoid rule.

        The curve is piecewise linear, so the rule is exact.
        """
        return float(trapezoid(self.ages(), self.times()))

    def local_maxima(self):
        """Return the ages right before each drop, plus the age at the end."""
        points = self.breakpoints
        drops = (len(points) - 2) // 2
        return tuple(points[1 + 2 * k][1] for k in range(drops)) + (points[-1][1],)


def demo_instance(deadline=7.5):
    """Return the five-packet instance of the numerical study.

    @param deadline(float): the deadline; the study uses 3, 5 and 7.5.
    """
    return Instance(DEMO_TX_TIMES, DEMO_COMP_TIMES, DEMO_INITIAL_AGE, deadline)


def _validate_positive(values, name):
    for k, v in enumerate(values):
        if v <= 0:
            raise InstanceError("{}[{}] must be > 0, got {!r}".format(name, k, v))


def check_dims(instance, schedule):
    if schedule.n != instance.n:
        raise DimensionError("the schedule has {} packets but the instance has {}".format(
            schedule.n, instance.n))


def validate_schedule(instance, schedule, tol=DEFAULT_TOL):
    """Check a schedule against every constraint of the problem.

    @param instance(Instance): the problem data.
    @param schedule(Schedule): the schedule to check.
    @param tol(float): a constraint holds if its slack is >= -tol.

    @return(list): the Violation records, empty if the schedule is feasible.
    """
    check_dims(instance, schedule)

    t, c = schedule.gen_times, schedule.comp_starts
    tx, comp = instance.tx_times, instance.comp_times
    n = instance.n

    checks = [(START, 1, t[0])]
    for k in range(1, n):
        checks.append((TRANSMIT, k + 1, t[k] - t[k - 1] - tx[k - 1]))
    for k in range(1, n):
        checks.append((COMPUTE, k + 1, c[k] - c[k - 1] - comp[k - 1]))
    for k in range(n):
        checks.append((ARRIVAL, k + 1, c[k] - t[k] - tx[k]))
    checks.append((DEADLINE, n, instance.deadline - c[-1] - comp[-1]))

    return [Violation(name, k, slack) for name, k, slack in checks if slack < -tol]


def require_feasible(instance, schedule, tol=DEFAULT_TOL):
    """Raise ScheduleError listing the violations if the schedule is infeasible."""
    violations = validate_schedule(instance, schedule, tol)
    if violations:
        raise ScheduleError(violations)


def _area(instance, schedule):
    t = np.asarray(schedule.gen_times)
    d = np.add(schedule.comp_starts, instance.comp_times)
    t_prev = np.concatenate(([-instance.initial_age], t[:-1]))

    trapezoids = 0.5 * np.sum((d - t_prev) ** 2 - (d - t) ** 2)
    tail = 0.5 * (instance.deadline - t[-1]) ** 2
    return float(trapezoids + tail - 0.5 * instance.initial_age ** 2)


def aoi_area(instance, schedule, tol=DEFAULT_TOL):
    """Return the area below the age curve over [0, T], in seconds squared.

    The area is the sum of the trapezoids between consecutive completions,
    plus the triangle after the last generation, minus the triangle before
    time 0.

    @raise ScheduleError: the schedule is infeasible within tol.
    """
    require_feasible(instance, schedule, tol)
    return _area(instance, schedule)


def average_aoi(instance, schedule, tol=DEFAULT_TOL):
    """Return the average age over [0, T], in seconds."""
    return aoi_area(instance, schedule, tol) / instance.deadline


def peak_aoi(instance, schedule, tol=DEFAULT_TOL):
    """Return the peak ages x_k = c_k + C_k - t_{k-1}, k = 1..n."""
    require_feasible(instance, schedule, tol)
    return _peaks(instance, schedule)


def _peaks(instance, schedule):
    t_prev = (-instance.initial_age,) + schedule.gen_times[:-1]
    return tuple(float(v) for v in np.subtract(schedule.completions(instance), t_prev))


def evaluate(instance, schedule, tol=DEFAULT_TOL):
    """Return the AoiMetrics of a feasible schedule."""
    require_feasible(instance, schedule, tol)
    area = _area(instance, schedule)
    return AoiMetrics(area=area,
                      average=area / instance.deadline,
                      peaks=_peaks(instance, schedule),
                      final_age=instance.deadline - schedule.gen_times[-1])


def sample_curve(instance, schedule, tol=DEFAULT_TOL):
    """Return the sample path of the age as an AoiCurve.

    The points are (0, initial_age), then for each completion d_k the
    pre-drop age d_k - t_{k-1} and the post-drop age d_k - t_k, and
    finally the age at the deadline. A completion that passes the deadline
    within tol is drawn at the deadline, so the times never decrease.
    """
    require_feasible(instance, schedule, tol)

    points = [(0.0, instance.initial_age)]
    last_gen = -instance.initial_age
    for t_k, d_k in zip(schedule.gen_times, schedule.completions(instance)):
        d_k = min(d_k, instance.deadline)
        points.append((d_k, d_k - last_gen))
        points.append((d_k, d_k - t_k))
        last_gen = t_k
    points.append((instance.deadline, instance.deadline - last_gen))
    return AoiCurve(tuple(points))
