# encoding: utf-8
"""Deadline thresholds, reduced parameters and regime classification.

Three deadlines split the instances into regimes:

    min_deadline        any schedule at all is feasible;
    nowait_threshold    the no-wait computing policy is feasible;
    closedform_threshold  the equal-peak schedule is optimal.

They always satisfy min_deadline <= nowait_threshold <= closedform_threshold.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import math
from collections import namedtuple

import numpy as np

from aoisched.model import DEFAULT_TOL, check_dims

INFEASIBLE = "Infeasible"
TIGHT = "TightFeasible"
NOWAIT = "NoWaitFeasible"
CLOSED_FORM = "ClosedForm"


class ReducedParams(namedtuple("ReducedParams", "a b")):
    """The data of the no-wait problem in reduced coordinates.

    Minimize sum(x_k ** 2) subject to x_k >= a[k] and sum(x_k) == b, where
    x_k = t_k - t_{k-1} + T_k + C_k for k <= N and x_{N+1} = T - t_N.

    @attr a(tuple): the N + 1 lower bounds.
    @attr b(float): the fixed total.
    """

    __slots__ = ()

    @property
    def slack(self):
        """b - sum(a); negative when the no-wait policy is infeasible."""
        return math.fsum((self.b,) + tuple(-v for v in self.a))


class Regime(namedtuple("Regime", "kind min_deadline nowait_threshold closedform_threshold")):
    """The regime of an instance and the three thresholds it was decided by."""

    __slots__ = ()

    @property
    def feasible(self):
        return self.kind != INFEASIBLE

    def __str__(self):
        return self.kind


def min_deadline(instance):
    """Return the smallest deadline for which a feasible schedule exists.

    Packet k splits any schedule into the transmissions before it and the
    computations after it, so the deadline is at least
    T_1 + ... + T_k + C_k + ... + C_N for every k.
    """
    tx, comp = instance.tx_times, instance.comp_times
    return max(math.fsum(tx[:k + 1] + comp[k:]) for k in range(instance.n))


def nowait_threshold(instance):
    """Return the smallest deadline for which the no-wait policy is feasible.

    @return(float): T_1 + sum(max(C_k, T_{k+1}), k < N) + C_N.
    """
    tx, comp = instance.tx_times, instance.comp_times
    gaps = [max(comp[k], tx[k + 1]) for k in range(instance.n - 1)]
    return math.fsum([tx[0]] + gaps + [comp[-1]])


def _bound_terms(instance):
    """Return the durations that add up to each lower bound a_k."""
    tx, comp = instance.tx_times, instance.comp_times
    terms = [(instance.initial_age, tx[0], comp[0])]
    for k in range(1, instance.n):
        terms.append((tx[k - 1], max(comp[k - 1], tx[k]), comp[k]))
    terms.append((tx[-1], comp[-1]))
    return terms


def _lower_bounds(instance):
    return tuple(math.fsum(t) for t in _bound_terms(instance))


def reduced_params(instance):
    """Return the ReducedParams of the instance.

    The lower bounds never depend on the deadline; only b does.
    """
    b = math.fsum((instance.initial_age, instance.deadline)
                  + instance.tx_times + instance.comp_times)
    return ReducedParams(a=_lower_bounds(instance), b=b)


def closedform_threshold(instance):
    """Return the deadline from which all the peak ages can be made equal.

    Each candidate bound goes through a single fsum with the durations, so
    the result is the correctly rounded value of the exact expression.

    @return(float): (N + 1) * max(a) - sum(T_k + C_k) - initial_age.
    """
    rest = [-instance.initial_age] + [-v for v in instance.tx_times + instance.comp_times]
    return max(math.fsum(list(terms) * (instance.n + 1) + rest)
               for terms in _bound_terms(instance))


def classify(instance, tol=DEFAULT_TOL):
    """Return the Regime of the instance.

    A deadline equal to a threshold (within tol) falls into the more
    permissive regime.
    """
    lowest = min_deadline(instance)
    nowait = nowait_threshold(instance)
    closed = closedform_threshold(instance)
    deadline = instance.deadline

    if deadline < lowest - tol:
        kind = INFEASIBLE
    elif deadline < nowait - tol:
        kind = TIGHT
    elif deadline < closed - tol:
        kind = NOWAIT
    else:
        kind = CLOSED_FORM
    return Regime(kind, lowest, nowait, closed)


def reduced_coordinates(instance, schedule):
    """Return x_k = t_k - t_{k-1} + T_k + C_k (k <= N) and x_{N+1} = T - t_N."""
    check_dims(instance, schedule)
    t = np.asarray(schedule.gen_times)
    t_prev = np.concatenate(([-instance.initial_age], t[:-1]))
    x = t - t_prev + np.add(instance.tx_times, instance.comp_times)
    return tuple(float(v) for v in x) + (instance.deadline - float(t[-1]),)


def nowait_certificate(instance, schedule, tol=DEFAULT_TOL):
    """Check the sufficient condition under which an optimum is no-wait.

    If an optimal schedule satisfies T >= t_N + max_k(c_k + C_k - t_k),
    then every packet of it starts computing on arrival. The condition
    involves the optimum itself, so it can only be checked afterwards.
    """
    check_dims(instance, schedule)
    t = np.asarray(schedule.gen_times)
    post_drop = np.add(schedule.comp_starts, instance.comp_times) - t
    return bool(instance.deadline >= t[-1] + post_drop.max() - tol)
