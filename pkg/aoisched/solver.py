# encoding: utf-8
"""Schedules for every regime of the deadline.

    greedy        every packet as early as possible, the only option right
                  at the minimum deadline;
    water fill    the best no-wait schedule, from the reduced problem;
    closed form   the equal-peak schedule, optimal from the closed-form
                  threshold on;
    general       the exact optimum over all schedules;
    oracle        a lattice search used to check the others.

The module functions use a default Solver; build your own Solver to change
the tolerance or the search options.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import itertools
import logging
import math
from collections import namedtuple

import numpy as np

from aoisched import feasibility
from aoisched import search
from aoisched.errors import (DimensionError, InfeasibleDeadlineError,
                             NoWaitInfeasibleError, RegimeError, ScheduleError)
from aoisched.model import DEFAULT_TOL, Schedule, evaluate, require_feasible
from aoisched.utils import is_finite, to_floats

logger = logging.getLogger(__name__)

GREEDY = "Greedy"
CLOSED_FORM = "ClosedForm"
WATER_FILL = "WaterFill"
GENERAL = "General"
ORACLE = "Oracle"

AREA_TIE_TOL = 1e-9
DEFAULT_GRID_STEP = 0.01
LARGE_LATTICE = 100000


class SolveResult(namedtuple("SolveResult", "schedule metrics regime method water_level")):
    """A solved schedule with its metrics.

    @attr schedule(Schedule): the feasible schedule.
    @attr metrics(AoiMetrics): its evaluated objective.
    @attr regime(Regime): the regime of the instance.
    @attr method(string): one of GREEDY, CLOSED_FORM, WATER_FILL, GENERAL, ORACLE.
    @attr water_level(float): the common value of the unclamped reduced
                              coordinates, or None for the other methods.
    """

    __slots__ = ()

    @property
    def area(self):
        return self.metrics.area


def lattice_error_bound(instance, grid_step):
    """Return how far the lattice optimum may be above the true optimum area."""
    return instance.n * grid_step * (instance.deadline + instance.initial_age)


class Solver(object):
    """Solver computes AoI-optimal schedules."""

    def __init__(self, tol=DEFAULT_TOL, exact_limit=6, restarts=None, seed=0):
        """Create a new solver.

        @param tol(float): the absolute feasibility tolerance in seconds, used
                           for validation and threshold comparisons.
        @param exact_limit(int): the largest number of packets solved by exact
                                 face enumeration; larger instances use
                                 multi-start SLSQP, which is not guaranteed
                                 to find the global optimum.
        @param restarts(int): the starts per branch of the SLSQP search.
                              If not given, use n + 1.
        @param seed(int): the seed of the random starts.
        """
        self._validate_tol(tol)
        if int(exact_limit) != exact_limit or exact_limit < 1:
            raise ValueError("exact_limit must be a positive integer, got {!r}".format(exact_limit))
        if restarts is not None and (int(restarts) != restarts or restarts < 1):
            raise ValueError("restarts must be a positive integer, got {!r}".format(restarts))

        self._tol = float(tol)
        self._exact_limit = int(exact_limit)
        self._restarts = restarts
        self._seed = seed

    @property
    def tol(self):
        return self._tol

    def _validate_tol(self, tol):
        if not is_finite(tol) or tol < 0:
            raise ValueError("tol must be a finite number >= 0, got {!r}".format(tol))

    def _validate_grid_step(self, grid_step):
        if not is_finite(grid_step) or grid_step <= 0:
            raise ValueError("grid_step must be a finite number > 0, got {!r}".format(grid_step))

    def _require_deadline(self, instance):
        regime = feasibility.classify(instance, self._tol)
        if not regime.feasible:
            raise InfeasibleDeadlineError(instance.deadline, regime.min_deadline)
        return regime

    def _result(self, instance, schedule, method, regime=None, water_level=None):
        if regime is None:
            regime = feasibility.classify(instance, self._tol)
        metrics = evaluate(instance, schedule, self._tol)
        logger.debug("%s: area %r, average %r", method, metrics.area, metrics.average)
        return SolveResult(schedule, metrics, regime, method, water_level)

    def greedy_schedule(self, instance):
        """Transmit every packet as early as possible and compute it as soon
        as the server is free.

        The schedule has the smallest completion time of all schedules.

        @raise InfeasibleDeadlineError: the deadline is below the minimum deadline.
        """
        self._require_deadline(instance)
        tx = instance.tx_times
        gen_times = tuple(math.fsum(tx[:k]) for k in range(instance.n))
        schedule = Schedule(gen_times, search.induce_comp_starts(instance, gen_times))
        require_feasible(instance, schedule, self._tol)
        return schedule

    def greedy_solve(self, instance):
        """Return the greedy schedule as a SolveResult.

        The last generation is settled as in every result (see
        search.settle_last), so t_N may be later than in greedy_schedule.
        """
        schedule = self.greedy_schedule(instance)
        gen_times = search.settle_last(instance, schedule.gen_times, schedule.comp_starts)
        return self._result(instance, Schedule(gen_times, schedule.comp_starts), GREEDY)

    def water_fill(self, params):
        """Minimize sum(x_k ** 2) subject to x_k >= a[k] and sum(x_k) == b.

        The minimizer is x_k = max(a[k], mu). The level mu is found exactly by
        clamping the largest bounds one by one.

        @param params(ReducedParams): the bounds a and the total b.

        @return(tuple): (x, mu)
        @raise NoWaitInfeasibleError: b < sum(a).
        """
        a = np.asarray(params.a, dtype=float)
        b = float(params.b)
        total = math.fsum(params.a)
        if b < total - self._tol:
            raise NoWaitInfeasibleError(b, total, what="reduced total")

        m = a.size
        s = np.sort(a)[::-1]
        clamped = np.concatenate(([0.0], np.cumsum(s)[:-1]))
        levels = (b - clamped) / (m - np.arange(m))
        hits = np.nonzero(levels >= s)[0]
        j = int(hits[0]) if hits.size else m - 1

        mu = float(levels[j])
        x = np.maximum(a, mu)
        logger.debug("water level %r with %d clamped coordinates", mu, j)
        return tuple(float(v) for v in x), mu

    def nowait_schedule_from_x(self, instance, x):
        """Turn reduced coordinates back into a no-wait schedule.

        @param x(sequence): the N + 1 reduced coordinates.

        @return(Schedule): t_k = t_{k-1} + x_k - T_k - C_k with t_0 = -initial_age,
                           and c_k = t_k + T_k.
        @raise ScheduleError: x breaks the bounds or the total of the reduced
                              problem, so t_N != T - x_{N+1}.
        """
        x = to_floats(x, "x")
        if len(x) != instance.n + 1:
            raise DimensionError("x must have {} entries, got {}".format(instance.n + 1, len(x)))

        b = feasibility.reduced_params(instance).b
        total = math.fsum(x)
        if abs(total - b) > self._tol:
            raise ScheduleError([], "x sums to {!r} but the reduced total is {!r}".format(total, b))

        gen_times = []
        last = -instance.initial_age
        for x_k, tx_k, comp_k in zip(x, instance.tx_times, instance.comp_times):
            last = math.fsum((last, x_k, -tx_k, -comp_k))
            gen_times.append(last)

        final = instance.deadline - x[-1]
        if abs(last - final) > self._tol:
            raise ScheduleError([], "t_N is {!r} but T - x_(N+1) is {!r}".format(last, final))

        schedule = Schedule(gen_times, np.add(gen_times, instance.tx_times))
        require_feasible(instance, schedule, self._tol)
        return schedule

    def nowait_construct(self, instance):
        """Return the earliest no-wait schedule.

        Each packet is sent as soon as the channel is free, but not before
        it can start computing on arrival.

        @raise NoWaitInfeasibleError: the deadline is below the no-wait threshold.
        """
        threshold = feasibility.nowait_threshold(instance)
        if instance.deadline < threshold - self._tol:
            raise NoWaitInfeasibleError(instance.deadline, threshold)

        tx, comp = instance.tx_times, instance.comp_times
        gen_times = [0.0]
        for k in range(1, instance.n):
            gen_times.append(gen_times[-1] + tx[k - 1] + max(0.0, comp[k - 1] - tx[k]))
        return Schedule(gen_times, np.add(gen_times, tx))

    def nowait_schedule(self, instance):
        """Return the best no-wait schedule and its water level."""
        threshold = feasibility.nowait_threshold(instance)
        if instance.deadline < threshold - self._tol:
            raise NoWaitInfeasibleError(instance.deadline, threshold)
        x, mu = self.water_fill(feasibility.reduced_params(instance))
        return self.nowait_schedule_from_x(instance, x), mu

    def nowait_solve(self, instance):
        """Return the best no-wait schedule as a SolveResult (method WaterFill)."""
        regime = self._require_deadline(instance)
        schedule, mu = self.nowait_schedule(instance)
        return self._result(instance, schedule, WATER_FILL, regime, mu)

    def closed_form_schedule(self, instance):
        """Return the equal-peak schedule.

        t_k = k * B / (N + 1) - sum(T_i + C_i, i <= k) - initial_age and
        c_k = t_k + T_k, so every peak age and the final age equal B / (N + 1).

        @raise RegimeError: the deadline is below the closed-form threshold.
        """
        regime = self._require_deadline(instance)
        if regime.kind != feasibility.CLOSED_FORM:
            raise RegimeError("closed-form", instance.deadline, regime.closedform_threshold)

        params = feasibility.reduced_params(instance)
        level = params.b / (instance.n + 1)
        durations = []
        gen_times = []
        for k, (tx_k, comp_k) in enumerate(zip(instance.tx_times, instance.comp_times)):
            durations.extend((tx_k, comp_k))
            gen_times.append(math.fsum([(k + 1) * level, -instance.initial_age]
                                       + [-v for v in durations]))

        schedule = Schedule(gen_times, np.add(gen_times, instance.tx_times))
        return self._result(instance, schedule, CLOSED_FORM, regime, level)

    def general_solve(self, instance):
        """Return an optimal schedule for any feasible deadline.

        The computing starts are always the earliest ones for the chosen
        generation instants. Up to exact_limit packets the optimum is exact;
        among optimal schedules the lexicographically smallest t is returned.

        @raise InfeasibleDeadlineError: the deadline is below the minimum deadline.
        """
        regime = self._require_deadline(instance)

        seeds = [self.greedy_schedule(instance).gen_times]
        if regime.kind != feasibility.TIGHT:
            seeds.append(self.nowait_schedule(instance)[0].gen_times)

        if instance.n <= self._exact_limit:
            found = search.exact_candidates(instance, self._tol)
        else:
            restarts = self._restarts or instance.n + 1
            logger.warning("%d packets exceed the exact limit %d, falling back to "
                           "multi-start SLSQP with %d starts per branch",
                           instance.n, self._exact_limit, restarts)
            rng = np.random.default_rng(self._seed)
            found = search.descent_candidates(instance, seeds, restarts, rng, self._tol)

        best = self._pick(instance, itertools.chain(seeds, found))
        return self._result(instance, best, GENERAL, regime)

    def _pick(self, instance, candidates):
        scored = []
        for t in candidates:
            # Snap round-off so that equal optima compare equal.
            t = np.round(np.asarray(t, dtype=float), 12) + 0.0
            schedule = search.make_schedule(instance, t, self._tol)
            if schedule is not None:
                scored.append((evaluate(instance, schedule, self._tol).area, schedule))
        logger.debug("%d feasible candidates", len(scored))

        best_area = min(area for area, _ in scored)
        ties = [s for area, s in scored if area <= best_area + AREA_TIE_TOL]
        return min(ties, key=lambda s: s.gen_times)

    def oracle_solve(self, instance, grid_step=DEFAULT_GRID_STEP):
        """Return the best schedule with generation instants on a lattice.

        The area is within lattice_error_bound(instance, grid_step) of the
        optimum.

        @param grid_step(float): the lattice spacing in seconds.

        @raise InfeasibleDeadlineError: no lattice point meets the deadline.
        """
        self._validate_grid_step(grid_step)
        regime = self._require_deadline(instance)

        points = int(instance.deadline / grid_step) + 1
        if points > LARGE_LATTICE:
            logger.warning("the lattice has %d points per packet, the search may be slow", points)
        found = search.lattice_search(instance, grid_step, self._tol)
        if found is None:
            raise InfeasibleDeadlineError(instance.deadline, regime.min_deadline)
        gen_times, area = found
        logger.debug("lattice optimum %r at %r", area, gen_times)

        comp_starts = search.induce_comp_starts(instance, gen_times)
        schedule = Schedule(search.settle_last(instance, gen_times, comp_starts), comp_starts)
        return self._result(instance, schedule, ORACLE, regime)

    def solve(self, instance):
        """Solve the instance with the method its regime calls for.

        In the no-wait regime the water-filled schedule is returned when it
        is as good as the general optimum.

        @raise InfeasibleDeadlineError: the deadline is below the minimum deadline.
        """
        regime = self._require_deadline(instance)
        logger.debug("regime %s", regime)

        if regime.kind == feasibility.CLOSED_FORM:
            return self.closed_form_schedule(instance)

        result = self.general_solve(instance)
        if regime.kind == feasibility.NOWAIT:
            nowait = self.nowait_solve(instance)
            if nowait.area <= result.area + AREA_TIE_TOL:
                return nowait
        return result


_default = Solver()


def greedy_schedule(instance):
    return _default.greedy_schedule(instance)


def greedy_solve(instance):
    return _default.greedy_solve(instance)


def water_fill(params):
    return _default.water_fill(params)


def nowait_schedule_from_x(instance, x):
    return _default.nowait_schedule_from_x(instance, x)


def nowait_construct(instance):
    return _default.nowait_construct(instance)


def nowait_solve(instance):
    return _default.nowait_solve(instance)


def closed_form_schedule(instance):
    return _default.closed_form_schedule(instance)


def general_solve(instance):
    return _default.general_solve(instance)


def oracle_solve(instance, grid_step=DEFAULT_GRID_STEP):
    return _default.oracle_solve(instance, grid_step)


def solve(instance):
    return _default.solve(instance)
