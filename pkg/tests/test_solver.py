# encoding: utf-8
from __future__ import print_function, unicode_literals, absolute_import, division

import logging

import numpy as np
import pytest

from aoisched import feasibility, model, search, solver
from aoisched.errors import (DimensionError, InfeasibleDeadlineError, NoWaitInfeasibleError,
                             RegimeError, ScheduleError)
from aoisched.feasibility import ReducedParams
from aoisched.model import Instance
from aoisched.solver import Solver

LEVEL_7_5 = 32.0 / 15.0
X_5 = (1.7, 1.625, 1.625, 1.625, 2.1, 1.625)


def assert_earliest_starts(instance, schedule, tol=1e-6):
    """c_1 = t_1 + T_1, c_N = t_N + T_N and c_k = max(c_{k-1} + C_{k-1}, t_k + T_k)."""
    t, c = schedule.gen_times, schedule.comp_starts
    tx, comp = instance.tx_times, instance.comp_times
    assert c[0] == pytest.approx(t[0] + tx[0], abs=tol)
    assert c[-1] == pytest.approx(t[-1] + tx[-1], abs=tol)
    for k in range(1, instance.n - 1):
        assert c[k] == pytest.approx(max(c[k - 1] + comp[k - 1], t[k] + tx[k]), abs=tol)


def test_greedy_schedule(demo):
    schedule = solver.greedy_schedule(demo(3))
    assert schedule.gen_times == pytest.approx((0, 0.5, 0.6, 0.9, 1.6), abs=1e-12)
    assert schedule.comp_starts == pytest.approx((0.5, 0.7, 1.1, 1.6, 2.2), abs=1e-12)
    assert schedule.completions(demo(3))[-1] == pytest.approx(3.0, abs=1e-12)

    single = Instance((1,), (1,), 0, 2)
    schedule = solver.greedy_schedule(single)
    assert schedule.gen_times == (0.0,)
    assert schedule.comp_starts == (1.0,)


def test_greedy_below_minimum_deadline(demo):
    with pytest.raises(InfeasibleDeadlineError) as info:
        solver.greedy_schedule(demo(2.9))
    assert info.value.min_deadline == pytest.approx(3.0)
    assert "3.0" in str(info.value)


def test_greedy_solve_settles_last_packet(demo):
    result = solver.greedy_solve(demo(3))
    assert result.method == solver.GREEDY
    assert result.schedule.gen_times[-1] == pytest.approx(1.8, abs=1e-12)
    assert result.schedule.comp_starts == pytest.approx((0.5, 0.7, 1.1, 1.6, 2.2), abs=1e-12)
    unsettled = model.aoi_area(demo(3), solver.greedy_schedule(demo(3)))
    assert result.area == pytest.approx(unsettled, abs=1e-9)


@pytest.mark.parametrize("a, b, x, mu", [
    ((1, 1, 1), 6, (2, 2, 2), 2),
    ((3, 1, 1), 6, (3, 1.5, 1.5), 1.5),
    ((1.7, 1.1, 0.8, 1.6, 2.1, 1.2), 12.8, (LEVEL_7_5,) * 6, LEVEL_7_5),
    ((1.7, 1.1, 0.8, 1.6, 2.1, 1.2), 10.3, X_5, 1.625),
])
def test_water_fill(a, b, x, mu):
    got_x, got_mu = solver.water_fill(ReducedParams(a, b))
    assert got_x == pytest.approx(x, abs=1e-12)
    assert got_mu == pytest.approx(mu, abs=1e-12)
    assert sum(got_x) == pytest.approx(b, rel=1e-12)


def test_water_fill_infeasible():
    with pytest.raises(NoWaitInfeasibleError) as info:
        solver.water_fill(ReducedParams((2, 2), 3.5))
    assert info.value.threshold == 4.0


def test_water_fill_kkt(rng):
    for _ in range(50):
        m = int(rng.integers(2, 8))
        a = rng.uniform(0.1, 3.0, size=m)
        b = float(a.sum() + rng.uniform(0.0, 5.0))
        x, mu = solver.water_fill(ReducedParams(tuple(a), b))
        x = np.asarray(x)

        assert np.all(x >= a - 1e-12)
        assert x.sum() == pytest.approx(b, rel=1e-12)
        for x_k, a_k in zip(x, a):
            assert x_k == pytest.approx(mu, abs=1e-12) or (x_k == a_k and a_k >= mu - 1e-12)

        # any other feasible point is no better
        best = np.sum(x ** 2)
        for _ in range(1000):
            z = a + (b - a.sum()) * rng.dirichlet(np.ones(m))
            y = x + rng.uniform(0.0, 1.0) * (z - x)
            assert best <= np.sum(y ** 2) + 1e-9


def test_nowait_schedule_from_x(demo):
    instance = demo(7.5)
    schedule = solver.nowait_schedule_from_x(instance, (LEVEL_7_5,) * 6)
    assert schedule.gen_times == pytest.approx((0.4333333333, 2.0666666667, 3.6, 4.4333333333,
                                                5.3666666667), abs=1e-9)
    assert schedule.is_nowait(instance)
    assert schedule.gen_times[-1] == pytest.approx(7.5 - LEVEL_7_5, abs=1e-12)
    assert feasibility.reduced_coordinates(instance, schedule) == pytest.approx((LEVEL_7_5,) * 6)

    single = Instance((1,), (1,), 0, 2)
    schedule = solver.nowait_schedule_from_x(single, (2, 2))
    assert schedule.gen_times == (0.0,)
    assert schedule.comp_starts == (1.0,)


def test_nowait_schedule_from_bad_x(demo):
    with pytest.raises(DimensionError):
        solver.nowait_schedule_from_x(demo(5), (1, 2, 3))
    with pytest.raises(ScheduleError):
        solver.nowait_schedule_from_x(demo(5), (1.0, 1.0, 1.0, 1.0, 1.0, 5.3))

    # Every bound holds, but the total is 15.67 instead of 12.8.
    with pytest.raises(ScheduleError) as info:
        solver.nowait_schedule_from_x(demo(7.5), (LEVEL_7_5,) * 5 + (5.0,))
    assert "reduced total" in str(info.value)

    # A total off by less than the tolerance is accepted.
    x = (LEVEL_7_5,) * 5 + (LEVEL_7_5 + 1e-12,)
    schedule = solver.nowait_schedule_from_x(demo(7.5), x)
    assert schedule.gen_times[-1] == pytest.approx(7.5 - LEVEL_7_5, abs=1e-9)


def test_nowait_construct(demo):
    instance = demo(5)
    schedule = solver.nowait_construct(instance)
    assert schedule.gen_times == pytest.approx((0, 0.6, 0.8, 1.1, 2.0), abs=1e-12)
    assert schedule.is_nowait(instance)
    assert schedule.completions(instance)[-1] == pytest.approx(3.2, abs=1e-12)

    with pytest.raises(NoWaitInfeasibleError):
        solver.nowait_construct(demo(3))


def test_nowait_solve(demo):
    result = solver.nowait_solve(demo(5))
    assert result.method == solver.WATER_FILL
    assert result.water_level == pytest.approx(1.625)
    assert result.schedule.gen_times == pytest.approx((0, 1.125, 2.15, 2.475, 3.375), abs=1e-9)
    assert feasibility.reduced_coordinates(demo(5), result.schedule) == pytest.approx(X_5)

    with pytest.raises(NoWaitInfeasibleError):
        solver.nowait_solve(demo(3))


def test_closed_form_schedule(demo):
    instance = demo(7.5)
    result = solver.closed_form_schedule(instance)
    assert result.method == solver.CLOSED_FORM
    assert result.water_level == pytest.approx(LEVEL_7_5)
    assert result.schedule.gen_times[0] == pytest.approx(0.4333333333, abs=1e-9)
    assert result.schedule.comp_starts[0] == pytest.approx(0.9333333333, abs=1e-9)
    assert result.metrics.peak_values() == pytest.approx((LEVEL_7_5,) * 6, abs=1e-9)
    assert result.area == pytest.approx(11.0383333333, abs=1e-6)

    at_threshold = solver.closed_form_schedule(demo(7.3))
    assert at_threshold.metrics.peak_values() == pytest.approx((2.1,) * 6, abs=1e-9)


def test_closed_form_below_threshold(demo):
    with pytest.raises(RegimeError) as info:
        solver.closed_form_schedule(demo(5))
    assert info.value.threshold == pytest.approx(7.3)
    assert "7.3" in str(info.value)


def test_closed_form_matches_water_fill(demo, random_instances):
    instances = [demo(7.5), demo(7.3)]
    for instance in random_instances(20):
        threshold = feasibility.closedform_threshold(instance)
        instances.append(instance.with_deadline(threshold + abs(instance.deadline)))

    for instance in instances:
        x, mu = solver.water_fill(feasibility.reduced_params(instance))
        assert x == pytest.approx((mu,) * (instance.n + 1), abs=1e-9)
        from_x = solver.nowait_schedule_from_x(instance, x)
        closed = solver.closed_form_schedule(instance).schedule
        assert from_x.gen_times == pytest.approx(closed.gen_times, abs=1e-9)
        assert from_x.comp_starts == pytest.approx(closed.comp_starts, abs=1e-9)


def test_general_solve_nowait_regime(demo):
    instance = demo(5)
    result = solver.general_solve(instance)
    assert result.method == solver.GENERAL
    assert result.schedule.is_nowait(instance, tol=1e-6)
    assert result.area == pytest.approx(solver.nowait_solve(instance).area, abs=1e-6)


def test_general_solve_closed_form_regime(demo):
    instance = demo(7.5)
    assert solver.general_solve(instance).area == pytest.approx(
        solver.closed_form_schedule(instance).area, abs=1e-6)


def test_general_solve_tight_regime(demo):
    instance = demo(3)
    result = solver.general_solve(instance)
    assert result.schedule.gen_times == pytest.approx((0, 0.5, 0.6, 0.9, 1.8), abs=1e-9)
    assert result.schedule.completions(instance)[-1] == pytest.approx(3.0, abs=1e-9)
    assert result.metrics.peak_values() == pytest.approx((1.7, 1.1, 0.9, 1.6, 2.1, 1.2), abs=1e-9)

    # the fifth packet may be generated anywhere in [1.6, 1.8]
    for t_5 in np.linspace(1.6, 1.8, 21):
        t = result.schedule.gen_times[:-1] + (t_5,)
        moved = model.Schedule(t, search.induce_comp_starts(instance, t))
        assert abs(model.aoi_area(instance, moved) - result.area) < 1e-6


def test_general_solve_single_packet(single):
    result = solver.general_solve(single)
    assert result.schedule.gen_times == pytest.approx((0.0,), abs=1e-12)
    assert result.area == pytest.approx(6.5)


def test_general_solve_infeasible(demo):
    with pytest.raises(InfeasibleDeadlineError):
        solver.general_solve(demo(2.9))


def test_dominance_and_structure(demo, random_instances):
    for instance in [demo(3), demo(5), demo(7.5)] + random_instances(40):
        result = solver.general_solve(instance)
        assert model.validate_schedule(instance, result.schedule) == []
        assert_earliest_starts(instance, result.schedule)

        greedy = model.aoi_area(instance, solver.greedy_schedule(instance))
        assert result.area <= greedy + 1e-9
        if result.regime.kind in (feasibility.NOWAIT, feasibility.CLOSED_FORM):
            assert result.area <= solver.nowait_solve(instance).area + 1e-9


def test_solve_structure(demo, random_instances):
    for instance in [demo(3), demo(5), demo(7.5)] + random_instances(20):
        result = solver.solve(instance)
        assert_earliest_starts(instance, result.schedule)
        assert result.metrics == model.evaluate(instance, result.schedule)


def test_nowait_above_closedform_threshold(random_instances, rng):
    for instance in random_instances(20):
        threshold = feasibility.closedform_threshold(instance)
        loose = instance.with_deadline(threshold * rng.uniform(1.0, 1.5))
        result = solver.solve(loose)
        assert result.schedule.is_nowait(loose, tol=1e-9)


def test_solve_dispatch(demo):
    tight = solver.solve(demo(3))
    assert tight.method == solver.GENERAL
    assert tight.regime.kind == feasibility.TIGHT
    assert tight.schedule.completions(demo(3))[-1] == pytest.approx(3.0, abs=1e-9)

    middle = solver.solve(demo(5))
    assert middle.method == solver.WATER_FILL
    assert middle.schedule.is_nowait(demo(5))

    loose = solver.solve(demo(7.5))
    assert loose.method == solver.CLOSED_FORM
    assert loose.metrics.peak_values() == pytest.approx((LEVEL_7_5,) * 6, abs=1e-9)
    assert loose.schedule.gen_times == pytest.approx(
        (0.4333333333, 2.0666666667, 3.6, 4.4333333333, 5.3666666667), abs=1e-9)
    assert loose.area == pytest.approx(11.0383333333, abs=1e-6)

    with pytest.raises(InfeasibleDeadlineError):
        solver.solve(demo(2.9))


def test_peaks_flatten_as_the_deadline_grows(demo):
    variances = [solver.solve(demo(t)).metrics.peak_variance() for t in (3, 5, 7.5)]
    assert variances[0] >= variances[1] >= variances[2]
    assert variances[0] == pytest.approx(0.19867, abs=1e-4)
    assert variances[2] == pytest.approx(0.0, abs=1e-12)


def test_solver_options():
    with pytest.raises(ValueError):
        Solver(tol=-1)
    with pytest.raises(ValueError):
        Solver(exact_limit=0)
    with pytest.raises(ValueError):
        Solver(restarts=0)
    with pytest.raises(ValueError):
        Solver().oracle_solve(model.demo_instance(), grid_step=0)
    assert Solver(tol=1e-6).tol == 1e-6


def test_fallback_search(demo, random_instances, caplog):
    fallback = Solver(exact_limit=2, restarts=4, seed=7)
    with caplog.at_level(logging.WARNING, logger="aoisched.solver"):
        tight = fallback.general_solve(demo(3))
    assert any("exact limit" in r.getMessage() for r in caplog.records)

    exact = solver.general_solve(demo(3))
    assert tight.area == pytest.approx(exact.area, abs=1e-6)
    assert fallback.general_solve(demo(5)).area == pytest.approx(
        solver.general_solve(demo(5)).area, abs=1e-6)

    for instance in random_instances(5, sizes=(3, 4)):
        result = fallback.general_solve(instance)
        assert model.validate_schedule(instance, result.schedule) == []
        assert result.area <= model.aoi_area(instance, solver.greedy_schedule(instance)) + 1e-9
