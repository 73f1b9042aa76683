# encoding: utf-8
"""Search machinery behind the general solver and the lattice oracle.

For fixed generation instants the best computing starts are the earliest
ones, c_1 = t_1 + T_1 and c_k = max(c_{k-1} + C_{k-1}, t_k + T_k), because
the area grows with every c_k. Writing d_k = c_k + C_k and d_{N+1} = T, the
area is

    initial_age * d_1 + T ** 2 / 2 - sum_k t_k * (d_{k+1} - d_k)

Fixing which branch of every max() is taken (the server is busy when the
packet arrives, or idle) makes d affine in t, so each branch is a
quadratic program over a polytope. The programs are not convex in
general; for small n their global minimum is found exactly by visiting
the stationary point of every face.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import itertools
import logging
import math

import numpy as np
from scipy.optimize import linprog, minimize

from aoisched.model import Schedule, validate_schedule

logger = logging.getLogger(__name__)

DOMINANCE_TOL = 1e-12


def induce_comp_starts(instance, gen_times):
    """Return the earliest computing starts for the given generation instants."""
    starts = []
    free = -math.inf
    for t_k, tx_k, comp_k in zip(gen_times, instance.tx_times, instance.comp_times):
        c_k = max(free, t_k + tx_k)
        starts.append(c_k)
        free = c_k + comp_k
    return tuple(starts)


def settle_last(instance, gen_times, comp_starts):
    """Delay the last generation until the server is ready for it.

    The earliest computing starts are unchanged and the area cannot grow,
    since its derivative in t_N is c_N + C_N - T <= 0.
    """
    t = list(gen_times)
    t[-1] = max(t[-1], comp_starts[-1] - instance.tx_times[-1])
    return tuple(t)


def make_schedule(instance, gen_times, tol):
    """Build the schedule induced by the generation instants.

    @return(Schedule): the settled schedule, or None if it is infeasible.
    """
    gen_times = [float(v) for v in gen_times]
    comp_starts = induce_comp_starts(instance, gen_times)
    schedule = Schedule(settle_last(instance, gen_times, comp_starts), comp_starts)
    if validate_schedule(instance, schedule, tol):
        return None
    return schedule


def branch_patterns(n):
    """Yield the busy flags of every branch.

    The first packet always finds the server idle, and an optimal schedule
    never keeps the last packet waiting, so only packets 2..N-1 vary.
    """
    if n <= 2:
        yield (False,) * n
        return
    for middle in itertools.product((False, True), repeat=n - 2):
        yield (False,) + middle + (False,)


class BranchProgram(object):
    """The area restricted to one branch, as a quadratic program in t.

    Minimize 0.5 * t'Ht + q't + r subject to A t >= b.
    """

    def __init__(self, instance, busy):
        n = instance.n
        tx = np.asarray(instance.tx_times)
        comp = np.asarray(instance.comp_times)
        deadline = instance.deadline

        # d = D t + e
        D = np.zeros((n, n))
        e = np.zeros(n)
        for k in range(n):
            if busy[k]:
                D[k] = D[k - 1]
                e[k] = e[k - 1] + comp[k]
            else:
                D[k, k] = 1.0
                e[k] = tx[k] + comp[k]

        # d_{k+1} - d_k = G t + g
        G = np.zeros((n, n))
        g = np.zeros(n)
        G[:-1] = D[1:] - D[:-1]
        g[:-1] = e[1:] - e[:-1]
        G[-1] = -D[-1]
        g[-1] = deadline - e[-1]

        self.busy = tuple(busy)
        self.size = n
        self.hessian = -(G + G.T)
        self.linear = instance.initial_age * D[0] - g
        self.constant = instance.initial_age * e[0] + 0.5 * deadline ** 2

        rows, rhs = [], []
        eye = np.eye(n)
        rows.append(eye[0])
        rhs.append(0.0)
        for k in range(1, n):
            rows.append(eye[k] - eye[k - 1])
            rhs.append(tx[k - 1])
        for k in range(1, n):
            if busy[k]:
                rows.append(D[k - 1] - eye[k])
                rhs.append(tx[k] - e[k - 1])
            else:
                rows.append(eye[k] - D[k - 1])
                rhs.append(e[k - 1] - tx[k])
        rows.append(-D[-1])
        rhs.append(e[-1] - deadline)
        self.A = np.array(rows)
        self.b = np.array(rhs)

    def objective(self, t):
        return float(0.5 * t.dot(self.hessian).dot(t) + self.linear.dot(t) + self.constant)

    def gradient(self, t):
        return self.hessian.dot(t) + self.linear

    def contains(self, t, tol):
        return bool(np.all(self.A.dot(t) >= self.b - tol))

    def stationary_points(self, tol):
        """Yield the feasible stationary point of every face of the polytope.

        A face is given by a set of at most n active constraints. The global
        minimum lies in the relative interior of some face and is
        stationary there, so it is among the points yielded. Faces whose
        KKT system is singular are skipped: their minimum, if any, is also
        reached on a smaller face.
        """
        n = self.size
        for m in range(n + 1):
            for active in itertools.combinations(range(len(self.b)), m):
                rows = self.A[list(active)]
                kkt = np.zeros((n + m, n + m))
                kkt[:n, :n] = self.hessian
                kkt[:n, n:] = rows.T
                kkt[n:, :n] = rows
                rhs = np.concatenate((-self.linear, self.b[list(active)]))
                try:
                    solution = np.linalg.solve(kkt, rhs)
                except np.linalg.LinAlgError:
                    continue
                t = solution[:n]
                if np.all(np.isfinite(t)) and self.contains(t, tol):
                    yield t

    def sample_vertices(self, rng, count):
        """Return up to count vertices of the polytope, or [] if it is empty."""
        points = []
        bounds = [(None, None)] * self.size
        for _ in range(count):
            cost = rng.standard_normal(self.size)
            res = linprog(cost, A_ub=-self.A, b_ub=-self.b, bounds=bounds, method="highs")
            if res.status == 2:
                return []
            if res.status == 0:
                points.append(res.x)
        return points

    def local_minima(self, starts, tol):
        """Yield the feasible local minima reached by SLSQP from every start."""
        constraints = [{
            "type": "ineq",
            "fun": lambda t: self.A.dot(t) - self.b,
            "jac": lambda t: self.A,
        }]
        for x0 in starts:
            res = minimize(self.objective, np.asarray(x0, dtype=float), jac=self.gradient,
                           method="SLSQP", constraints=constraints,
                           options={"ftol": 1e-14, "maxiter": 500})
            if np.all(np.isfinite(res.x)) and self.contains(res.x, tol):
                yield res.x


def exact_candidates(instance, tol):
    """Yield the generation instants of every face stationary point of every branch."""
    for busy in branch_patterns(instance.n):
        program = BranchProgram(instance, busy)
        count = 0
        for t in program.stationary_points(tol):
            count += 1
            yield t
        logger.debug("branch %s: %d feasible stationary points", busy, count)


def descent_candidates(instance, seeds, restarts, rng, tol):
    """Yield local minima of every branch from multiple starts.

    @param seeds(list): generation instants tried in every branch.
    @param restarts(int): the number of extra starts per branch, drawn from
                          vertices of the branch and random points between them.
    """
    for busy in branch_patterns(instance.n):
        program = BranchProgram(instance, busy)
        vertices = program.sample_vertices(rng, max(1, restarts // 2))
        if not vertices:
            logger.debug("branch %s is empty", busy)
            continue

        starts = list(seeds) + vertices
        stack = np.array(vertices)
        for _ in range(max(0, restarts - len(vertices))):
            weights = rng.dirichlet(np.ones(len(vertices)))
            starts.append(weights.dot(stack))

        for t in program.local_minima(starts, tol):
            yield t


def lattice_search(instance, step, tol):
    """Find the best generation instants on the lattice {0, step, 2 step, ...}.

    Lattice points are visited packet by packet. A partial schedule is
    summed up by the grid index of its last generation, its last completion
    and the area accumulated so far; among partial schedules with the same
    last generation, one with an earlier completion and no larger area
    dominates the others, because every later area term grows with the
    completion times. Only non-dominated partial schedules are expanded.
    Among the surviving schedules, ties in area go to the lexicographically
    smallest instants.

    @return(tuple): (gen_times, area), or None if no lattice point is feasible.
    """
    n = instance.n
    tx, comp = instance.tx_times, instance.comp_times
    deadline, age0 = instance.deadline, instance.initial_age

    # The latest generation of packet k that can meet the deadline on an idle server.
    latest = [deadline - max(math.fsum(tx[k:j + 1] + comp[j:]) for j in range(k, n))
              for k in range(n)]
    hi = [int(math.floor(v / step + 1e-7)) for v in latest]
    gap = [int(math.ceil(v / step - 1e-7)) for v in tx]
    tail = [math.fsum(comp[k + 1:]) for k in range(n)]

    if hi[0] < 0:
        return None

    idx = np.arange(hi[0] + 1)
    t = idx * step
    d = t + tx[0] + comp[0]
    cost = 0.5 * ((d + age0) ** 2 - (d - t) ** 2)
    keep = d + tail[0] <= deadline + tol
    idx, d, cost = idx[keep], d[keep], cost[keep]
    rank = np.arange(idx.size)
    levels = [(idx, np.full(idx.size, -1))]

    for k in range(1, n):
        if idx.size == 0:
            return None
        new_idx, new_d, new_cost, new_parent, parent_rank = [], [], [], [], []
        t_prev = idx * step

        for j in range(int(idx[0]) + gap[k - 1], hi[k] + 1):
            count = np.searchsorted(idx, j - gap[k - 1], side="right")
            t_j = j * step
            d_j = np.maximum(d[:count], t_j + tx[k]) + comp[k]
            cost_j = cost[:count] + 0.5 * ((d_j - t_prev[:count]) ** 2 - (d_j - t_j) ** 2)
            ok = np.nonzero(d_j + tail[k] <= deadline + tol)[0]
            if ok.size == 0:
                continue

            order = ok[np.lexsort((rank[ok], cost_j[ok], d_j[ok]))]
            sorted_cost = cost_j[order]
            best_before = np.concatenate(([math.inf], np.minimum.accumulate(sorted_cost)[:-1]))
            front = order[sorted_cost < best_before - DOMINANCE_TOL]

            new_idx.append(np.full(front.size, j))
            new_d.append(d_j[front])
            new_cost.append(cost_j[front])
            new_parent.append(front)
            parent_rank.append(rank[front])

        if not new_idx:
            return None
        idx = np.concatenate(new_idx)
        d = np.concatenate(new_d)
        cost = np.concatenate(new_cost)
        parent = np.concatenate(new_parent)
        parent_rank = np.concatenate(parent_rank)

        rank = np.empty(idx.size, dtype=int)
        rank[np.lexsort((idx, parent_rank))] = np.arange(idx.size)
        levels.append((idx, parent))
        logger.debug("lattice level %d: %d non-dominated states", k + 1, idx.size)

    if idx.size == 0:
        return None

    area = cost + 0.5 * (deadline - idx * step) ** 2 - 0.5 * age0 ** 2
    best = area.min()
    ties = np.nonzero(area <= best + 1e-9)[0]
    chosen = int(ties[np.argmin(rank[ties])])

    path = []
    pos = chosen
    for level_idx, level_parent in reversed(levels):
        path.append(int(level_idx[pos]))
        pos = int(level_parent[pos])
    path.reverse()
    return tuple(i * step for i in path), float(area[chosen])
