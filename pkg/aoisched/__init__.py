# encoding: utf-8

import logging

from aoisched.errors import (AoiError, InstanceError, DimensionError, ScheduleError,
                             InfeasibleDeadlineError, NoWaitInfeasibleError, RegimeError,
                             FileFormatError)
from aoisched.model import (Instance, Schedule, AoiMetrics, AoiCurve, demo_instance,
                            validate_schedule, aoi_area, average_aoi, peak_aoi, evaluate,
                            sample_curve)
from aoisched.feasibility import (Regime, ReducedParams, min_deadline, nowait_threshold,
                                  closedform_threshold, reduced_params, classify)
from aoisched.solver import SolveResult, Solver, solve

logging.getLogger(__name__).addHandler(logging.NullHandler())
