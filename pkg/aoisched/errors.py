# encoding: utf-8
from __future__ import print_function, unicode_literals, absolute_import, division


class AoiError(Exception):
    """The base class of all the errors raised by aoisched."""


class InstanceError(AoiError, ValueError):
    """The problem instance is invalid."""


class DimensionError(AoiError, ValueError):
    """A schedule or a vector does not match the number of packets."""


class ScheduleError(AoiError, ValueError):
    """The schedule breaks one or more constraints.

    @attr violations(list): the Violation records, see model.validate_schedule.
    """

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        if message is None:
            message = "the schedule is infeasible: {}".format(
                "; ".join(str(v) for v in self.violations))
        super(ScheduleError, self).__init__(message)


class InfeasibleDeadlineError(AoiError):
    """No schedule can finish all the packets before the deadline.

    @attr deadline(float): the requested deadline.
    @attr min_deadline(float): the smallest feasible deadline.
    """

    def __init__(self, deadline, min_deadline):
        self.deadline = deadline
        self.min_deadline = min_deadline
        super(InfeasibleDeadlineError, self).__init__(
            "the deadline {!r} is below the minimum deadline {!r}".format(
                deadline, min_deadline))


class NoWaitInfeasibleError(AoiError):
    """The no-wait computing policy cannot meet the deadline.

    @attr threshold(float): the smallest value the checked quantity must reach.
    """

    def __init__(self, value, threshold, what="deadline"):
        self.value = value
        self.threshold = threshold
        super(NoWaitInfeasibleError, self).__init__(
            "the no-wait policy needs the {} to be at least {!r}, got {!r}".format(
                what, threshold, value))


class RegimeError(AoiError):
    """The requested method does not apply to the instance.

    @attr method(string): the requested method.
    @attr threshold(float): the deadline from which the method applies.
    """

    def __init__(self, method, deadline, threshold, hint="general"):
        self.method = method
        self.deadline = deadline
        self.threshold = threshold
        super(RegimeError, self).__init__(
            "the {} method needs a deadline of at least {!r}, got {!r}; "
            "use the {} method instead".format(method, threshold, deadline, hint))


class FileFormatError(AoiError, ValueError):
    """An instance or schedule file cannot be parsed.

    @attr path(string): the file path.
    @attr detail(string): where and why the parsing failed.
    """

    def __init__(self, path, detail):
        self.path = path
        self.detail = detail
        super(FileFormatError, self).__init__("{}: {}".format(path, detail))
