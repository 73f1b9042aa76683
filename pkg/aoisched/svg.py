# encoding: utf-8
"""Static SVG figures of an AoI sample path.

The markup is written by hand with fixed number formatting, so the same
input always gives the same bytes.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import io
import math

DEFAULT_WIDTH = 800
DEFAULT_HEIGHT = 400
MARGIN = 40

CURVE_COLOR = "#1f77b4"
TX_COLOR = "#2ca02c"
COMP_COLOR = "#d62728"

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d"
    version="1.1" xmlns="http://www.w3.org/2000/svg">
<title>%(title)s</title>
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""


def _escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


class CurvePlot(object):
    """A time/age plot area with fixed pixel size.

    @param width(int): the width in pixels.
    @param height(int): the height in pixels.
    @param t_max(float): the time at the right end of the x axis.
    @param age_max(float): the age at the top of the y axis.
    """

    def __init__(self, width, height, t_max, age_max):
        for name, value in (("width", width), ("height", height)):
            if int(value) != value or value <= 2 * MARGIN:
                raise ValueError("{} must be an integer > {}, got {!r}".format(name, 2 * MARGIN, value))
        if t_max <= 0 or age_max <= 0:
            raise ValueError("the plot ranges must be positive")

        self._width = int(width)
        self._height = int(height)
        self._t_max = float(t_max)
        self._age_max = float(age_max)
        self.commands = []

    def x(self, time):
        return MARGIN + time / self._t_max * (self._width - 2 * MARGIN)

    def y(self, age):
        return self._height - MARGIN - age / self._age_max * (self._height - 2 * MARGIN)

    def axes(self):
        left, bottom = MARGIN, self._height - MARGIN
        self.commands.append(
            '<polyline class="axes" points="%.2f,%.2f %.2f,%.2f %.2f,%.2f" '
            'style="fill:none;stroke:#000000;stroke-width:1"/>' % (
                left, MARGIN, left, bottom, self._width - MARGIN, bottom))

        for second in range(int(math.floor(self._t_max)) + 1):
            x = self.x(second)
            self.commands.append(
                '<line class="tick" x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
                'style="stroke:#000000;stroke-width:1"/>' % (x, bottom, x, bottom + 5))
            self.commands.append(
                '<text class="tick-label" x="%.2f" y="%.2f" font-size="12" '
                'text-anchor="middle">%d</text>' % (x, bottom + 18, second))

        for age in range(int(math.floor(self._age_max)) + 1):
            y = self.y(age)
            self.commands.append(
                '<line class="tick" x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
                'style="stroke:#000000;stroke-width:1"/>' % (left - 5, y, left, y))
            self.commands.append(
                '<text class="tick-label" x="%.2f" y="%.2f" font-size="12" '
                'text-anchor="end">%d</text>' % (left - 8, y + 4, age))

    def marker(self, time, kind, color):
        self.commands.append(
            '<line class="%s" x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
            'style="stroke:%s;stroke-width:1;stroke-dasharray:4,3"/>' % (
                kind, self.x(time), MARGIN, self.x(time), self._height - MARGIN, color))

    def polyline(self, points, color):
        self.commands.append(
            '<polyline class="curve" points="%s" style="fill:none;stroke:%s;stroke-width:2"/>' % (
                " ".join("%.2f,%.2f" % (self.x(t), self.y(a)) for t, a in points), color))

    def render(self, title):
        width, height, title = self._width, self._height, _escape(title)
        return PREAMBLE % locals() + "".join(c + "\n" for c in self.commands) + POSTAMBLE


def render_curve(instance, schedule, curve, width=DEFAULT_WIDTH, height=DEFAULT_HEIGHT, title=None):
    """Render the sample path with a marker at every t_k and c_k.

    @param curve(AoiCurve): the sample path of the schedule.

    @return(string): the SVG document.
    """
    age_max = max(curve.ages().max() * 1.1, 1.0)
    plot = CurvePlot(width, height, instance.deadline, age_max)
    plot.axes()
    for t_k in schedule.gen_times:
        plot.marker(t_k, "tx-marker", TX_COLOR)
    for c_k in schedule.comp_starts:
        plot.marker(c_k, "comp-marker", COMP_COLOR)
    plot.polyline(curve.breakpoints, CURVE_COLOR)

    if title is None:
        title = "AoI, {} packets, deadline {!r} s".format(instance.n, instance.deadline)
    return plot.render(title)


def write_svg(path, text):
    with io.open(path, "w", encoding="utf-8") as f:
        f.write(text)
