import logging

import matplotlib
matplotlib.use('Agg')
from matplotlib import pyplot as plt
import numpy as np
import pandas as pd
import param

from opMatrix.arrangement import CircleBoundary, PointBoundary, ON, OFF
from opMatrix.regions import GridSides, describe
from opMatrix.utils.math import Fraction, ratio_str

logger = logging.getLogger(__name__)

plt.rcParams['svg.hashsalt'] = 'region-grid'


def grid_axis(low, high, resolution):
    """``resolution`` equally spaced exact rationals from low to high inclusive."""
    step = (Fraction(high) - Fraction(low)) / (resolution - 1)
    return [Fraction(low) + step * k for k in range(resolution)]


def _ranks(first, second):
    """Positions of both value lists in their merged exact order."""
    order = {value: k for k, value in enumerate(sorted(set(first) | set(second)))}
    return np.array([order[v] for v in first]), np.array([order[v] for v in second])


def circle_sides(boundary, xs, ys):
    """Exact side of every grid point, rows indexed by ys and columns by xs.

    sign((x-cx)^2 + (y-cy)^2 - r^2) = sign(A_x - B_y) with A_x = (x-cx)^2 and
    B_y = r^2 - (y-cy)^2, which compares equal to the sign of the rank difference.
    """
    cx, cy, r = boundary.center.re, boundary.center.im, boundary.radius
    a = [(x - cx) ** 2 for x in xs]
    b = [r * r - (y - cy) ** 2 for y in ys]
    rank_a, rank_b = _ranks(a, b)
    return np.sign(rank_a[np.newaxis, :] - rank_b[:, np.newaxis])


def point_sides(boundary, xs, ys):
    on_x = np.array([x == boundary.point.re for x in xs])
    on_y = np.array([y == boundary.point.im for y in ys])
    return np.where(on_y[:, np.newaxis] & on_x[np.newaxis, :], ON, OFF)


def grid_sides(region, xs, ys):
    sides = GridSides((len(ys), len(xs)))
    for primitive in region.primitives():
        boundary = primitive.boundary()
        if boundary is None or boundary in sides:
            continue
        if isinstance(boundary, CircleBoundary):
            sides[boundary] = circle_sides(boundary, xs, ys)
        elif isinstance(boundary, PointBoundary):
            sides[boundary] = point_sides(boundary, xs, ys)
    return sides


def sample_grid(region, window, resolution):
    """Boolean membership of ``region`` on the exact grid, rows by imaginary part ascending."""
    xmin, xmax, ymin, ymax = window
    xs, ys = grid_axis(xmin, xmax, resolution), grid_axis(ymin, ymax, resolution)
    mask = np.asarray(region.mask(grid_sides(region, xs, ys)), dtype=bool)
    return xs, ys, mask


class RegionPlotter(param.Parameterized):
    window = param.List(default=[Fraction(-2), Fraction(2), Fraction(-2), Fraction(2)], bounds=(4, 4))
    resolution = param.Integer(default=201, bounds=(2, 2001))
    title = param.String(default='')

    def sample(self, region):
        logger.debug(f"Sampling {self.resolution}x{self.resolution} grid")
        return sample_grid(region, self.window, self.resolution)

    def to_frame(self, region):
        xs, ys, mask = self.sample(region)
        frame = pd.DataFrame(mask.astype(int), index=[ratio_str(y) for y in ys],
                             columns=[ratio_str(x) for x in xs])
        frame.index.name = 'im\\re'
        return frame

    def save_csv(self, region, path):
        self.to_frame(region).to_csv(path)
        return path

    def save_svg(self, region, path):
        xs, ys, mask = self.sample(region)
        xmin, xmax, ymin, ymax = (float(v) for v in self.window)
        fig, ax = plt.subplots(figsize=(6, 6))
        ax.imshow(mask, origin='lower', extent=(xmin, xmax, ymin, ymax),
                  cmap='Greys', vmin=0, vmax=1, interpolation='nearest')
        ax.set_xlabel('Re λ')
        ax.set_ylabel('Im λ')
        ax.set_title(self.title or describe(region), fontsize=9)
        fig.savefig(path, format='svg', metadata={'Date': None})
        plt.close(fig)
        return path
