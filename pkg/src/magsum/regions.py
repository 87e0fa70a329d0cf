"""Image-count surveys of the source plane, maximum-image witnesses, and
critical curves / caustics as point sets."""

from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .catalog import FamilySpec, _params, eliminate, lens_map, jacobian_determinant
from .images import SolveReport, solve_images
from .polynomial import Polynomial
from .roots import RootFindingError

__all__ = [
    "GridSpec",
    "Cell",
    "RegionMap",
    "MaxImageWitness",
    "WitnessNotFoundError",
    "map_source_plane",
    "find_max_image_witness",
    "critical_curve",
    "caustic",
    "write_points_csv",
]

WITNESS_BUDGET = 10_000


@dataclass(frozen=True)
class GridSpec:
    s1_range: tuple[float, float]
    s2_range: tuple[float, float]
    resolution: int

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        for lo, hi in (self.s1_range, self.s2_range):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad interval ({lo}, {hi})")

    @property
    def cell_width(self) -> tuple[float, float]:
        (a, b), (c, d) = self.s1_range, self.s2_range
        return (b - a) / self.resolution, (d - c) / self.resolution

    def centers(self, axis: int) -> list[float]:
        lo, hi = (self.s1_range, self.s2_range)[axis]
        w = (hi - lo) / self.resolution
        return [lo + (k + 0.5) * w for k in range(self.resolution)]


@dataclass(frozen=True)
class Cell:
    s1: float
    s2: float
    n_real: int
    sum_real: float
    caustic_flag: bool


@dataclass(frozen=True)
class RegionMap:
    spec: FamilySpec
    params: tuple
    grid: GridSpec
    cells: tuple[Cell, ...]

    def row(self, k: int) -> tuple[Cell, ...]:
        r = self.grid.resolution
        return self.cells[k * r:(k + 1) * r]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s1", "s2", "n_real", "sum_real", "caustic_flag"])
        for c in self.cells:
            w.writerow([repr(c.s1), repr(c.s2), c.n_real, repr(c.sum_real),
                        "true" if c.caustic_flag else "false"])
        return buf.getvalue()


def _survey_row(spec: FamilySpec, c: tuple, s2: float, s1_values: list[float]) -> list[Cell]:
    out = []
    for s1 in s1_values:
        try:
            rep = solve_images(spec, c, (s1, s2))
            out.append(Cell(s1, s2, rep.n_real, rep.sum_real, rep.caustic_flag))
        except (RootFindingError, ArithmeticError, ValueError):
            out.append(Cell(s1, s2, -1, math.nan, True))
    return out


def map_source_plane(spec: FamilySpec, params, grid: GridSpec,
                     workers: int | None = None) -> RegionMap:
    """Solve every cell center of ``grid``; rows run over ``s2``, columns over ``s1``.

    Cells where solving fails are kept with ``n_real = -1`` and flagged.
    With ``workers > 1`` rows are solved in separate processes; the result is
    assembled by row index and is identical to the serial sweep.
    """
    c = tuple(float(v) for v in _params(spec, params).values())
    s1s, s2s = grid.centers(0), grid.centers(1)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_survey_row, [spec] * len(s2s), [c] * len(s2s), s2s,
                               [s1s] * len(s2s)))
    else:
        rows = [_survey_row(spec, c, s2, s1s) for s2 in s2s]
    return RegionMap(spec, c, grid, tuple(cell for row in rows for cell in row))


# -- maximum-image witnesses ------------------------------------------------------


@dataclass(frozen=True)
class MaxImageWitness:
    spec: FamilySpec
    params: tuple
    s: tuple
    n_real: int
    report: SolveReport | None = None

    def to_dict(self) -> dict:
        d = {
            "family": self.spec.name,
            "params": [str(v) for v in self.params],
            "s": [str(v) for v in self.s],
            "n_real": self.n_real,
            "maximum": self.spec.degree,
        }
        if self.report is not None:
            d["sum_real"] = self.report.sum_real
            d["max_abs_mag"] = self.report.max_abs_magnification
        return d


class WitnessNotFoundError(RuntimeError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


def _prescribed_roots_a(n: int) -> list[Fraction]:
    # symmetric about zero: the x^(n-1) coefficient of phi_A vanishes for n >= 3
    return [Fraction(2 * k - (n - 1), 2) for k in range(n)]


def _witness_a(spec: FamilySpec):
    e1, _ = spec.signs
    n = spec.n
    phi = Polynomial.from_roots(_prescribed_roots_a(n), lead=e1 * (n + 1))
    # phi = e1 (n+1) x^n + sum_k k c_k x^(k-1) + 2 s2 x - s1
    c = tuple(phi[k - 1] / k for k in range(3, n))
    return c, (-phi[0], phi[1] / 2)


def _reciprocals_d(n: int, e: int) -> list[int]:
    """Distinct nonzero integers summing to zero, with the sign count that
    makes the constant term of phi_D a positive square."""
    options = []
    for m in range(1, n):
        if (m - n - (0 if e > 0 else 1)) % 2:
            continue
        p = n - m
        total = p * (p + 1) // 2
        last = total - m * (m - 1) // 2
        if last > m - 1:
            options.append((abs(2 * m - n), m, p, last))
    _, m, p, last = min(options)
    return list(range(1, p + 1)) + [-k for k in range(1, m)] + [-last]


def _rational_sqrt(q: Fraction) -> Fraction:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return Fraction(math.sqrt(q))


def _witness_d(spec: FamilySpec):
    """Prescribe the y-roots.  phi_D has no linear term, which holds iff the
    reciprocals of the roots sum to zero."""
    (e,) = spec.signs
    n = spec.n
    roots = [Fraction(1, u) for u in _reciprocals_d(n, e)]
    phi = Polynomial.from_roots(roots, lead=4 * e * (n - 1))
    assert phi[1] == 0 and phi[0] > 0
    # phi = 4e(n-1) y^n + sum_k 4k c_k y^(k+1) - 4 s2 y^2 + s1^2
    c = tuple(phi[k + 1] / (4 * k) for k in range(2, n - 1))
    return c, (_rational_sqrt(phi[0]), -phi[2] / 4)


def _real_root_count(spec: FamilySpec, c, s) -> tuple[int, float]:
    phi, _ = eliminate(spec, c, s)
    r = np.roots([float(a) for a in reversed(phi.coeffs)])
    real = np.abs(r.imag) <= 1e-9 * (1 + np.abs(r))
    return int(real.sum()), float(np.sum(np.abs(r.imag[~real])))


def _search_e(spec: FamilySpec, seed: int, budget: int):
    rng = random.Random(seed)
    k = spec.n_params + 2
    draw = lambda: [Fraction(rng.randint(-1000, 1000), 1000) for _ in range(k)]  # noqa: E731

    def score(v):
        cnt, spread = _real_root_count(spec, v[:-2], v[-2:])
        return cnt, -spread

    best, best_score = None, (-1, 0.0)
    radius = 0.5
    for it in range(budget):
        if best is None or it < budget // 2 and it % 2 == 0:
            cand = draw()
        else:
            # local dilation around the incumbent with a shrinking step
            cand = [v + Fraction(round(rng.uniform(-radius, radius) * 10**6), 10**6)
                    for v in best]
            radius = max(radius * 0.999, 1e-4)
        try:
            sc = score(cand)
        except (ValueError, ArithmeticError):
            continue
        if sc > best_score:
            best, best_score = cand, sc
        if sc[0] == spec.degree:
            rep = solve_images(spec, tuple(cand[:-2]), tuple(cand[-2:]))
            if rep.n_real == spec.degree and not rep.caustic_flag:
                return tuple(cand[:-2]), tuple(cand[-2:])
    raise WitnessNotFoundError(
        f"{spec.name}: no {spec.degree}-image target in {budget} samples "
        f"(best {best_score[0]})", best
    )


def find_max_image_witness(spec: FamilySpec, seed: int = 0,
                           budget: int = WITNESS_BUDGET) -> MaxImageWitness:
    """Exact rational ``(params, s)`` whose target has ``deg(phi)`` real images.

    A_n and D_n witnesses are built by prescribing the roots of ``phi``;
    E6, E7, E8 use a seeded random search with local refinement.
    """
    if spec.kind == "A":
        c, s = _witness_a(spec)
    elif spec.kind == "D":
        c, s = _witness_d(spec)
    else:
        c, s = _search_e(spec, seed, budget)
    rep = solve_images(spec, c, s)
    if rep.n_real != spec.degree:
        raise WitnessNotFoundError(f"{spec.name}: witness has only {rep.n_real} real images")
    return MaxImageWitness(spec, c, s, rep.n_real, rep)


# -- critical curves and caustics ---------------------------------------------------


def _grid_scan(values: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> list[tuple[float, float]]:
    """Zero crossings of a sampled field on grid edges, by linear interpolation.

    ``values[i, j]`` is sampled at ``(xs[j], ys[i])``.  Horizontal edges come
    first in row-major order, then vertical edges, then nodes that are exact
    zeros.
    """
    pts = []
    ny, nx = values.shape
    for i in range(ny):
        for j in range(nx - 1):
            a, b = values[i, j], values[i, j + 1]
            if a * b < 0:
                t = a / (a - b)
                pts.append((float(xs[j] + t * (xs[j + 1] - xs[j])), float(ys[i])))
    for i in range(ny - 1):
        for j in range(nx):
            a, b = values[i, j], values[i + 1, j]
            if a * b < 0:
                t = a / (a - b)
                pts.append((float(xs[j]), float(ys[i] + t * (ys[i + 1] - ys[i]))))
    for i, j in zip(*np.nonzero(values == 0)):
        pts.append((float(xs[j]), float(ys[i])))
    return pts


def _evaluate_grid(poly, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    X, Y = np.meshgrid(xs, ys)
    out = np.zeros_like(X)
    for (i, j), a in poly.terms.items():
        out += float(a) * X ** i * Y ** j
    return out


def critical_curve(spec: FamilySpec, params, window, resolution: int) -> list[tuple[float, float]]:
    """Points of ``det Jac f = 0`` found on a ``resolution x resolution`` grid.

    ``window`` is ``((x_lo, x_hi), (y_lo, y_hi))``.  An empty list means no
    sign change inside the window.
    """
    (x0, x1), (y0, y1) = window
    xs, ys = np.linspace(x0, x1, resolution), np.linspace(y0, y1, resolution)
    vals = _evaluate_grid(jacobian_determinant(spec, params), xs, ys)
    return _grid_scan(vals, xs, ys)


def caustic(spec: FamilySpec, params, window, resolution: int) -> list[tuple[float, float]]:
    """Images of the critical-curve points under the lens map."""
    f1, f2 = lens_map(spec, params)
    g1 = [(i, j, float(a)) for (i, j), a in f1.terms.items()]
    g2 = [(i, j, float(a)) for (i, j), a in f2.terms.items()]
    ev = lambda g, x, y: sum(a * x ** i * y ** j for i, j, a in g)  # noqa: E731
    return [(ev(g1, x, y), ev(g2, x, y))
            for x, y in critical_curve(spec, params, window, resolution)]


def write_points_csv(points: Iterable[tuple[float, float]], header=("x", "y")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for a, b in points:
        w.writerow([repr(float(a)), repr(float(b))])
    return buf.getvalue()
