# vim: expandtab:ts=4:sw=4
"""Gradient flows of the Airy phase ``f(x) = i lambda (x^3/3 - x)``.

The descent flow of ``h = Re f`` is integrated with a fixed-step RK4 on the
flat metric, with the speed capped at one::

    dx/dt = -conj(f'(x)) / max(1, |f'(x)|)

The cap is a positive rescaling, so ``Im f`` stays constant along the flow.
Thimbles leave a critical point and either escape to one of three asymptotic
sectors or, on a Stokes wall, run into the other critical point.
"""
import cmath
import logging
import math
from collections import namedtuple
from multiprocessing import Pool

import numpy as np
from scipy.optimize import brentq

from .errors import StepUnstable

log = logging.getLogger(__name__)

FlowSettings = namedtuple("FlowSettings", [
    "dt", "escape_radius", "max_time", "launch_eps", "connect_tol", "wall_tol"])
FlowSettings.__new__.__defaults__ = (1e-3, 4.0, 20.0, 1e-4, 1e-3, 1e-3)

CRITICAL_TOL = 1e-6
ARRIVAL_TOL = 1e-8
IM_TOL = 1e-6
ENERGY_SLACK = 1e-12


class AiryParams(object):
    """``lambda = a + b i`` with ``b != 0``."""

    def __init__(self, a, b):
        if b == 0:
            raise ValueError("b must be nonzero")
        self.a = float(a)
        self.b = float(b)
        self.lam = complex(self.a, self.b)

    def __repr__(self):
        return f"AiryParams(a={self.a}, b={self.b})"

    def f(self, x):
        return 1j * self.lam * (x ** 3 / 3.0 - x)

    def df(self, x):
        return 1j * self.lam * (x * x - 1.0)

    def d2f(self, x):
        return 2j * self.lam * x

    def h(self, x):
        return self.f(x).real

    def phase(self):
        """``arg(i lambda)``, continuous in ``a`` for fixed sign of ``b``."""
        phi = math.atan2(self.a, -self.b)
        if self.b > 0 and phi < 0:
            phi += 2.0 * math.pi
        return phi

    def velocity(self, x):
        g = self.df(x)
        return -g.conjugate() / max(1.0, abs(g))


class FlowTrajectory(object):
    """Samples of one descent flow.

    Attributes
    ----------
    points : ndarray
        Complex positions, launch point first.
    dt : float
    im_drift : float
        ``max |Im f(x_t) - Im f(start)|``.
    reason : str
        ``"escape"``, ``"critical"`` or ``"max_time"``.

    """

    def __init__(self, points, dt, im_drift, reason):
        self.points = np.asarray(points, dtype=complex)
        self.dt = dt
        self.im_drift = im_drift
        self.reason = reason

    @property
    def end(self):
        return complex(self.points[-1])

    def min_distance(self, x):
        return float(np.min(np.abs(self.points - x)))


def critical_points(params):
    """The zeros of f', ``(P+, P-) = (1, -1)``."""
    return 1.0 + 0j, -1.0 + 0j


def hessian_descent_directions(params, point):
    """Both unit directions ``d`` with ``f''(point) d^2`` real and negative."""
    g = params.d2f(point)
    w = -g.conjugate() / abs(g)
    # keep the branch continuous in a: never cut along the negative reals
    d = cmath.sqrt(w) if w.real >= 0 else 1j * cmath.sqrt(-w)
    return d, -d


def imaginary_gap(params):
    """``Im f(P+) - Im f(P-)``; equals ``-4a/3``."""
    plus, minus = critical_points(params)
    return params.f(plus).imag - params.f(minus).imag


def _rk4(params, x, dt):
    k1 = params.velocity(x)
    k2 = params.velocity(x + 0.5 * dt * k1)
    k3 = params.velocity(x + 0.5 * dt * k2)
    k4 = params.velocity(x + dt * k3)
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def descend(params, start, direction, max_time=None, settings=FlowSettings()):
    """Integrate the descent flow from a critical point.

    Parameters
    ----------
    params : AiryParams
    start : complex
        Within 1e-6 of a critical point.
    direction : complex
        A descent direction at that point; the first sample is
        ``start + launch_eps * direction``.
    max_time : Optional[float]
        Defaults to ``settings.max_time``.

    Raises
    ------
    ValueError
        If ``start`` or ``direction`` violates the launch conditions.
    StepUnstable
        If ``h`` increases between two steps.

    """
    max_time = settings.max_time if max_time is None else max_time
    points = critical_points(params)
    source = min(points, key=lambda p: abs(p - start))
    if abs(source - start) > CRITICAL_TOL:
        raise ValueError(f"start {start} is not within {CRITICAL_TOL} of a critical point")
    direction = complex(direction) / abs(direction)
    if (params.d2f(source) * direction * direction).real >= 0:
        raise ValueError(f"{direction} is not a descent direction at {source}")
    others = [p for p in points if p != source]

    im0 = params.f(start).imag
    x = start + settings.launch_eps * direction
    h = params.h(x)
    samples = [x]
    drift = abs(params.f(x).imag - im0)
    reason = "max_time"
    for step in range(int(round(max_time / settings.dt))):
        x = _rk4(params, x, settings.dt)
        h_next = params.h(x)
        if h_next > h + ENERGY_SLACK:
            raise StepUnstable(f"h rose from {h} to {h_next} at step {step}")
        h = h_next
        samples.append(x)
        drift = max(drift, abs(params.f(x).imag - im0))
        if abs(x) > settings.escape_radius:
            reason = "escape"
            break
        if any(abs(x - p) < ARRIVAL_TOL for p in others):
            reason = "critical"
            break
    return FlowTrajectory(samples, settings.dt, drift, reason)


def sector(params, x):
    """Index 0, 1 or 2 of the asymptotic sector nearest to ``arg x``.

    Sector ``k`` is centered on ``(pi - arg(i lambda) + 2 pi k) / 3``.
    """
    turns = (3.0 * cmath.phase(x) - math.pi + params.phase()) / (2.0 * math.pi)
    return int(round(turns)) % 3


def _branch_label(params, trajectory):
    if trajectory.reason != "escape":
        return None
    return sector(params, trajectory.end)


def _connects(params, trajectory, target, settings):
    gap = abs(params.f(target).imag - params.f(trajectory.points[0]).imag)
    near = trajectory.min_distance(target) < settings.connect_tol
    return bool(near and gap < IM_TOL)


ScanRow = namedtuple("ScanRow", [
    "a", "connected", "plus_sectors", "minus_sectors", "max_drift", "flipped"])


def _scan_one(args):
    a, b, settings = args
    params = AiryParams(a, b)
    plus, minus = critical_points(params)
    connected = False
    sectors = {}
    drift = 0.0
    for source, target in ((plus, minus), (minus, plus)):
        labels = []
        for direction in hessian_descent_directions(params, source):
            trajectory = descend(params, source, direction, settings=settings)
            labels.append(_branch_label(params, trajectory))
            drift = max(drift, trajectory.im_drift)
            connected = connected or _connects(params, trajectory, target, settings)
        sectors[source] = tuple(labels)
    return a, connected, sectors[plus], sectors[minus], drift


def stokes_scan(a_values, b, settings=FlowSettings(), processes=1):
    """Trace both thimble branches of P+ and P- for each ``a``.

    Sector labels are ``None`` for a branch that ends on a critical point.
    ``flipped`` marks rows whose P+ sectors differ from the previous row.
    """
    jobs = [(float(a), float(b), settings) for a in a_values]
    if processes > 1:
        with Pool(processes) as pool:
            results = pool.map(_scan_one, jobs)
    else:
        results = [_scan_one(job) for job in jobs]
    rows = []
    previous = None
    for a, connected, plus, minus, drift in results:
        flipped = previous is not None and plus != previous
        rows.append(ScanRow(a, connected, plus, minus, drift, flipped))
        previous = plus
        log.debug("a=%g connected=%s J+=%s J-=%s", a, connected, plus, minus)
    return rows


def wall_source(b):
    """Critical point with the larger h at ``a = 0``; P+ for ``b > 0``."""
    plus, minus = critical_points(AiryParams(0.0, b))
    return (plus, minus) if b > 0 else (minus, plus)


def _toward(params, source, target):
    """The descent direction at ``source`` that heads for ``target``."""
    return max(hessian_descent_directions(params, source),
               key=lambda d: (d.conjugate() * (target - source)).real)


def _wall_probe(a, b, settings):
    params = AiryParams(a, b)
    source, target = wall_source(b)
    trajectory = descend(params, source, _toward(params, source, target), settings=settings)
    return _connects(params, trajectory, target, settings), _branch_label(params, trajectory)


def locate_wall(b, lo, hi, settings=FlowSettings()):
    """Bisect on the sector of the thimble branch that heads for the other point.

    ``lo`` and ``hi`` must give different sectors. Returns as soon as a probe
    connects the two critical points, or once the bracket is below
    ``settings.wall_tol``.
    """
    connected, label_lo = _wall_probe(lo, b, settings)
    if connected:
        return lo
    connected, label_hi = _wall_probe(hi, b, settings)
    if connected:
        return hi
    if label_lo == label_hi:
        raise ValueError(f"no sector change between a={lo} and a={hi}")
    while hi - lo > settings.wall_tol:
        mid = 0.5 * (lo + hi)
        connected, label = _wall_probe(mid, b, settings)
        if connected:
            return mid
        if label == label_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def analytic_wall(b, lo=-1.0, hi=1.0):
    """Root of ``imaginary_gap`` in ``a``, found with ``brentq``."""
    return brentq(lambda a: imaginary_gap(AiryParams(a, b)), lo, hi)
