"""Radii of convergence and growth constants of the hierarchy generating functions.

For the class avoiding a size-``m`` subhierarchy (``m=None``: no restriction)
let ``T(x) = sum_{k>=2} H(x^k)/k`` and

    F(x, y) = exp(y + T(x)) - 2y - 1 + x - x^m.

At the dominant singularity ``rho`` both ``F`` and ``F_y`` vanish, which forces
``H(rho) = (1 + rho - rho^m)/2`` and ``exp(H(rho) + T(rho)) = 2``.  Only the
rapidly convergent ``T`` is evaluated from the truncated coefficient table, so
``rho`` is the root of

    (1 + x - x^m)/2 + T(x) = ln 2

and the square-root singularity gives ``H_n ~ C rho^-n n^-3/2`` with
``C = sqrt(rho F_x / (2 pi F_yy))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import mpmath as mp

from .enumeration import UNRESTRICTED, CoeffTable, count_avoiding, count_hierarchies
from .errors import ConsistencyFailure, DegenerateSingularity, DomainError, InsufficientTruncation

DEFAULT_N = 400
DEFAULT_PRECISION = 256
BRACKET = ("0.2", "0.4")
# below every radius in the family (rho_m >= rho_0 = 0.2808...)
SAFE_RADIUS = "0.25"


def _table(m: Optional[int], N: int) -> CoeffTable:
    return count_hierarchies(N) if m is UNRESTRICTED else count_avoiding(N, m)


def _xm(x, m):
    return mp.mpf(0) if m is UNRESTRICTED else x**m


@dataclass(frozen=True)
class TailValue:
    """Truncated sum and an upper bound on the omitted nonnegative remainder."""

    value: mp.mpf
    bound: mp.mpf


class _Majorant:
    """``c_n <= A r^-n n^-3/2`` for ``n > N``, with ``A`` fitted on the last half of the table.

    The constant carries a safety factor of 2; it is an empirical majorant,
    not a proof, but the truncation error it controls for ``k >= 2`` terms is
    far below working precision anyway.
    """

    def __init__(self, table: CoeffTable, r):
        self.N = table.N
        self.r = mp.mpf(r)
        lo = max(1, self.N // 2)
        self.A = 2 * max(mp.mpf(table[n]) * self.r**n * mp.mpf(n) ** 1.5 for n in range(lo, self.N + 1))

    def tail(self, x):
        q = x / self.r
        n1 = self.N + 1
        if q < 1:
            return self.A * q**n1 * mp.mpf(n1) ** -1.5 / (1 - q)
        if q == 1:
            return self.A * 2 / mp.sqrt(self.N)
        return mp.inf


def _series(table: CoeffTable, x, eps):
    """``sum c_n x^n`` and ``sum n c_n x^(n-1)`` truncated at ``N``; stops once terms fall below ``eps``."""
    s = ds = mp.mpf(0)
    p = mp.mpf(1)
    for n in range(1, table.N + 1):
        c = table[n]
        dterm = n * c * p
        p *= x
        term = c * p
        s += term
        ds += dterm
        if n > 8 and term < eps and x < mp.mpf("0.2"):
            break
    return s, ds


def _tail_sum(table: CoeffTable, x, k_min: int, radius=None):
    """Return ``(sum_{k>=k_min} H(x^k)/k, d/dx of it, remainder bound)``."""
    eps = mp.mpf(2) ** (-mp.mp.prec - 16)
    safe = _Majorant(table, SAFE_RADIUS)
    at_radius = _Majorant(table, radius) if radius is not None else None
    total = dtotal = bound = mp.mpf(0)
    k = k_min
    while True:
        xk = x**k
        if k > 1 and xk < eps:
            # remaining k: H(x^k) <= 2 x^k, summed geometrically
            bound += 2 * xk / (k * (1 - x))
            break
        s, ds = _series(table, xk, eps)
        total += s / k
        dtotal += ds * x ** (k - 1)
        maj = safe if xk < safe.r or at_radius is None else at_radius
        bound += maj.tail(xk) / k
        k += 1
    return total, dtotal, bound


def eval_tail(table: CoeffTable, x, radius=None) -> TailValue:
    """``sum_{k>=1} H(x^k)/k`` from the truncated table with a remainder bound.

    Pass the radius of the table's series as ``radius`` to get a finite bound
    for ``x`` up to and including it.
    """
    x = mp.mpf(x)
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    value, _, bound = _tail_sum(table, x, 1, radius)
    return TailValue(value, bound)


def _singular_equation(table, m, x):
    t, dt, bound = _tail_sum(table, x, 2)
    g = (1 + x - _xm(x, m)) / 2 + t - mp.log(2)
    dxm = mp.mpf(0) if m is UNRESTRICTED else m * x ** (m - 1)
    dg = (1 - dxm) / 2 + dt
    return g, dg, bound


@lru_cache(maxsize=64)
def radius(m: Optional[int] = UNRESTRICTED, precision: int = DEFAULT_PRECISION, N: int = DEFAULT_N) -> mp.mpf:
    """Radius of convergence of ``H^(m)``: bisection on the bracket, then Newton."""
    table = _table(m, N)
    with mp.workprec(precision):
        tol = mp.mpf(2) ** (-precision + 8)
        lo, hi = mp.mpf(BRACKET[0]), mp.mpf(BRACKET[1])
        glo = _singular_equation(table, m, lo)[0]
        ghi = _singular_equation(table, m, hi)[0]
        if glo * ghi > 0:
            raise ConsistencyFailure("singular equation has no sign change on the bracket")
        for _ in range(40):
            mid = (lo + hi) / 2
            gm = _singular_equation(table, m, mid)[0]
            if (gm < 0) == (glo < 0):
                lo, glo = mid, gm
            else:
                hi = mid
        x = (lo + hi) / 2
        for _ in range(60):
            g, dg, bound = _singular_equation(table, m, x)
            step = g / dg
            x -= step
            if abs(step) < tol:
                break
        g, dg, bound = _singular_equation(table, m, x)
        # a remainder `bound` in T moves the root by about bound/dg
        if bound / dg > tol:
            raise InsufficientTruncation(f"N={N} leaves a truncation error of {mp.nstr(bound, 5)}")
        return +x


def half_value(m: Optional[int] = UNRESTRICTED, precision: int = DEFAULT_PRECISION,
               N: int = DEFAULT_N) -> mp.mpf:
    """``H^(m)(rho_m) = (1 + rho - rho^m)/2``, cross-checked two ways.

    The truncated series at ``rho`` plus its remainder bound must bracket the
    value, and the smaller root of ``F(rho, y) = 0`` (a double root) must
    agree with it to at least ten digits.
    """
    rho = radius(m, precision, N)
    table = _table(m, N)
    with mp.workprec(precision):
        b = (1 + rho - _xm(rho, m)) / 2
        s, _ = _series(table, rho, mp.mpf(0))
        tail = _Majorant(table, rho).tail(rho)
        if not s <= b <= s + tail:
            raise ConsistencyFailure(f"series {mp.nstr(s, 12)} + [0, {mp.nstr(tail, 5)}] misses {mp.nstr(b, 12)}")
        t = _tail_sum(table, rho, 2)[0]
        f = lambda y: mp.exp(y + t) - 2 * y - 1 + rho - _xm(rho, m)
        # F is convex in y with its minimum at y = ln 2 - t; the series value is the left root
        ymin = mp.log(2) - t
        y = ymin
        if f(ymin) < 0:
            lo, hi = ymin - 1, ymin  # f(lo) > 0 > f(hi)
            for _ in range(precision + 8):
                mid = (lo + hi) / 2
                if f(mid) > 0:
                    lo = mid
                else:
                    hi = mid
            y = (lo + hi) / 2
        if abs(y - b) > mp.mpf(10) ** -10:
            raise ConsistencyFailure(f"functional-equation root {mp.nstr(y, 15)} != {mp.nstr(b, 15)}")
        return b


@dataclass(frozen=True)
class AsymptoticEstimate:
    m: Optional[int]
    rho: mp.mpf
    C: mp.mpf
    a1: mp.mpf
    N: int
    precision: int
    residuals: dict = field(default_factory=dict)

    def predict(self, n: int) -> mp.mpf:
        """``C rho^-n n^-3/2``."""
        with mp.workprec(self.precision):
            return self.C * self.rho ** (-n) * mp.mpf(n) ** mp.mpf(-1.5)

    def to_dict(self, digits: Optional[int] = None) -> dict:
        digits = digits or int(self.precision * math.log10(2))
        s = lambda v: mp.nstr(v, digits, strip_zeros=False)
        return {"m": self.m, "rho": s(self.rho), "C": s(self.C), "a1": s(self.a1), "N": self.N,
                "precision": self.precision,
                "residuals": {k: mp.nstr(v, 6) for k, v in self.residuals.items()}}


@lru_cache(maxsize=64)
def growth_constant(m: Optional[int] = UNRESTRICTED, precision: int = DEFAULT_PRECISION,
                    N: int = DEFAULT_N) -> AsymptoticEstimate:
    rho = radius(m, precision, N)
    b = half_value(m, precision, N)
    table = _table(m, N)
    with mp.workprec(precision):
        t, dt, bound = _tail_sum(table, rho, 2)
        e = mp.exp(b + t)
        dxm = mp.mpf(0) if m is UNRESTRICTED else m * rho ** (m - 1)
        f = e - 2 * b - 1 + rho - _xm(rho, m)
        fy = e - 2
        fx = e * dt + 1 - dxm
        fyy = e
        if fyy <= 0:
            raise DegenerateSingularity("F_yy vanishes at the singularity")
        tol = mp.mpf(2) ** (-precision + 16)
        if abs(fyy - 2) > tol:
            raise ConsistencyFailure(f"F_yy = {mp.nstr(fyy, 20)}, expected 2")
        a1 = -mp.sqrt(2 * fx / fyy)
        c_direct = mp.sqrt(rho * fx / (2 * mp.pi * fyy))
        c_from_a1 = -a1 * mp.sqrt(rho) / (2 * mp.sqrt(mp.pi))
        if abs(c_direct - c_from_a1) > tol:
            raise ConsistencyFailure("the two growth-constant expressions disagree")
        residuals = {"F": abs(f), "F_y": abs(fy), "F_yy_minus_2": abs(fyy - 2), "tail_bound": bound}
        return AsymptoticEstimate(m, rho, c_direct, a1, N, precision, residuals)


@dataclass(frozen=True)
class MateFractionAsymptote:
    coeff: mp.mpf       # C_m / C_0
    ratio_base: mp.mpf  # rho_0 / rho_m


def mate_fraction_asymptote(m: int, precision: int = DEFAULT_PRECISION,
                            N: int = DEFAULT_N) -> MateFractionAsymptote:
    """``H^(m)_n / H_n ~ coeff * ratio_base^n``."""
    em = growth_constant(m, precision, N)
    e0 = growth_constant(UNRESTRICTED, precision, N)
    with mp.workprec(precision):
        return MateFractionAsymptote(em.C / e0.C, e0.rho / em.rho)


def half_threshold(m: int, target=mp.mpf("0.5"), precision: int = DEFAULT_PRECISION,
                   N: int = DEFAULT_N) -> int:
    """Smallest ``n`` with ``(rho_0/rho_m)^n <= target`` (the prefactor ``C_m/C_0`` is ignored)."""
    base = mate_fraction_asymptote(m, precision, N).ratio_base
    with mp.workprec(precision):
        target = mp.mpf(target)
        if target >= 1:
            return 0
        n = int(mp.ceil(mp.log(target) / mp.log(base)))
        while base ** n > target:
            n += 1
        while n > 0 and base ** (n - 1) <= target:
            n -= 1
        return n
