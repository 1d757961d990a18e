"""Seeded sampling of connection points.

All samplers draw from a caller-supplied random.Random, so a seed fully
determines every sampled point.  Numerators are taken over a common
denominator N and clipped to a box; polygon membership is enforced exactly
(rejection on the rare singular or empty-window draws).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .quadfield import QuadNum
from .surface import (
    InvalidPointError,
    SurfacePoint,
    SurfaceProto,
    is_A_periodic,
    is_B_periodic,
)


def _int_window(low: QuadNum, high: QuadNum, box: int) -> tuple[int, int]:
    """Integers n with low <= n < high, clipped to [-box, box]."""
    lo = max(low.ceil(), -box)
    hi = min(high.ceil() - 1, box)
    return lo, hi


def sample_point(
    proto: SurfaceProto, N: int, rng: random.Random, box: int = 10_000
) -> SurfacePoint:
    """Uniform-ish point with all numerators over denominator N within the box."""
    w = proto.w
    for _ in range(10_000):
        b = rng.randint(-box, box)
        lo, hi = _int_window(-w * b, proto.p_low * N - w * b, box)
        if lo > hi:
            continue
        a = rng.randint(lo, hi)
        d = rng.randint(-box, box)
        lo2, hi2 = _int_window(-w * d, proto.poly_height * N - w * d, box)
        if lo2 > hi2:
            continue
        c = rng.randint(lo2, hi2)
        try:
            return SurfacePoint.from_fractions(
                proto, Fraction(a, N), Fraction(b, N), Fraction(c, N), Fraction(d, N)
            )
        except InvalidPointError:
            continue
    raise RuntimeError("sampling failed to produce a valid point")


def sample_nonperiodic_point(
    proto: SurfaceProto, N: int, rng: random.Random, box: int = 10_000
) -> SurfacePoint:
    """Point periodic under neither generator."""
    for _ in range(10_000):
        P = sample_point(proto, N, rng, box)
        if not is_A_periodic(P) and not is_B_periodic(P):
            return P
    raise RuntimeError("could not sample a doubly non-periodic point")


def _sample_y_lower(proto: SurfaceProto, N: int, rng: random.Random) -> tuple[Fraction, Fraction]:
    """(y_r, y_i) with 0 <= y <= 1 (the full-width strip)."""
    w = proto.w
    dmax = (proto.field.one / w * N).floor() + 1
    while True:
        d = rng.randint(-dmax, dmax)
        lo = (-w * d).ceil()
        hi = (proto.field.from_rational(N) - w * d).floor()  # y = 1 allowed
        if lo > hi:
            continue
        c = rng.randint(lo, hi)
        return Fraction(c, N), Fraction(d, N)


def _sample_x_left_column(proto: SurfaceProto, N: int, rng: random.Random) -> tuple[Fraction, Fraction]:
    """(x_r, x_i) with 0 <= x < 1 (the full-height column)."""
    w = proto.w
    bmax = (proto.field.one / w * N).floor() + 1
    while True:
        b = rng.randint(-bmax, bmax)
        lo = (-w * b).ceil()
        hi = (proto.field.from_rational(N) - w * b).ceil() - 1
        if lo > hi:
            continue
        a = rng.randint(lo, hi)
        return Fraction(a, N), Fraction(b, N)


def sample_a_periodic_point(
    proto: SurfaceProto,
    N: int,
    rng: random.Random,
    b_periodic: bool | None = False,
) -> SurfacePoint:
    """Point periodic under the vertical generator.

    b_periodic=False additionally rejects points periodic under the
    horizontal one; None accepts either.
    """
    alpha, beta = proto.a_right_cond
    for _ in range(10_000):
        if N >= 2 and rng.random() < 0.5:
            # far cylinder: alpha*x_r + beta*x_i == 1 with x > 1 forces y <= 1
            x_i = Fraction(rng.randint(1, N - 1), N)
            x_r = (1 - beta * x_i) / alpha
            y_r, y_i = _sample_y_lower(proto, N, rng)
        else:
            # near cylinder: x rational in [0, 1]; any in-polygon y pairs with it
            x_r, x_i = Fraction(rng.randint(0, N), N), Fraction(0)
            donor = sample_point(proto, N, rng, box=3 * N + 10)
            y_r, y_i = donor.y.r, donor.y.i
        try:
            P = SurfacePoint.from_fractions(proto, x_r, x_i, y_r, y_i)
        except InvalidPointError:
            continue
        if not is_A_periodic(P):
            continue
        if b_periodic is False and is_B_periodic(P):
            continue
        if b_periodic is True and not is_B_periodic(P):
            continue
        return P
    raise RuntimeError("could not sample an A-periodic point")


def sample_b_periodic_point(
    proto: SurfaceProto,
    N: int,
    rng: random.Random,
    a_periodic: bool | None = False,
) -> SurfacePoint:
    """Point periodic under the horizontal generator (mirror of the above)."""
    alpha, beta = proto.b_upper_cond
    for _ in range(10_000):
        if N >= 2 and rng.random() < 0.5:
            # upper cylinder: alpha*y_r + beta*y_i == 1 with y > 1 forces x < 1
            y_i = Fraction(rng.randint(1, N - 1), N)
            y_r = (1 - beta * y_i) / alpha
            x_r, x_i = _sample_x_left_column(proto, N, rng)
        else:
            # lower cylinder: y rational in [0, 1]; any in-polygon x pairs with it
            y_r, y_i = Fraction(rng.randint(0, N), N), Fraction(0)
            donor = sample_point(proto, N, rng, box=3 * N + 10)
            x_r, x_i = donor.x.r, donor.x.i
        try:
            P = SurfacePoint.from_fractions(proto, x_r, x_i, y_r, y_i)
        except InvalidPointError:
            continue
        if not is_B_periodic(P):
            continue
        if a_periodic is False and is_A_periodic(P):
            continue
        if a_periodic is True and not is_A_periodic(P):
            continue
        return P
    raise RuntimeError("could not sample a B-periodic point")
