"""Closed-form moments of random simplex volumes, returned exactly.

A "random simplex" in a convex body K is the convex hull of d+1 points drawn
independently and uniformly from K; optionally one vertex is pinned at a fixed
point x (written below as the "fixed-vertex" variant).  For intervals, balls,
balls with a fixed center vertex, half-balls with the base center fixed,
triangles, and triangles with an edge-midpoint vertex, the k-th moment of the
simplex volume has an exact closed form in the ring handled by
:mod:`sylvester.exactnum`; this module evaluates all of them, plus the ratio
quantities used to exhibit failures of monotonicity under set inclusion.

Triangle and tetrahedron moments are normalized to unit-volume bodies (the
moments are affine-invariant, so this is the canonical form); use
:func:`scale_to_volume` to translate to a body of any other volume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exactnum import PiPolynomial, kappa, omega

BODY_KINDS = ("interval", "ball", "halfball", "triangle", "tetrahedron")
FIXED_KINDS = ("none", "origin", "edge_midpoint", "facet_centroid")


@dataclass(frozen=True)
class MomentQuery:
    """A (dimension, order, body, fixed-vertex) selector for exact moments."""

    d: int
    k: int
    body_kind: str
    fixed_kind: str = "none"

    def __post_init__(self):
        if self.body_kind not in BODY_KINDS:
            raise ValueError(f"unknown body kind {self.body_kind!r}")
        if self.fixed_kind not in FIXED_KINDS:
            raise ValueError(f"unknown fixed kind {self.fixed_kind!r}")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.k < 0:
            raise ValueError("moment order must be >= 0")
        required_d = {"interval": 1, "triangle": 2, "tetrahedron": 3}.get(self.body_kind)
        if required_d is not None and self.d != required_d:
            raise ValueError(
                f"{self.body_kind} queries require d={required_d}, got d={self.d}"
            )
        if self.fixed_kind == "edge_midpoint" and self.body_kind != "triangle":
            raise ValueError("edge_midpoint is only valid for triangle")
        if self.fixed_kind == "facet_centroid" and self.body_kind != "tetrahedron":
            raise ValueError("facet_centroid is only valid for tetrahedron")
        if self.fixed_kind == "origin" and self.body_kind not in ("ball", "halfball"):
            raise ValueError("origin is only valid for ball or halfball")

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "body": self.body_kind,
            "fixed": self.fixed_kind,
        }


class UnsupportedQueryError(ValueError):
    """No exact closed form is implemented for the requested combination."""


def interval_moment(k: int, l: Fraction | int) -> PiPolynomial:
    """k-th moment of the distance of two uniform points in an interval of length l.

    Equals 2 l^k / ((k+1)(k+2)); purely rational.
    """
    _check_order(k)
    l = Fraction(l)
    if l <= 0:
        raise ValueError(f"interval length must be positive, got {l}")
    return PiPolynomial.from_rational(2 * l**k / ((k + 1) * (k + 2)))


def ball_moment(d: int, k: int) -> PiPolynomial:
    """k-th volume moment of a random simplex in the unit d-ball (all vertices random)."""
    _check_dim(d)
    _check_order(k)
    value = (kappa(d + k) / kappa(d)) ** (d + 1)
    value = value * kappa(d * (d + k + 1)) / kappa((d + 1) * (d + k))
    value = value / Fraction(factorial(d)) ** k
    return value * _omega_ratio(d, k)


def ball_fixed_moment(d: int, k: int) -> PiPolynomial:
    """k-th volume moment with one vertex fixed at the center of the unit d-ball."""
    _check_dim(d)
    _check_order(k)
    value = (kappa(d + k) / kappa(d)) ** d / Fraction(factorial(d)) ** k
    return value * _omega_ratio(d, k)


def halfball_fixed_moment(d: int, k: int) -> PiPolynomial:
    """k-th volume moment in the unit d-half-ball with one vertex fixed at the base center.

    Coincides exactly with :func:`ball_fixed_moment`: reflecting each random
    vertex through the base hyperplane leaves the simplex volume unchanged, and
    those reflections map the half-ball measure onto the full-ball measure.
    """
    _check_dim(d)
    _check_order(k)
    return ball_fixed_moment(d, k)


def _omega_ratio(d: int, k: int) -> PiPolynomial:
    value = PiPolynomial.one()
    for j in range(1, k + 1):
        value = value * omega(j) / omega(d + j)
    return value


def _triangle_moment_q(k: int) -> Fraction:
    inv_sq = sum(Fraction(1, comb(k, i)) ** 2 for i in range(k + 1))
    lead = Fraction(12, (k + 1) ** 3 * (k + 2) ** 3 * (k + 3) * (2 * k + 5))
    return lead * (6 * (k + 1) ** 2 + (k + 2) ** 2 * inv_sq)


def _triangle_midpoint_moment_q(k: int) -> Fraction:
    inv = sum(Fraction(1, comb(k + 2, l)) for l in range(1, k + 2))
    lead = Fraction(2**3, 2**k) / ((k + 1) * (k + 2) ** 2 * (k + 3))
    return lead * (inv + 1)


def triangle_moment(k: int) -> PiPolynomial:
    """k-th area moment of a random triangle in a triangle of unit area."""
    _check_order(k)
    return PiPolynomial.from_rational(_triangle_moment_q(k))


def triangle_midpoint_moment(k: int) -> PiPolynomial:
    """k-th area moment with one vertex fixed at an edge midpoint, unit-area triangle."""
    _check_order(k)
    return PiPolynomial.from_rational(_triangle_midpoint_moment_q(k))


def cutoff_integral_right_angle(k: int) -> PiPolynomial:
    """Line-integral contribution from lines cutting off the right-angle vertex.

    For the reference right triangle, integrates (chord length)^(k+3) times
    (distance of the chord from the edge midpoint)^k over all lines separating
    the right-angle vertex.  Equals
    1/(2^k (k+1)(k+2)) * sum_{l=1}^{k+1} C(k+2,l)^{-1}, which matches the
    planar quadrature (1/2^k) * int_0^1 int_0^1 (a+b-2ab)^k * ab da db.
    """
    _check_order(k)
    inv = sum(Fraction(1, comb(k + 2, l)) for l in range(1, k + 2))
    return PiPolynomial.from_rational(Fraction(1, 2**k * (k + 1) * (k + 2)) * inv)


def cutoff_integral_acute(k: int) -> PiPolynomial:
    """Contribution from lines cutting off either acute vertex: 1/(2^(k+1)(k+1)(k+2)).

    The two acute vertices contribute equally by symmetry; this is the value
    for one of them.
    """
    _check_order(k)
    return PiPolynomial.from_rational(Fraction(1, 2 ** (k + 1) * (k + 1) * (k + 2)))


def midpoint_moment_from_cutoff_integrals(k: int) -> PiPolynomial:
    """Edge-midpoint moment reassembled from the three partial line integrals.

    Combines the right-angle contribution plus twice the acute one with the
    2^(3-k)/((k+2)(k+3)) prefactor for the reference right triangle of area
    1/2, then rescales to unit area.  Must agree exactly with
    :func:`triangle_midpoint_moment`; the test suite exercises this
    recombination explicitly.
    """
    _check_order(k)
    combined = cutoff_integral_right_angle(k) + 2 * cutoff_integral_acute(k)
    reference = combined * Fraction(2**3, 2**k * (k + 2) * (k + 3))
    return reference * Fraction(2) ** k


def q_ratio(d: int, k: int) -> Fraction:
    """Upper-bound series q(d,k) controlling the fixed-vertex/free moment ratio in half-balls.

    q(d,k) = 4^k * ((d+2)...(d+k+1)) / ((d(d+k+1)+1)...(d(d+k+1)+k)).
    The square root of q(d,k) bounds E V^k with base-center vertex over E V^k
    free in the d-half-ball; q < 1 therefore certifies a monotonicity failure.
    """
    if d < 2:
        raise ValueError("q_ratio requires d >= 2")
    if k < 1:
        raise ValueError("q_ratio requires k >= 1")
    num = 1
    for j in range(d + 2, d + k + 2):
        num *= j
    den = 1
    base = d * (d + k + 1)
    for j in range(base + 1, base + k + 1):
        den *= j
    return Fraction(4) ** k * Fraction(num, den)


def exact_ratio_bound(d: int, k: int) -> PiPolynomial:
    """Exact upper bound for the fixed-vertex/free moment ratio in the d-half-ball.

    The value 2^k (kappa_d / kappa_{d+k}) (kappa_{(d+1)(d+k)} / kappa_{d(d+k+1)}),
    obtained by bounding the free moment from below through the ball of the
    half-ball's volume.
    """
    _check_dim(d)
    if k < 1:
        raise ValueError("exact_ratio_bound requires k >= 1")
    value = PiPolynomial.from_rational(Fraction(2) ** k)
    value = value * kappa(d) / kappa(d + k)
    return value * kappa((d + 1) * (d + k)) / kappa(d * (d + k + 1))


def tx_over_t_ratio(k: int) -> Fraction:
    """Ratio of the edge-midpoint moment to the free moment for a triangle.

    Computed as triangle_midpoint_moment(k) / triangle_moment(k); identical to
    the direct closed form
    (k+1)^2 (k+2)(2k+5) / (3*2^(k-1)) * (sum_l C(k+2,l)^{-1} + 1)
                                      / (6(k+1)^2 + (k+2)^2 sum_i C(k,i)^{-2}).
    """
    _check_order(k)
    return _triangle_midpoint_moment_q(k) / _triangle_moment_q(k)


def tetrahedron_moment_k1() -> PiPolynomial:
    """Expected volume of a random tetrahedron in a tetrahedron of unit volume."""
    return PiPolynomial({0: Fraction(13, 720), 4: Fraction(-1, 15015)})


def scale_to_volume(
    unit_moment: PiPolynomial | Fraction, volume: Fraction | int, k: int
) -> PiPolynomial | Fraction:
    """Rescale a unit-volume k-th moment to a body of the given volume."""
    _check_order(k)
    volume = Fraction(volume)
    if volume <= 0:
        raise ValueError("volume must be positive")
    return unit_moment * volume**k


TABLE1_KS = tuple(range(3, 11))


@dataclass(frozen=True)
class Table1Row:
    k: int
    midpoint_moment: Fraction
    free_moment: Fraction
    ratio: Fraction

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "midpoint_moment": str(self.midpoint_moment),
            "free_moment": str(self.free_moment),
            "ratio": str(self.ratio),
            "ratio_decimal": PiPolynomial.from_rational(self.ratio).to_decimal(6),
        }


def table1_rows() -> list[Table1Row]:
    """The triangle moment table for k = 3..10 (unit-area triangle, exact)."""
    return [
        Table1Row(
            k=k,
            midpoint_moment=_triangle_midpoint_moment_q(k),
            free_moment=_triangle_moment_q(k),
            ratio=tx_over_t_ratio(k),
        )
        for k in TABLE1_KS
    ]


#: First moment order at which the triangle family fails monotonicity in the plane.
PLANE_CRITICAL_ORDER = 3
#: First order at which q(2, .) < 1; q(2, .) decreases strictly from order 4 on.
HALFDISK_CRITICAL_ORDER = 11


@dataclass(frozen=True)
class PlaneCounterexampleReport:
    """Which planar family (if any) witnesses non-monotonicity at order k."""

    k: int
    family: str  # "triangle" | "halfdisk" | "none"
    counterexample: bool
    triangle_ratio: Fraction | None
    q2: Fraction | None
    note: str

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "family": self.family,
            "counterexample": self.counterexample,
            "triangle_ratio": None if self.triangle_ratio is None else str(self.triangle_ratio),
            "q2": None if self.q2 is None else str(self.q2),
            "note": self.note,
        }


def plane_counterexample_report(k: int) -> PlaneCounterexampleReport:
    """Planar non-monotonicity witness for moment order k, as exact data.

    Orders 1 and 2 admit no counterexample from these families (the triangle
    edge-midpoint ratio is 10/9 at k=1 and exactly 1 at k=2).  Orders 3..10 use
    the triangle family, whose exact ratio drops below 1.  From order 11 on the
    half-disk family takes over: q(2,k) < 1 there, and q(2,.) decreases
    strictly from order 4, so the witness persists for every larger k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k < PLANE_CRITICAL_ORDER:
        ratio = tx_over_t_ratio(k)
        note = (
            "edge-midpoint ratio equals 1; the two moments coincide"
            if ratio == 1
            else f"edge-midpoint ratio {ratio} >= 1; reported as data only"
        )
        return PlaneCounterexampleReport(
            k=k,
            family="none",
            counterexample=False,
            triangle_ratio=ratio,
            q2=q_ratio(2, k),
            note="no counterexample from these families: " + note,
        )
    if k <= 10:
        ratio = tx_over_t_ratio(k)
        assert ratio < 1
        return PlaneCounterexampleReport(
            k=k,
            family="triangle",
            counterexample=True,
            triangle_ratio=ratio,
            q2=None,
            note=f"unit triangle with edge-midpoint vertex: exact ratio {ratio} < 1",
        )
    q2 = q_ratio(2, k)
    assert q2 < 1
    return PlaneCounterexampleReport(
        k=k,
        family="halfdisk",
        counterexample=True,
        triangle_ratio=None,
        q2=q2,
        note=(
            f"half-disk with base-center vertex: q(2,{k}) = {q2} < 1; "
            f"q(2,.) decreases strictly from order 4 and is < 1 from order "
            f"{HALFDISK_CRITICAL_ORDER} on"
        ),
    )


def exact_moment(query: MomentQuery, l: Fraction | int | None = None) -> PiPolynomial:
    """Dispatch a :class:`MomentQuery` to its closed form.

    Raises :class:`UnsupportedQueryError` for combinations without one.
    """
    kind = (query.body_kind, query.fixed_kind)
    if kind == ("interval", "none"):
        return interval_moment(query.k, l if l is not None else 1)
    if kind == ("ball", "none"):
        return ball_moment(query.d, query.k)
    if kind == ("ball", "origin"):
        return ball_fixed_moment(query.d, query.k)
    if kind == ("halfball", "origin"):
        return halfball_fixed_moment(query.d, query.k)
    if kind == ("triangle", "none"):
        return triangle_moment(query.k)
    if kind == ("triangle", "edge_midpoint"):
        return triangle_midpoint_moment(query.k)
    if kind == ("tetrahedron", "none") and query.k == 1:
        return tetrahedron_moment_k1()
    raise UnsupportedQueryError(
        f"no closed form for body={query.body_kind} fixed={query.fixed_kind} "
        f"d={query.d} k={query.k}; supported: interval/none (any k), "
        "ball/none, ball/origin, halfball/origin (any d, k), triangle/none, "
        "triangle/edge_midpoint (any k), tetrahedron/none (k=1 only)"
    )


def _check_dim(d: int) -> None:
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")


def _check_order(k: int) -> None:
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
