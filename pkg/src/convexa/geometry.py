"""Exact rational plane geometry: points, open half-planes, convex polygons.

Everything here is computed over :class:`fractions.Fraction`; there is no
floating point and no epsilon anywhere.  Polygons are open convex sets
represented by a closed vertex ring (counterclockwise, strictly convex) plus
the derived edge constraints; a polygon with fewer than three hull vertices
has empty interior and is normalized to the empty polygon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True, order=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __sub__(self, other: RationalPoint) -> RationalPoint:
        return RationalPoint(self.x - other.x, self.y - other.y)

    def __add__(self, other: RationalPoint) -> RationalPoint:
        return RationalPoint(self.x + other.x, self.y + other.y)

    def scale(self, t) -> RationalPoint:
        t = _frac(t)
        return RationalPoint(self.x * t, self.y * t)

    def cross(self, other: RationalPoint) -> Fraction:
        return self.x * other.y - self.y * other.x


def pt(x, y) -> RationalPoint:
    """Shorthand constructor accepting ints, strings, or Fractions."""
    return RationalPoint(_frac(x), _frac(y))


@dataclass(frozen=True)
class HalfPlane:
    """Open half-plane ``a*x + b*y < c`` with primitive integer coefficients."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a == 0 and self.b == 0:
            raise ValueError("half-plane normal must be nonzero")

    @classmethod
    def of(cls, a, b, c) -> HalfPlane:
        """Build from arbitrary rationals, scaling to primitive integers.

        Scaling is by a positive rational only, so the inequality's
        direction is preserved.
        """
        a, b, c = _frac(a), _frac(b), _frac(c)
        scale = a.denominator * b.denominator * c.denominator
        ai, bi, ci = int(a * scale), int(b * scale), int(c * scale)
        g = gcd(gcd(abs(ai), abs(bi)), abs(ci))
        if g > 1:
            ai, bi, ci = ai // g, bi // g, ci // g
        return cls(ai, bi, ci)

    @classmethod
    def through(cls, p: RationalPoint, q: RationalPoint, *, excluding: RationalPoint) -> HalfPlane:
        """Half-plane whose boundary passes through ``p`` and ``q`` and whose
        open side does NOT contain ``excluding``."""
        d = q - p
        if d.x == 0 and d.y == 0:
            raise ValueError("cut line needs two distinct points")
        a, b = d.y, -d.x
        c = a * p.x + b * p.y
        side = a * excluding.x + b * excluding.y - c
        if side == 0:
            raise ValueError("excluded point lies on the cut line")
        if side < 0:
            a, b, c = -a, -b, -c
        return cls.of(a, b, c)

    def evaluate(self, p: RationalPoint) -> Fraction:
        """Positive inside the open half-plane, zero on the boundary."""
        return _frac(self.c) - (self.a * p.x + self.b * p.y)

    def contains(self, p: RationalPoint) -> bool:
        return self.evaluate(p) > 0

    def line_key(self) -> tuple[int, int, int]:
        """Canonical key identifying the boundary line (sign-insensitive)."""
        a, b, c = self.a, self.b, self.c
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        return (a, b, c)


def _hull(points: Iterable[RationalPoint]) -> list[RationalPoint]:
    """Monotone-chain convex hull; collinear points are dropped."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: list[RationalPoint] = []
        for p in seq:
            while len(out) >= 2 and (out[-1] - out[-2]).cross(p - out[-2]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class ConvexPolygon:
    """Open convex polygon: CCW strictly-convex vertex ring + edge constraints.

    The ring is the closure's boundary; the set itself is the open interior.
    An empty tuple of vertices means the empty set.
    """

    vertices: tuple[RationalPoint, ...]
    constraints: tuple[HalfPlane, ...] = field(compare=False)

    @classmethod
    def empty(cls) -> ConvexPolygon:
        return cls((), ())

    @classmethod
    def from_vertices(cls, points: Iterable[RationalPoint]) -> ConvexPolygon:
        ring = _hull(points)
        if len(ring) < 3:
            return cls.empty()
        constraints = []
        for i, p in enumerate(ring):
            q = ring[(i + 1) % len(ring)]
            d = q - p
            # interior of a CCW ring is strictly left of each directed edge
            constraints.append(HalfPlane.of(d.y, -d.x, d.y * p.x - d.x * p.y))
        return cls(tuple(ring), tuple(constraints))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, p: RationalPoint) -> bool:
        """Strict membership in the open interior."""
        return bool(self.vertices) and all(h.contains(p) for h in self.constraints)

    def clip(self, hp: HalfPlane) -> ConvexPolygon:
        """Intersect with the closed side of ``hp`` and re-hull.

        Clipping rings by closed half-planes and keeping only open interiors
        is exact for open polygons: a sliver with empty interior hulls down
        to fewer than three vertices and normalizes to empty.
        """
        if self.is_empty:
            return self
        ring = self.vertices
        out: list[RationalPoint] = []
        values = [hp.evaluate(p) for p in ring]
        for i, p in enumerate(ring):
            j = (i + 1) % len(ring)
            vp, vq = values[i], values[j]
            if vp >= 0:
                out.append(p)
            if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
                q = ring[j]
                t = vp / (vp - vq)
                out.append(p + (q - p).scale(t))
        return ConvexPolygon.from_vertices(out)

    def intersect(self, other: ConvexPolygon) -> ConvexPolygon:
        if self.is_empty or other.is_empty:
            return ConvexPolygon.empty()
        poly = self
        for hp in other.constraints:
            poly = poly.clip(hp)
            if poly.is_empty:
                break
        return poly

    def doubled_area(self) -> Fraction:
        total = Fraction(0)
        for i, p in enumerate(self.vertices):
            q = self.vertices[(i + 1) % len(self.vertices)]
            total += p.cross(q)
        return total

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if self.is_empty:
            raise ValueError("empty polygon has no bounding box")
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)
