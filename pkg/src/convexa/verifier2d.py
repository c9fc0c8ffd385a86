"""Exact computation of the code realized by open convex rational polygons.

This is the certification oracle for the 2-D constructions: it reports the
exact set of membership words attained anywhere in the plane, together with
one witness point per word, using rational arithmetic only.

The sampling scheme is event-driven.  Membership words change only across
polygon boundary edges, so the plane decomposes into vertical strips between
consecutive *critical abscissae* — edge-endpoint x's and proper edge-edge
crossing x's — inside which the combinatorial structure of every vertical
line is constant.  One vertical line is sampled at every critical abscissa
(capturing vertical edges and point atoms), at the midpoint of every
consecutive pair (capturing full-dimensional atoms), and one step beyond each
extreme (capturing the empty word).  Along each line, the events are the
closed slice endpoints of every polygon; membership is constant between
consecutive events, and the events themselves are sampled too because atoms
of open arrangements can be lower-dimensional (single points or segments).

Every reported witness is re-checked against the polygons through the
independent :meth:`ConvexPolygon.contains` path on every call, so a bug in
the fast integer evaluation cannot produce a silently wrong certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .codes import EMPTY_WORD, NeuralCode, word_key, word_str
from .geometry import ConvexPolygon, RationalPoint

SCHEMA = "convexa/1"


@dataclass(frozen=True)
class WitnessedCode:
    """A realized code together with one witness point per codeword."""

    code: NeuralCode
    witnesses: dict[int, RationalPoint]

    def to_json(self) -> dict:
        n = self.code.n
        words = sorted(self.code.words, key=word_key)
        return {
            "schema": SCHEMA,
            "code": [word_str(w, n) for w in words],
            "witnesses": {
                word_str(w, n): [str(self.witnesses[w].x), str(self.witnesses[w].y)]
                for w in words
            },
        }


def _edges(polygons: Sequence[ConvexPolygon]):
    for poly_index, poly in enumerate(polygons):
        ring = poly.vertices
        for i, p in enumerate(ring):
            yield poly_index, p, ring[(i + 1) % len(ring)]


def _crossing_xs(polygons: Sequence[ConvexPolygon]) -> set[Fraction]:
    """x-coordinates of proper crossings between edges of distinct polygons.

    Edges of one polygon meet only at shared vertices (strict convexity),
    and vertex abscissae are sampled anyway, so same-polygon pairs are
    skipped.  Pairs whose closed x-spans do not overlap cannot cross.
    """
    edges = list(_edges(polygons))
    spans = [
        (min(p.x, q.x), max(p.x, q.x)) for _, p, q in edges
    ]
    out: set[Fraction] = set()
    for i in range(len(edges)):
        owner_i, p1, p2 = edges[i]
        lo_i, hi_i = spans[i]
        r = p2 - p1
        for j in range(i + 1, len(edges)):
            owner_j, q1, q2 = edges[j]
            if owner_j == owner_i:
                continue
            lo_j, hi_j = spans[j]
            if hi_j < lo_i or hi_i < lo_j:
                continue
            s = q2 - q1
            denom = r.cross(s)
            if denom == 0:
                continue  # parallel or collinear edges never swap y-order
            w = q1 - p1
            t = w.cross(s) / denom
            if t < 0 or t > 1:
                continue
            u = w.cross(r) / denom
            if u < 0 or u > 1:
                continue
            out.add(p1.x + r.x * t)
    return out


def _walk_samples(values: list[Fraction]) -> list[Fraction]:
    """values (sorted, distinct), their midpoints, and one beyond each end."""
    samples = [values[0] - 1]
    for left, right in zip(values, values[1:]):
        samples.append(left)
        samples.append((left + right) / 2)
    samples.append(values[-1])
    samples.append(values[-1] + 1)
    return samples


def _slice_bounds(constraints, px: int, qx: int):
    """Open slice of one polygon along the vertical line x = px/qx.

    Returns ``None`` when the closed slice is empty, else a pair of integer
    fractions ``(lo_n, lo_d, up_n, up_d)`` with positive denominators such
    that the open slice is ``lo < y < up`` (possibly with lo == up, a single
    boundary point).  All arithmetic stays in plain integers.
    """
    lo_n, lo_d = None, None
    up_n, up_d = None, None
    for h in constraints:
        rhs = h.c * qx - h.a * px
        if h.b == 0:
            if rhs <= 0:  # a*x < c fails on this line
                return None
        elif h.b > 0:
            num, den = rhs, h.b * qx
            if up_n is None or num * up_d < up_n * den:
                up_n, up_d = num, den
        else:
            num, den = -rhs, -h.b * qx
            if lo_n is None or num * lo_d > lo_n * den:
                lo_n, lo_d = num, den
    if lo_n is None or up_n is None:
        # a bounded polygon always has both bound kinds; be conservative
        return None
    if lo_n * up_d > up_n * lo_d:
        return None
    return lo_n, lo_d, up_n, up_d


def _sorted_unique_pairs(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Insertion-sort integer fractions (num, den>0) and drop duplicates."""
    ordered: list[tuple[int, int]] = []
    for n, d in pairs:
        i = len(ordered)
        while i > 0 and ordered[i - 1][0] * d > n * ordered[i - 1][1]:
            i -= 1
        ordered.insert(i, (n, d))
    unique: list[tuple[int, int]] = []
    for n, d in ordered:
        if unique and unique[-1][0] * d == n * unique[-1][1]:
            continue
        unique.append((n, d))
    return unique


def _line_words(
    polygons: Sequence[ConvexPolygon],
    x: Fraction,
    extra_ys: Sequence[Fraction],
    found: dict[int, RationalPoint],
) -> None:
    """Record every membership word attained on the vertical line at ``x``."""
    px, qx = x.numerator, x.denominator
    slices: list[tuple[int, tuple[int, int, int, int]]] = []
    events: list[tuple[int, int]] = []
    for index, poly in enumerate(polygons):
        if poly.is_empty:
            continue
        bounds = _slice_bounds(poly.constraints, px, qx)
        if bounds is None:
            continue
        lo_n, lo_d, up_n, up_d = bounds
        slices.append((index, bounds))
        events.append((lo_n, lo_d))
        events.append((up_n, up_d))
    for y in extra_ys:
        events.append((y.numerator, y.denominator))

    if not events:
        ys: list[tuple[int, int]] = [(0, 1)]
    else:
        marks = _sorted_unique_pairs(events)
        ys = [(marks[0][0] - marks[0][1], marks[0][1])]
        for (n1, d1), (n2, d2) in zip(marks, marks[1:]):
            ys.append((n1, d1))
            ys.append((n1 * d2 + n2 * d1, 2 * d1 * d2))
        ys.append(marks[-1])
        ys.append((marks[-1][0] + marks[-1][1], marks[-1][1]))

    words = [0] * len(ys)
    for index, (lo_n, lo_d, up_n, up_d) in slices:
        bit = 1 << index
        for k, (ny, dy) in enumerate(ys):
            if ny * up_d >= up_n * dy:
                break  # ys ascend: at or past the slice's upper end
            if lo_n * dy < ny * lo_d:
                words[k] |= bit

    for k, word in enumerate(words):
        if word not in found:
            ny, dy = ys[k]
            found[word] = RationalPoint(x, Fraction(ny, dy))


def realized_code_2d(
    polygons: Sequence[ConvexPolygon],
    n: int,
    *,
    extra_xs: Iterable[Fraction] = (),
    extra_ys: Iterable[Fraction] = (),
) -> WitnessedCode:
    """The exact code realized by ``polygons[i]`` as the set of neuron ``i``.

    The empty word is always part of the result.  ``extra_xs``/``extra_ys``
    add sample lines and ordinates on top of the event-driven scheme; by the
    refinement-stability property they never change the reported code.
    """
    if len(polygons) != n:
        raise ValueError(f"expected {n} polygons, got {len(polygons)}")
    xs: set[Fraction] = set(extra_xs)
    for poly in polygons:
        for v in poly.vertices:
            xs.add(v.x)
    xs |= _crossing_xs(polygons)

    extra_y_list = [Fraction(y) for y in extra_ys]
    found: dict[int, RationalPoint] = {}
    if xs:
        for x in _walk_samples(sorted(xs)):
            _line_words(polygons, x, extra_y_list, found)
    else:
        _line_words(polygons, Fraction(0), extra_y_list, found)
    found.setdefault(EMPTY_WORD, RationalPoint(Fraction(0), Fraction(0)))

    for word, point in found.items():
        recheck = 0
        for index, poly in enumerate(polygons):
            if poly.contains(point):
                recheck |= 1 << index
        if recheck != word:
            raise RuntimeError(
                "verifier self-check failed: witness for "
                f"{word_str(word, n)} re-evaluates to {word_str(recheck, n)}"
            )
    return WitnessedCode(NeuralCode(n, frozenset(found)), found)


def grid_sample_code(
    polygons: Sequence[ConvexPolygon], n: int, resolution: int
) -> NeuralCode:
    """Membership words over a uniform rational grid on the bounding box.

    A cross-check oracle: every grid point is an honestly evaluated plane
    point, so the result is always a subset of :func:`realized_code_2d`.
    The evaluation is exact; coordinates are scaled to a common denominator
    so the inner membership test runs in plain integers.
    """
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    if len(polygons) != n:
        raise ValueError(f"expected {n} polygons, got {len(polygons)}")
    boxes = [poly.bbox() for poly in polygons if not poly.is_empty]
    words = {EMPTY_WORD}
    if not boxes:
        return NeuralCode(n, frozenset(words))
    x0 = min(b[0] for b in boxes)
    x1 = max(b[1] for b in boxes)
    y0 = min(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    grid_xs = [x0 + (x1 - x0) * i / resolution for i in range(resolution + 1)]
    grid_ys = [y0 + (y1 - y0) * j / resolution for j in range(resolution + 1)]
    scale = 1
    for value in grid_xs + grid_ys:
        scale = scale * value.denominator // gcd(scale, value.denominator)
    int_xs = [int(x * scale) for x in grid_xs]
    int_ys = [int(y * scale) for y in grid_ys]
    # (bit, x-span, [(a, b, c*scale), ...]) per nonempty polygon; the
    # constraint a*x + b*y < c becomes a*X + b*Y < c*scale on scaled points
    tests = []
    for index, poly in enumerate(polygons):
        if poly.is_empty:
            continue
        bx0, bx1, _, _ = poly.bbox()
        tests.append(
            (
                1 << index,
                bx0 * scale,
                bx1 * scale,
                [(h.a, h.b, h.c * scale) for h in poly.constraints],
            )
        )
    for gx in int_xs:
        column = [
            (bit, constraints)
            for bit, bx0, bx1, constraints in tests
            if bx0 <= gx <= bx1
        ]
        if not column:
            words.add(EMPTY_WORD)
            continue
        for gy in int_ys:
            word = 0
            for bit, constraints in column:
                for a, b, c in constraints:
                    if a * gx + b * gy >= c:
                        break
                else:
                    word |= bit
            words.add(word)
    return NeuralCode(n, frozenset(words))


__all__ = [
    "WitnessedCode",
    "realized_code_2d",
    "grid_sample_code",
]
