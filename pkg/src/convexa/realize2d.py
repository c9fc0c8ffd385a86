"""Certified 2-D convex open realizations built from three primitives.

``fatten`` lifts a 1-D interval realization into the plane: the union of the
intervals becomes the base of a convex "tent" whose top chain carries one
dedicated apex vertex per planned future codeword, and every neuron's set
becomes its vertical strip intersected with the tent.  ``slice`` then adds a
codeword τ with parent codeword π by cutting a small cap off a dedicated
universe vertex inside π's atom: every neuron of π ∖ τ is intersected with
the cut half-plane, so the cap realizes exactly τ.  ``triangle_construction``
handles three maximal codewords that overlap pairwise like a triangle (no
path order exists): the three facets become disc-like "pads" at the corners
of a fixed triangle, neurons shared by two facets become the convex corridor
spanning the two pads, and neurons shared by all three become the whole
universe; extra codewords again enter through ``slice``, using bulge vertices
planted on the outer bridges between pads.

Every public operation runs the independent verifier on its output and keeps
shrinking its size parameter (cap width, pad radius) until the realized code
matches the target exactly; a budget turns geometric bugs into loud
``RefineExhausted`` errors instead of wrong certificates.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .codes import (
    EMPTY_WORD,
    NeuralCode,
    SimplicialComplex,
    closure,
    is_max_intersection_complete,
    is_subword,
    parse_word,
    word_ids,
    word_key,
    word_str,
)
from .decision import choose_parents
from .errors import (
    AlreadyRealized,
    NoDedicatedVertex,
    NotMaxIntersectionComplete,
    ParseError,
    RefineExhausted,
    WrongFacetCount,
)
from .geometry import ConvexPolygon, HalfPlane, RationalPoint, pt
from .realize1d import Realization1D, open_atom_slots, realized_code_1d
from .verifier2d import WitnessedCode, realized_code_2d

SCHEMA = "convexa/1"

DEFAULT_REFINE_BUDGET = 32
REFINE_BUDGET_ENV = "CONVEXA_REFINE_BUDGET"


def refine_budget(budget: int | None = None) -> int:
    """Resolve the verify-refine retry budget.

    Explicit argument wins, then the ``CONVEXA_REFINE_BUDGET`` environment
    variable, then the default of 32.
    """
    if budget is None:
        raw = os.environ.get(REFINE_BUDGET_ENV)
        if raw is None:
            return DEFAULT_REFINE_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise ValueError(
                f"{REFINE_BUDGET_ENV} must be an integer, got {raw!r}"
            ) from None
    if budget < 1:
        raise ValueError(f"refine budget must be positive, got {budget}")
    return budget


@dataclass(frozen=True)
class Cut:
    """One cap cut: codeword realized, its parent, the half-plane, and the
    neurons whose sets were intersected with it (always parent ∖ tau)."""

    tau: int
    parent: int
    halfplane: HalfPlane
    affected: tuple[int, ...]


@dataclass(frozen=True)
class Realization2D:
    """Open convex polygons (one per neuron) inside a convex universe.

    ``sites`` lists the still-unused dedicated universe vertices, keyed by
    the codeword whose atom owns them; it is consumed by :func:`slice` and
    deliberately not serialized — a realization loaded from JSON can be
    verified and rendered but not sliced further.
    """

    n: int
    polygons: tuple[ConvexPolygon, ...]
    universe: ConvexPolygon
    cuts: tuple[Cut, ...] = ()
    sites: tuple[tuple[int, RationalPoint], ...] = field(
        default=(), compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if len(self.polygons) != self.n:
            raise ValueError(
                f"expected {self.n} polygons, got {len(self.polygons)}"
            )
        for index, poly in enumerate(self.polygons):
            for v in poly.vertices:
                if any(h.evaluate(v) < 0 for h in self.universe.constraints):
                    raise ValueError(
                        f"polygon {index} is not contained in the universe"
                    )
        for cut in self.cuts:
            if cut.affected != word_ids(cut.parent & ~cut.tau):
                raise ValueError(
                    "cut for "
                    f"{word_str(cut.tau, self.n)} must affect exactly "
                    "parent \\ tau"
                )

    def to_json(self) -> dict:
        def points(poly: ConvexPolygon):
            return [[str(v.x), str(v.y)] for v in poly.vertices]

        return {
            "schema": SCHEMA,
            "dim": 2,
            "n": self.n,
            "universe": points(self.universe),
            "sets": [
                None if poly.is_empty else points(poly)
                for poly in self.polygons
            ],
            "cuts": [
                {
                    "tau": word_str(cut.tau, self.n),
                    "parent": word_str(cut.parent, self.n),
                    "halfplane": [
                        str(cut.halfplane.a),
                        str(cut.halfplane.b),
                        str(cut.halfplane.c),
                    ],
                    "affected": list(cut.affected),
                }
                for cut in self.cuts
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> Realization2D:
        try:
            if doc.get("dim") != 2:
                raise ParseError("expected a dim-2 realization document")
            n = int(doc["n"])

            def poly(entry) -> ConvexPolygon:
                if entry is None:
                    return ConvexPolygon.empty()
                points = [pt(Fraction(x), Fraction(y)) for x, y in entry]
                if len(points) < 3:
                    raise ParseError("polygons need at least three vertices")
                return ConvexPolygon.from_vertices(points)

            universe = poly(doc["universe"])
            if universe.is_empty:
                raise ParseError("universe polygon must be nonempty")
            sets = doc["sets"]
            if not isinstance(sets, list) or len(sets) != n:
                raise ParseError("'sets' must list one entry per neuron")
            polygons = tuple(poly(entry) for entry in sets)
            cuts = []
            for entry in doc.get("cuts", []):
                a, b, c = (Fraction(v) for v in entry["halfplane"])
                cuts.append(
                    Cut(
                        parse_word(entry["tau"]),
                        parse_word(entry["parent"]),
                        HalfPlane.of(a, b, c),
                        tuple(int(i) for i in entry["affected"]),
                    )
                )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed 2-D realization: {exc}") from None
        try:
            return cls(n, polygons, universe, tuple(cuts))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _strip(universe: ConvexPolygon, lo: Fraction, hi: Fraction) -> ConvexPolygon:
    return universe.clip(HalfPlane.of(-1, 0, -lo)).clip(HalfPlane.of(1, 0, hi))


def fatten(
    base: Realization1D,
    parents_needed: Mapping[int, int] | None = None,
) -> Realization2D:
    """Lift a 1-D realization to 2-D strips under a convex tent universe.

    ``parents_needed`` asks for that many dedicated apex vertices strictly
    inside the (leftmost) open atom of each given codeword; the apexes are
    the sites later consumed by :func:`slice`.  The realized 2-D code always
    equals the base's 1-D code, and the output is verifier-certified.
    """
    parents_needed = dict(parents_needed or {})
    endpoints = base.endpoints()
    if not endpoints:
        if parents_needed:
            raise NoDedicatedVertex(
                "an all-empty base realization has no atoms to host sites"
            )
        universe = ConvexPolygon.from_vertices(
            [pt(0, 0), pt(1, 0), pt(Fraction(1, 2), Fraction(1, 4))]
        )
        real = Realization2D(
            base.n, tuple(ConvexPolygon.empty() for _ in range(base.n)), universe
        )
        _certify(real, realized_code_1d(base), "fatten")
        return real

    x0, x1 = endpoints[0], endpoints[-1]
    span = x1 - x0

    def height(x: Fraction) -> Fraction:
        return (x - x0) * (x1 - x) / span

    slot_of: dict[int, tuple[Fraction, Fraction]] = {}
    for word, lo, hi in open_atom_slots(base):
        slot_of.setdefault(word, (lo, hi))

    apex_sites: list[tuple[int, RationalPoint]] = []
    for parent in sorted(parents_needed, key=word_key):
        count = parents_needed[parent]
        if count <= 0:
            continue
        if parent not in slot_of:
            raise NoDedicatedVertex(
                f"codeword {word_str(parent, base.n)} has no open atom in the"
                " base realization"
            )
        lo, hi = slot_of[parent]
        for j in range(1, count + 1):
            x = lo + (hi - lo) * j / (count + 1)
            apex_sites.append((parent, RationalPoint(x, height(x))))

    tops = [site for _, site in apex_sites]
    if not tops:
        mid = (x0 + x1) / 2
        tops = [RationalPoint(mid, height(mid))]
    universe = ConvexPolygon.from_vertices(
        [RationalPoint(x0, Fraction(0)), RationalPoint(x1, Fraction(0)), *tops]
    )
    ring = set(universe.vertices)
    if any(site not in ring for _, site in apex_sites):
        raise RefineExhausted(
            "tent apexes failed to appear as universe vertices"
        )

    polygons = tuple(
        ConvexPolygon.empty()
        if interval.is_empty
        else _strip(universe, interval.lo, interval.hi)
        for interval in base.intervals
    )
    real = Realization2D(
        base.n, polygons, universe, cuts=(), sites=tuple(apex_sites)
    )
    _certify(real, realized_code_1d(base), "fatten")
    return real


def _certify(real: Realization2D, target: NeuralCode, op: str) -> WitnessedCode:
    wc = realized_code_2d(real.polygons, real.n)
    if wc.code != target:
        missing = sorted(target.words - wc.code.words, key=word_key)
        spurious = sorted(wc.code.words - target.words, key=word_key)
        raise RefineExhausted(
            f"{op} output failed certification: missing "
            f"{[word_str(w, real.n) for w in missing]}, spurious "
            f"{[word_str(w, real.n) for w in spurious]}"
        )
    return wc


def _ring_neighbors(
    universe: ConvexPolygon, v: RationalPoint
) -> tuple[RationalPoint, RationalPoint]:
    ring = universe.vertices
    try:
        i = ring.index(v)
    except ValueError:
        raise RuntimeError(
            "dedicated site is not a universe vertex; realization sites are"
            " inconsistent with the universe"
        ) from None
    return ring[i - 1], ring[(i + 1) % len(ring)]


def slice(
    real: Realization2D,
    extras: Sequence[tuple[int, int]],
    *,
    base: WitnessedCode | None = None,
    budget: int | None = None,
) -> Realization2D:
    """Add each codeword τ with parent π by cutting a cap off one of π's
    unused dedicated universe vertices.

    All cuts share one cap-size parameter δ; after applying every cut the
    whole arrangement is re-verified against (input code) ∪ {τ's}, and on
    any discrepancy δ is halved and all cuts are re-applied to the original
    polygons, up to the refine budget.  ``base`` may supply the input's
    already-computed verifier certificate to skip recomputing it.
    """
    if not extras:
        return real
    wc = base if base is not None else realized_code_2d(real.polygons, real.n)
    for tau, parent in extras:
        if tau in wc.code.words:
            raise AlreadyRealized(
                f"codeword {word_str(tau, real.n)} is already realized"
            )
        if parent not in wc.code.words:
            raise ValueError(
                f"parent {word_str(parent, real.n)} is not a realized codeword"
            )
        if tau == EMPTY_WORD or not is_subword(tau, parent):
            raise ValueError(
                f"{word_str(tau, real.n)} is not a nonempty proper part of "
                f"its parent {word_str(parent, real.n)}"
            )

    unused = list(real.sites)
    chosen: list[RationalPoint] = []
    for tau, parent in extras:
        for k, (site_parent, site) in enumerate(unused):
            if site_parent == parent:
                chosen.append(site)
                del unused[k]
                break
        else:
            raise NoDedicatedVertex(
                f"no unused dedicated vertex left for parent "
                f"{word_str(parent, real.n)}"
            )

    target = NeuralCode(
        real.n, wc.code.words | {tau for tau, _ in extras}
    )
    attempts = refine_budget(budget)
    last_error = None
    for attempt in range(attempts):
        delta = Fraction(1, 4) / (1 << attempt)
        polygons = list(real.polygons)
        cuts = list(real.cuts)
        for (tau, parent), v in zip(extras, chosen):
            prev, nxt = _ring_neighbors(real.universe, v)
            p1 = v + (prev - v).scale(delta)
            p2 = v + (nxt - v).scale(delta)
            hp = HalfPlane.through(p1, p2, excluding=v)
            affected = word_ids(parent & ~tau)
            for i in affected:
                polygons[i] = polygons[i].clip(hp)
            cuts.append(Cut(tau, parent, hp, affected))
        candidate = Realization2D(
            real.n,
            tuple(polygons),
            real.universe,
            tuple(cuts),
            tuple(unused),
        )
        result = realized_code_2d(candidate.polygons, candidate.n)
        if result.code == target:
            return candidate
        last_error = (
            f"attempt {attempt}: realized "
            f"{sorted(word_str(w, real.n) for w in result.code.words)}"
        )
    raise RefineExhausted(
        f"cap cuts failed to certify after {attempts} attempts ({last_error})"
    )


# --- the triangle (pad / corridor) construction ----------------------------

# Corners of the fixed carrier triangle.
_CORNERS = (pt(0, 0), pt(16, 0), pt(8, 12))

# Rational-parameter arcs: the point at parameter t on the radius-ρ circle
# around corner T is T + ρ·((1−t²)/(1+t²), 2t/(1+t²)).  Each pad uses the arc
# facing away from the triangle's interior.
_ARCS = (
    (Fraction(-11), Fraction(-6, 7)),
    (Fraction(-6, 5), Fraction(-1, 25)),
    (Fraction(4, 15), Fraction(15, 4)),
)

# Outward bridge normals and their height scale, per pad pair.  Bulges on a
# bridge sit at chord + ρ·r·(9/8 + μ(1−μ))·normal, which keeps them in
# strictly convex position (the height profile is concave in μ) and strictly
# outside the corridor hull of the two pads.
_BRIDGES: dict[frozenset[int], tuple[RationalPoint, Fraction]] = {
    frozenset({0, 1}): (pt(0, -1), Fraction(1)),
    frozenset({1, 2}): (pt(3, 2), Fraction(5, 18)),
    frozenset({0, 2}): (pt(-3, 2), Fraction(5, 18)),
}


def _circle_point(center: RationalPoint, rho: Fraction, t: Fraction) -> RationalPoint:
    d = 1 + t * t
    return center + RationalPoint(rho * (1 - t * t) / d, rho * 2 * t / d)


def _pad_points(j: int, rho: Fraction, count: int) -> list[RationalPoint]:
    t_lo, t_hi = _ARCS[j]
    return [
        _circle_point(_CORNERS[j], rho, t_lo + (t_hi - t_lo) * i / (count - 1))
        for i in range(count)
    ]


def _bridge_points(
    pads: Sequence[list[RationalPoint]], j: int, k: int
) -> tuple[RationalPoint, RationalPoint]:
    """Chord endpoints of the outer bridge from pad j to pad k, in the
    counterclockwise ring order pad0 → pad1 → pad2."""
    if (j, k) == (0, 1):
        return pads[0][-1], pads[1][0]
    if (j, k) == (1, 2):
        return pads[1][-1], pads[2][0]
    if (j, k) == (0, 2):
        return pads[2][-1], pads[0][0]
    raise ValueError(f"no bridge for pads {j}, {k}")


def _bulge_point(
    a: RationalPoint,
    b: RationalPoint,
    normal: RationalPoint,
    scale: Fraction,
    rho: Fraction,
    mu: Fraction,
) -> RationalPoint:
    height = rho * scale * (Fraction(9, 8) + mu * (1 - mu))
    return a + (b - a).scale(mu) + normal.scale(height)


def triangle_construction(
    cpx: SimplicialComplex,
    code: NeuralCode,
    *,
    budget: int | None = None,
) -> Realization2D:
    """Certified realization of a max-intersection-complete code whose three
    maximal codewords overlap without a path order.

    Facet j's neurons-in-only-it live on pad j, neurons shared by facets j
    and k on the corridor hull of pads j and k, and neurons in all three on
    the whole universe; the remaining codewords of ``code`` are added by
    :func:`slice` at pad corners (facet parents) and bridge bulges (pairwise
    and triple-intersection parents).  Pad radius starts at 2 (an eighth of
    the triangle side) and is halved whenever verification fails.
    """
    facets = [f for f in cpx.facets if f != EMPTY_WORD]
    if len(facets) != 3:
        raise WrongFacetCount(
            f"the triangle construction needs exactly 3 facets, got {len(facets)}"
        )
    if not is_max_intersection_complete(code):
        raise NotMaxIntersectionComplete(
            "the triangle construction requires a max-intersection-complete code"
        )
    if closure(code) != cpx:
        raise ValueError("code's maximal codewords do not match the complex")

    facets.sort(key=word_key)
    f0, f1, f2 = facets
    sigma0 = f0 & f1 & f2
    pairwise = {(0, 1): f0 & f1, (1, 2): f1 & f2, (0, 2): f0 & f2}
    base_words = {EMPTY_WORD, f0, f1, f2, sigma0, *pairwise.values()}
    base_code = NeuralCode(code.n, frozenset(base_words))
    extras = choose_parents(code, base_code)

    facet_extras = [0, 0, 0]
    pair_extras: dict[tuple[int, int], int] = {(0, 1): 0, (1, 2): 0, (0, 2): 0}
    center_extras = 0
    for _, parent in extras:
        if parent in facets:
            facet_extras[facets.index(parent)] += 1
        elif parent == sigma0:
            center_extras += 1
        else:
            for jk, value in pairwise.items():
                if value == parent:
                    pair_extras[jk] += 1
                    break
            else:
                raise ValueError(
                    f"unexpected parent {word_str(parent, code.n)} outside"
                    " the construction's base code"
                )

    signatures = []
    for i in range(code.n):
        bit = 1 << i
        signatures.append(frozenset(j for j in range(3) if facets[j] & bit))

    attempts = refine_budget(budget)
    failure = None
    for attempt in range(attempts):
        rho = Fraction(2) / (1 << attempt)
        try:
            return _triangle_attempt(
                cpx,
                code,
                base_code,
                extras,
                facets,
                sigma0,
                pairwise,
                facet_extras,
                pair_extras,
                center_extras,
                signatures,
                rho,
                budget,
            )
        except (RefineExhausted, NoDedicatedVertex) as exc:
            failure = exc
    raise RefineExhausted(
        f"triangle construction failed after {attempts} pad scales: {failure}"
    )


def _triangle_attempt(
    cpx: SimplicialComplex,
    code: NeuralCode,
    base_code: NeuralCode,
    extras: Sequence[tuple[int, int]],
    facets: Sequence[int],
    sigma0: int,
    pairwise: Mapping[tuple[int, int], int],
    facet_extras: Sequence[int],
    pair_extras: Mapping[tuple[int, int], int],
    center_extras: int,
    signatures: Sequence[frozenset[int]],
    rho: Fraction,
    budget: int | None,
) -> Realization2D:
    pads = [_pad_points(j, rho, facet_extras[j] + 6) for j in range(3)]

    # Bulges per bridge: the pair-parent sites for that bridge; bridge 0-1
    # additionally carries all triple-intersection sites, separated from its
    # pair sites by one sacrificial bulge that is never used as a site.
    bridge_bulges: dict[tuple[int, int], list[RationalPoint]] = {}
    corridor_bulges: dict[tuple[int, int], list[RationalPoint]] = {}
    pair_sites: dict[tuple[int, int], list[RationalPoint]] = {}
    center_sites: list[RationalPoint] = []
    for jk in ((0, 1), (1, 2), (0, 2)):
        a, b = _bridge_points(pads, *jk)
        normal, scale = _BRIDGES[frozenset(jk)]
        pair_count = pair_extras[jk]
        sac_count = 0
        centers_here = center_extras if jk == (0, 1) else 0
        if pair_count and centers_here:
            sac_count = 1
        total = pair_count + sac_count + centers_here
        points = [
            _bulge_point(a, b, normal, scale, rho, Fraction(i, total + 1))
            for i in range(1, total + 1)
        ]
        bridge_bulges[jk] = points
        corridor_bulges[jk] = points[: pair_count + sac_count]
        pair_sites[jk] = points[:pair_count]
        if centers_here:
            center_sites.extend(points[pair_count + sac_count :])

    universe_points = [p for pad in pads for p in pad]
    for points in bridge_bulges.values():
        universe_points.extend(points)
    universe = ConvexPolygon.from_vertices(universe_points)
    ring = universe.vertices
    ring_set = set(ring)

    # every pad point and every bulge must survive as a universe vertex;
    # shrinking rho flattens the bridges until that holds
    for points in bridge_bulges.values():
        if any(p not in ring_set for p in points):
            raise RefineExhausted("bridge bulge shadowed off the universe hull")

    corridors: dict[tuple[int, int], ConvexPolygon] = {}
    for jk in ((0, 1), (1, 2), (0, 2)):
        j, k = jk
        corridors[jk] = ConvexPolygon.from_vertices(
            pads[j] + pads[k] + corridor_bulges[jk]
        )

    # a triple-intersection site must sit strictly outside the corridor it
    # bulges away from, so its cap meets only universe-assigned neurons
    if center_sites:
        corridor = corridors[(0, 1)]
        for p in center_sites:
            if all(h.evaluate(p) >= 0 for h in corridor.constraints):
                raise RefineExhausted(
                    "triple-intersection bulge not separated from corridor"
                )
    # a pair site's cap must stay inside its corridor: both of its universe
    # ring neighbors have to be corridor generators
    for jk, sites_here in pair_sites.items():
        j, k = jk
        generators = set(pads[j]) | set(pads[k]) | set(corridor_bulges[jk])
        for p in sites_here:
            prev, nxt = _ring_neighbors(universe, p)
            if prev not in generators or nxt not in generators:
                raise RefineExhausted("pair bulge wedge leaks its corridor")

    # pad "middles": pad points whose both ring neighbors belong to the same
    # pad — their caps stay inside the pad's own atom
    owner: dict[RationalPoint, int] = {}
    for j in range(3):
        for p in pads[j]:
            owner[p] = j
    middles: list[list[RationalPoint]] = [[], [], []]
    size = len(ring)
    for idx, p in enumerate(ring):
        j = owner.get(p)
        if j is None:
            continue
        if owner.get(ring[idx - 1]) == j and owner.get(ring[(idx + 1) % size]) == j:
            middles[j].append(p)
    for j in range(3):
        if len(middles[j]) < facet_extras[j]:
            raise RefineExhausted(
                f"pad {j} offers {len(middles[j])} usable corners for "
                f"{facet_extras[j]} planned codewords"
            )

    assigned = {
        jk: any(sig == frozenset(jk) for sig in signatures)
        for jk in ((0, 1), (1, 2), (0, 2))
    }

    def single_set(j: int) -> ConvexPolygon:
        other = [jk for jk in ((0, 1), (1, 2), (0, 2)) if j in jk]
        if all(assigned[jk] for jk in other):
            # both corridors at this pad exist as neuron sets: take their
            # lens-shaped intersection so the overlap region keeps realizing
            # the facet's word instead of a spurious union
            return corridors[other[0]].intersect(corridors[other[1]])
        return ConvexPolygon.from_vertices(pads[j])

    singles = {j: single_set(j) for j in range(3)}
    polygons = []
    for sig in signatures:
        if len(sig) == 3:
            polygons.append(universe)
        elif len(sig) == 2:
            polygons.append(corridors[tuple(sorted(sig))])
        elif len(sig) == 1:
            polygons.append(singles[next(iter(sig))])
        else:
            polygons.append(ConvexPolygon.empty())

    sites: list[tuple[int, RationalPoint]] = []
    for j in range(3):
        for p in middles[j][: facet_extras[j]]:
            sites.append((facets[j], p))
    for jk, points in pair_sites.items():
        for p in points:
            sites.append((pairwise[jk], p))
    for p in center_sites:
        sites.append((sigma0, p))

    real = Realization2D(
        code.n, tuple(polygons), universe, cuts=(), sites=tuple(sites)
    )
    wc = _certify(real, base_code, "triangle base")
    return slice(real, extras, base=wc, budget=budget)


__all__ = [
    "Cut",
    "Realization2D",
    "refine_budget",
    "fatten",
    "slice",
    "triangle_construction",
    "DEFAULT_REFINE_BUDGET",
    "REFINE_BUDGET_ENV",
]
