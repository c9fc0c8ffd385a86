"""Convexity verdicts, dimension reports, and realization plans.

With at most three maximal codewords, a code is convex exactly when it has
no local obstruction, and every convex code here is realizable by convex
open sets in the plane.  ``decide`` reports one of three dimension bounds:

* ``Exactly1`` — the minimal-code interval construction already realizes
  the code on the line;
* ``Exactly2`` — a planar construction exists and the small-``n`` exhaustive
  interval oracle proves no line realization exists;
* ``AtMost2`` — a planar construction exists and dimension 1 was not ruled
  out (or the code is too large for the oracle).

Codes with four or more maximal codewords are out of scope and get the
``Unsupported`` verdict rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import (
    EMPTY_WORD,
    NeuralCode,
    SimplicialComplex,
    closure,
    facet_intersections,
    is_subword,
    word_key,
    word_str,
)
from .errors import NoParent
from .realize1d import construct_base_1d, realized_code_1d
from .topology import (
    STATUS_OBSTRUCTION,
    ObstructionReport,
    PathOfFacetsWitness,
    local_obstructions,
    minimal_code,
    path_of_facets,
)

CONVEX = "Convex"
NOT_CONVEX = "NotConvex"
UNSUPPORTED = "Unsupported"

DIM_EXACTLY_1 = "Exactly1"
DIM_EXACTLY_2 = "Exactly2"
DIM_AT_MOST_2 = "AtMost2"

PATH_CASE = "PathCase"
MAX_INTERSECTION_CASE = "MaxIntersectionCase"

#: Largest neuron count the exhaustive 1-D oracle will attempt.
ORACLE_MAX_NEURONS = 4


@dataclass(frozen=True)
class RealizationPlan:
    """How to realize a convex code: a base code with a known construction,
    plus the remaining codewords as (extra, parent) slicing instructions."""

    strategy: str
    base_code: NeuralCode
    extras: tuple[tuple[int, int], ...]
    witness: PathOfFacetsWitness | None = None


@dataclass(frozen=True)
class Verdict:
    outcome: str
    dim_report: str | None = None
    obstructions: tuple[ObstructionReport, ...] | None = None
    plan: RealizationPlan | None = None


def choose_parents(code: NeuralCode, base: NeuralCode) -> tuple[tuple[int, int], ...]:
    """Assign each codeword of ``code`` outside ``base`` a parent in ``base``.

    The parent is a minimum-cardinality member of ``base`` containing the
    extra codeword; ties break lexicographically on the parent's sorted
    members.  Extras are returned in lexicographic order.
    """
    extras = []
    pool = [w for w in base.words if w != EMPTY_WORD]
    for tau in sorted(code.words - base.words, key=word_key):
        candidates = [w for w in pool if is_subword(tau, w)]
        if not candidates:
            raise NoParent(
                f"no member of the base code contains {word_str(tau, code.n)}"
            )
        parent = min(candidates, key=lambda w: (w.bit_count(), word_key(w)))
        extras.append((tau, parent))
    return tuple(extras)


def _facet_count(cpx: SimplicialComplex) -> int:
    return sum(1 for f in cpx.facets if f != EMPTY_WORD)


def decide(code: NeuralCode, *, use_dim_oracle: bool = True) -> Verdict:
    """Convexity verdict for a code with at most three maximal codewords.

    Returns ``Unsupported`` for four or more maximal codewords.  Otherwise
    the code is convex iff the obstruction scan finds nothing; convex codes
    get a realization plan (path case, or the triangle-pad case when three
    facets fail the path condition) and a dimension report.

    ``use_dim_oracle=False`` skips the exhaustive 1-D oracle so the
    ``Exactly2`` report is never produced; useful in bulk enumeration where
    the oracle's cost per code is unwanted.
    """
    cpx = closure(code)
    k = _facet_count(cpx)
    if k >= 4:
        return Verdict(UNSUPPORTED)

    reports = local_obstructions(code)
    if any(r.status == STATUS_OBSTRUCTION for r in reports):
        return Verdict(NOT_CONVEX, obstructions=reports)

    witness = path_of_facets(cpx) if k == 3 else None
    if k == 3 and witness is None:
        strategy = MAX_INTERSECTION_CASE
    else:
        strategy = PATH_CASE
    base_code = minimal_code(cpx)
    plan = RealizationPlan(strategy, base_code, choose_parents(code, base_code), witness)

    dim = None
    if strategy == PATH_CASE:
        base = construct_base_1d(cpx, witness)
        if realized_code_1d(base) == code:
            dim = DIM_EXACTLY_1
    if dim is None:
        dim = DIM_AT_MOST_2
        if use_dim_oracle and brute_force_1d_realizable(code) is False:
            dim = DIM_EXACTLY_2
    return Verdict(CONVEX, dim_report=dim, plan=plan)


def _interval_occupancies(n: int) -> list[int]:
    """Occupancy bitmasks of all candidate open intervals on the endpoint
    grid ``{1..2n}``, over the sample values ``1/2, 1, 3/2, ..., 2n + 1/2``.

    Sample ``k`` (0-based) has value ``(k+1)/2``; the open interval
    ``(lo, hi)`` covers samples with ``2*lo < k+1 < 2*hi``.  Index 0 of the
    result is the empty set.
    """
    masks = [0]
    top = 2 * n
    for lo in range(1, top):
        for hi in range(lo + 1, top + 1):
            masks.append(((1 << (2 * (hi - lo) - 1)) - 1) << (2 * lo))
    return masks


def brute_force_1d_realizable(code: NeuralCode) -> bool | None:
    """Exhaustively decide open-interval realizability for tiny codes.

    Returns ``None`` when ``code.n > 4`` (the search space is only tractable,
    and only needed, at desk scale).  Otherwise returns True iff some
    assignment of open intervals with endpoints in ``{1..2n}`` (empty
    allowed) realizes exactly the code.  The grid is exhaustive because a
    realization's code depends only on the endpoint order, and ``2n`` grid
    points express every order type of ``n`` intervals.
    """
    if code.n > ORACLE_MAX_NEURONS:
        return None
    return _search_intervals(code) is not None


def _search_intervals(code: NeuralCode) -> tuple[int, ...] | None:
    """Backtracking core of the oracle; returns one occupancy assignment
    realizing the code, or None."""
    n = code.n
    if n == 0:
        return () if code.words == frozenset({EMPTY_WORD}) else None
    words = sorted(code.words)
    word_set = set(words)
    active = 0
    for w in words:
        active |= w
    samples = 4 * n + 1
    candidates = _interval_occupancies(n)
    full_mask = (1 << samples) - 1

    def assigned_profiles(depth: int) -> set[int]:
        mask = (1 << (depth + 1)) - 1
        return {w & mask for w in words}

    membership = [0] * samples
    chosen: list[int] = [0] * n

    def dfs(i: int) -> bool:
        if i == n:
            realized = set(membership)
            realized.add(EMPTY_WORD)
            if realized != word_set:
                return False
            # normalize away translations: some nonempty interval must
            # start at grid point 1 (occupancy bit 2 is sample value 3/2,
            # the first sample inside an interval with lo = 1)
            nonempty = [m for m in chosen if m]
            return not nonempty or any(m & 0b100 for m in nonempty)
        allowed = assigned_profiles(i)
        bit = 1 << i
        # a neuron that appears in some codeword cannot have an empty set
        # (the codeword would then never be realized), so skip that branch
        options = candidates[1:] if active & bit else [0]
        for occ in options:
            ok = True
            for s in range(samples):
                m = membership[s]
                if occ >> s & 1:
                    m |= bit
                if m not in allowed:
                    ok = False
                    break
            if not ok:
                continue
            saved = membership.copy()
            for s in range(samples):
                if occ >> s & 1:
                    membership[s] |= bit
            chosen[i] = occ
            if dfs(i + 1):
                return True
            membership[:] = saved
        return False

    if dfs(0):
        return tuple(chosen)
    return None


def oracle_witness_intervals(code: NeuralCode) -> tuple[tuple[int, int] | None, ...] | None:
    """Endpoint pairs of one realizing assignment found by the oracle
    (None entries for empty intervals), or None when not realizable or too
    large.  Exposed for cross-checking the oracle in tests."""
    if code.n > ORACLE_MAX_NEURONS:
        return None
    occs = _search_intervals(code)
    if occs is None:
        return None
    n = code.n
    lookup: dict[int, tuple[int, int] | None] = {0: None}
    top = 2 * n
    for lo in range(1, top):
        for hi in range(lo + 1, top + 1):
            lookup.setdefault(((1 << (2 * (hi - lo) - 1)) - 1) << (2 * lo), (lo, hi))
    return tuple(lookup[occ] for occ in occs)


__all__ = [
    "CONVEX",
    "NOT_CONVEX",
    "UNSUPPORTED",
    "DIM_EXACTLY_1",
    "DIM_EXACTLY_2",
    "DIM_AT_MOST_2",
    "PATH_CASE",
    "MAX_INTERSECTION_CASE",
    "ORACLE_MAX_NEURONS",
    "RealizationPlan",
    "Verdict",
    "decide",
    "choose_parents",
    "brute_force_1d_realizable",
    "oracle_witness_intervals",
]
