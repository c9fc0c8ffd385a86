"""Open-interval realizations on the line and exact 1-D code extraction.

The constructions here realize minimal codes of complexes with at most three
facets.  For three facets satisfying the path condition with witness
``(a, b, c)``, each neuron's interval comes from a fixed case table over
``(0,5)``; one- and two-facet complexes use the analogous shorter tables.
The extraction side evaluates membership at every interval endpoint, at the
midpoint of every consecutive endpoint pair, and one step beyond each
extreme — endpoint atoms can be single points, so sampling endpoints is not
optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .codes import EMPTY_WORD, NeuralCode, SimplicialComplex, word_str
from .errors import InvalidWitness, ParseError, WrongFacetCount
from .topology import PathOfFacetsWitness, path_of_facets, validate_witness

SCHEMA = "convexa/1"


@dataclass(frozen=True)
class RationalInterval:
    """Open interval ``(lo, hi)``; any degenerate input normalizes to empty."""

    lo: Fraction | None = None
    hi: Fraction | None = None

    def __post_init__(self) -> None:
        lo, hi = self.lo, self.hi
        if lo is not None and hi is not None and lo < hi:
            return
        object.__setattr__(self, "lo", None)
        object.__setattr__(self, "hi", None)

    @classmethod
    def open(cls, lo, hi) -> RationalInterval:
        return cls(Fraction(lo), Fraction(hi))

    @classmethod
    def empty(cls) -> RationalInterval:
        return cls()

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    def contains(self, x: Fraction) -> bool:
        return self.lo is not None and self.lo < x < self.hi


@dataclass(frozen=True)
class Realization1D:
    """One open rational interval (possibly empty) per neuron."""

    n: int
    intervals: tuple[RationalInterval, ...]

    def __post_init__(self) -> None:
        if len(self.intervals) != self.n:
            raise ValueError(
                f"expected {self.n} intervals, got {len(self.intervals)}"
            )

    def endpoints(self) -> list[Fraction]:
        out: set[Fraction] = set()
        for iv in self.intervals:
            if not iv.is_empty:
                out.add(iv.lo)
                out.add(iv.hi)
        return sorted(out)

    def to_json(self) -> dict:
        sets = [
            None if iv.is_empty else {"lo": str(iv.lo), "hi": str(iv.hi)}
            for iv in self.intervals
        ]
        return {"schema": SCHEMA, "dim": 1, "n": self.n, "sets": sets}

    @classmethod
    def from_json(cls, doc: dict) -> Realization1D:
        try:
            if doc.get("dim") != 1:
                raise ParseError("expected a dim-1 realization document")
            n = int(doc["n"])
            sets = doc["sets"]
            if not isinstance(sets, list) or len(sets) != n:
                raise ParseError("'sets' must list one entry per neuron")
            intervals = []
            for entry in sets:
                if entry is None:
                    intervals.append(RationalInterval.empty())
                else:
                    intervals.append(
                        RationalInterval.open(
                            Fraction(entry["lo"]), Fraction(entry["hi"])
                        )
                    )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed 1-D realization: {exc}") from None
        return cls(n, tuple(intervals))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _membership(r: Realization1D, x: Fraction) -> int:
    word = 0
    for i, iv in enumerate(r.intervals):
        if iv.contains(x):
            word |= 1 << i
    return word


def sample_points(r: Realization1D) -> list[Fraction]:
    """Endpoints, midpoints of consecutive endpoints, and one point beyond
    each extreme, in increasing order."""
    endpoints = r.endpoints()
    if not endpoints:
        return [Fraction(0)]
    samples = [endpoints[0] - 1]
    for left, right in zip(endpoints, endpoints[1:]):
        samples.append(left)
        samples.append((left + right) / 2)
    samples.append(endpoints[-1])
    samples.append(endpoints[-1] + 1)
    return samples


def realized_code_1d(r: Realization1D) -> NeuralCode:
    """The exact code realized by the intervals (empty word always included)."""
    words = {EMPTY_WORD}
    for x in sample_points(r):
        words.add(_membership(r, x))
    return NeuralCode(r.n, frozenset(words))


def region_sequence(r: Realization1D) -> tuple[int, ...]:
    """Left-to-right codewords of the realization with equal neighbors merged.

    The sequence starts and ends with the empty word (the regions beyond the
    leftmost and rightmost endpoints).
    """
    seq: list[int] = []
    for x in sample_points(r):
        word = _membership(r, x)
        if not seq or seq[-1] != word:
            seq.append(word)
    return tuple(seq)


def open_atom_slots(r: Realization1D) -> list[tuple[int, Fraction, Fraction]]:
    """(codeword, lo, hi) for every open interval between consecutive
    endpoints, with the membership constant on the whole open interval.

    Used to pick interior anchor abscissae for a codeword's region; endpoint
    atoms are deliberately not offered as slots.
    """
    endpoints = r.endpoints()
    slots = []
    for left, right in zip(endpoints, endpoints[1:]):
        mid = (left + right) / 2
        slots.append((_membership(r, mid), left, right))
    return slots


def _table_interval(case: int) -> RationalInterval:
    table = {
        0: RationalInterval.open(0, 5),  # in all three facets
        1: RationalInterval.open(0, 3),  # in F_a and F_b only
        2: RationalInterval.open(2, 5),  # in F_b and F_c only
        3: RationalInterval.open(0, 1),  # in F_a only
        4: RationalInterval.open(2, 3),  # in F_b only
        5: RationalInterval.open(4, 5),  # in F_c only
    }
    return table[case]


def construct_min_code_1d(
    cpx: SimplicialComplex, witness: PathOfFacetsWitness
) -> Realization1D:
    """Interval realization of the minimal code of a three-facet complex
    satisfying the path condition.

    With facets relabeled ``F_a, F_b, F_c`` by the witness so that
    ``(F_a ∩ F_c) \\ F_b = ∅``, each neuron gets:

    ====================  ========
    neuron lies in        interval
    ====================  ========
    F_a ∩ F_b ∩ F_c       (0, 5)
    (F_a ∩ F_b) \\ F_c     (0, 3)
    (F_b ∩ F_c) \\ F_a     (2, 5)
    F_a only              (0, 1)
    F_b only              (2, 3)
    F_c only              (4, 5)
    ====================  ========
    """
    if len(cpx.facets) != 3:
        raise WrongFacetCount(
            f"the interval table needs exactly 3 facets, got {len(cpx.facets)}"
        )
    validate_witness(cpx, witness)
    fa, fb, fc = witness.facets(cpx)
    intervals = []
    for i in range(cpx.n):
        bit = 1 << i
        in_a, in_b, in_c = bool(fa & bit), bool(fb & bit), bool(fc & bit)
        if in_a and in_b and in_c:
            intervals.append(_table_interval(0))
        elif in_a and in_b:
            intervals.append(_table_interval(1))
        elif in_b and in_c:
            intervals.append(_table_interval(2))
        elif in_a and in_c:
            raise InvalidWitness(
                f"neuron {i} lies in F_a ∩ F_c but not F_b; witness is invalid"
            )
        elif in_a:
            intervals.append(_table_interval(3))
        elif in_b:
            intervals.append(_table_interval(4))
        elif in_c:
            intervals.append(_table_interval(5))
        else:
            intervals.append(RationalInterval.empty())
    return Realization1D(cpx.n, tuple(intervals))


def construct_base_1d(
    cpx: SimplicialComplex, witness: PathOfFacetsWitness | None = None
) -> Realization1D:
    """Interval realization of the minimal code for any complex with at most
    three facets (three facets require the path condition).

    One facet maps every neuron to (0,1); two facets use (0,3) for the
    intersection, (0,1) for the first facet only, (2,3) for the second.
    If ``witness`` is omitted for a three-facet complex it is recomputed;
    :class:`InvalidWitness` is raised when the path condition fails.
    """
    facets = [f for f in cpx.facets if f != EMPTY_WORD]
    k = len(facets)
    if k == 0:
        return Realization1D(cpx.n, tuple(RationalInterval.empty() for _ in range(cpx.n)))
    if k == 1:
        intervals = [
            RationalInterval.open(0, 1) if facets[0] & (1 << i) else RationalInterval.empty()
            for i in range(cpx.n)
        ]
        return Realization1D(cpx.n, tuple(intervals))
    if k == 2:
        f1, f2 = facets
        intervals = []
        for i in range(cpx.n):
            bit = 1 << i
            if f1 & bit and f2 & bit:
                intervals.append(RationalInterval.open(0, 3))
            elif f1 & bit:
                intervals.append(RationalInterval.open(0, 1))
            elif f2 & bit:
                intervals.append(RationalInterval.open(2, 3))
            else:
                intervals.append(RationalInterval.empty())
        return Realization1D(cpx.n, tuple(intervals))
    if k == 3:
        if witness is None:
            witness = path_of_facets(cpx)
            if witness is None:
                raise InvalidWitness(
                    "three facets without the path condition have no interval"
                    " realization of the minimal code"
                )
        return construct_min_code_1d(cpx, witness)
    raise WrongFacetCount(f"at most 3 facets supported, got {k}")


def witnesses_1d(r: Realization1D) -> dict[int, Fraction]:
    """One witness abscissa per realized codeword.

    The sample walk always visits the empty word (the point beyond the left
    extreme, or the origin when every interval is empty).
    """
    found: dict[int, Fraction] = {}
    for x in sample_points(r):
        found.setdefault(_membership(r, x), x)
    return found


def describe_regions(r: Realization1D) -> str:
    """Human-readable left-to-right region labels, e.g. for CLI reports."""
    return " | ".join(word_str(w, r.n) for w in region_sequence(r))


__all__ = [
    "RationalInterval",
    "Realization1D",
    "construct_min_code_1d",
    "construct_base_1d",
    "realized_code_1d",
    "region_sequence",
    "open_atom_slots",
    "sample_points",
    "witnesses_1d",
    "describe_regions",
]
