"""Local obstructions, path-of-facets witnesses, and minimal codes.

For a code ``C`` with simplicial closure ``Δ``, a local obstruction is a
nonempty face ``σ`` that is an intersection of two or more facets, is not a
codeword, and has a non-contractible link ``Lk_σ(Δ)``.  With at most three
facets every link that matters is homotopy equivalent to the nerve of the
facets containing ``σ`` with ``σ`` removed, and that nerve is a graph, so
contractibility reduces to a tree check: connected with one edge fewer than
vertices.
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
from .errors import (
    InvalidWitness,
    NotAFace,
    NotAnIntersection,
    TooManyFacets,
    WrongFacetCount,
)

STATUS_OBSTRUCTION = "obstruction"
STATUS_SATISFIED = "satisfied"
STATUS_UNDETERMINED = "undetermined"

REASON_CODEWORD = "codeword"
REASON_LINK_TREE = "link nerve is a tree"
REASON_LINK_DISCONNECTED = "link nerve is disconnected"
REASON_LINK_CYCLE = "link nerve is a cycle"
REASON_TOO_MANY_CONTAINING = "more than three facets contain sigma"


@dataclass(frozen=True)
class PathOfFacetsWitness:
    """Relabeling ``(a, b, c)`` of three facets so that ``(F_a ∩ F_c) \\ F_b``
    is empty while the other two pairwise differences are not.

    ``a``, ``b``, ``c`` index into ``cpx.facets`` in its canonical order.
    """

    a: int
    b: int
    c: int

    def facets(self, cpx: SimplicialComplex) -> tuple[int, int, int]:
        return cpx.facets[self.a], cpx.facets[self.b], cpx.facets[self.c]


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of checking one candidate face ``sigma``."""

    sigma: int
    status: str
    reason: str


def path_of_facets(cpx: SimplicialComplex) -> PathOfFacetsWitness | None:
    """Witness for the path-of-facets condition, or None when it fails.

    Requires exactly three facets.  The condition holds iff exactly one of
    the three sets ``(F_i ∩ F_j) \\ F_k`` is empty; the empty pair becomes
    ``(F_a, F_c)`` and the remaining facet ``F_b``.
    """
    if len(cpx.facets) != 3:
        raise WrongFacetCount(
            f"path-of-facets needs exactly 3 facets, got {len(cpx.facets)}"
        )
    f = cpx.facets
    empties = []
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if f[i] & f[j] & ~f[k] == 0:
            empties.append((i, j, k))
    if len(empties) != 1:
        return None
    a, c, b = empties[0]
    return PathOfFacetsWitness(a=a, b=b, c=c)


def validate_witness(cpx: SimplicialComplex, witness: PathOfFacetsWitness) -> None:
    """Raise :class:`InvalidWitness` unless the witness conditions hold."""
    if sorted((witness.a, witness.b, witness.c)) != list(range(len(cpx.facets))):
        raise InvalidWitness(
            f"witness indices {(witness.a, witness.b, witness.c)} do not "
            f"enumerate the facets of {cpx}"
        )
    fa, fb, fc = witness.facets(cpx)
    if fa & fc & ~fb:
        raise InvalidWitness("(F_a ∩ F_c) \\ F_b must be empty")
    if fa & fb & ~fc == 0 or fb & fc & ~fa == 0:
        raise InvalidWitness("the other two pairwise differences must be nonempty")


def _containing_facets(cpx: SimplicialComplex, sigma: int) -> list[int]:
    return [f for f in cpx.facets if is_subword(sigma, f)]


def _nerve_is_tree(stripped: list[int]) -> tuple[bool, str]:
    """Tree test for the nerve of pairwise-stripped facets.

    ``stripped`` holds ``F \\ σ`` for the facets containing ``σ``; with
    ``σ`` equal to their full intersection the top simplex is missing, so
    the nerve is a graph on up to three vertices.
    """
    v = len(stripped)
    edges = [
        (i, j)
        for i in range(v)
        for j in range(i + 1, v)
        if stripped[i] & stripped[j]
    ]
    # connectivity by union-find on at most three vertices
    parent = list(range(v))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = v
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            components -= 1
    if components > 1:
        return False, REASON_LINK_DISCONNECTED
    if len(edges) != v - 1:
        return False, REASON_LINK_CYCLE
    return True, REASON_LINK_TREE


def _link_tree_status(cpx: SimplicialComplex, sigma: int) -> tuple[bool, str]:
    """Contractibility of ``Lk_σ`` via the nerve of containing facets.

    Precondition: ``σ`` is the intersection of the facets containing it and
    at most three facets contain it.
    """
    containing = _containing_facets(cpx, sigma)
    inter = ~0
    for f in containing:
        inter &= f
    if len(containing) < 2 or inter != sigma:
        raise NotAnIntersection(
            f"{word_str(sigma, cpx.n)} is not an intersection of two or more facets"
        )
    return _nerve_is_tree([f & ~sigma for f in containing])


def link_contractible_3max(cpx: SimplicialComplex, sigma: int) -> bool:
    """Decide contractibility of ``Lk_σ(cpx)`` for a facet intersection σ.

    Only supports complexes with at most three facets; the nerve of the
    stripped facets is then a graph and contractible iff it is a tree.
    """
    if len(cpx.facets) > 3:
        raise TooManyFacets(
            f"link contractibility is only decided for <= 3 facets, "
            f"got {len(cpx.facets)}"
        )
    if not cpx.is_face(sigma):
        raise NotAFace(f"{word_str(sigma, cpx.n)} is not a face of {cpx}")
    tree, _ = _link_tree_status(cpx, sigma)
    return tree


def local_obstructions(code: NeuralCode) -> tuple[ObstructionReport, ...]:
    """Scan every nonempty facet intersection of ``closure(code)``.

    A report is ``satisfied`` when sigma is a codeword or its link is
    proven contractible, ``obstruction`` when sigma is missing and its link
    is proven non-contractible, and ``undetermined`` when more than three
    facets contain sigma so the graph analysis does not apply.  With at
    most three facets no report is ever undetermined.
    """
    cpx = closure(code)
    reports = []
    for sigma in sorted(facet_intersections(cpx), key=word_key):
        if sigma == EMPTY_WORD:
            continue
        if sigma in code.words:
            reports.append(ObstructionReport(sigma, STATUS_SATISFIED, REASON_CODEWORD))
            continue
        if len(_containing_facets(cpx, sigma)) > 3:
            reports.append(
                ObstructionReport(
                    sigma, STATUS_UNDETERMINED, REASON_TOO_MANY_CONTAINING
                )
            )
            continue
        tree, reason = _link_tree_status(cpx, sigma)
        status = STATUS_SATISFIED if tree else STATUS_OBSTRUCTION
        reports.append(ObstructionReport(sigma, status, reason))
    return tuple(reports)


def minimal_code(cpx: SimplicialComplex) -> NeuralCode:
    """Smallest code with closure ``cpx`` and no local obstructions.

    Facets, plus every nonempty facet intersection whose link is not
    contractible, plus the empty codeword.
    """
    if len(cpx.facets) > 3:
        raise TooManyFacets(
            f"minimal code is only computed for <= 3 facets, got {len(cpx.facets)}"
        )
    words = set(cpx.facets)
    for sigma in facet_intersections(cpx):
        if sigma == EMPTY_WORD:
            continue
        tree, _ = _link_tree_status(cpx, sigma)
        if not tree:
            words.add(sigma)
    words.add(EMPTY_WORD)
    return NeuralCode(cpx.n, frozenset(words))
