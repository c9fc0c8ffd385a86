"""Bitmask codewords, neural codes, and facet-based simplicial complexes.

A codeword is a plain ``int`` used as a bitmask over neuron ids: bit ``i``
set means neuron ``i`` fires.  The empty codeword is ``0``.  A neural code
always contains the empty codeword; a simplicial complex is stored by its
facets (inclusion-maximal faces), which must form an antichain.

Everything here is immutable and hashable so values can be shared freely,
including across worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import NotAFace, ParseError

EMPTY_WORD = 0

# Bitmasks live in a single machine word; plenty for every construction here.
MAX_NEURONS = 64

_SEPARATORS = (",", " ", "\t")


def word_from_ids(ids: Iterable[int]) -> int:
    """Build a codeword mask from an iterable of neuron ids."""
    mask = 0
    for i in ids:
        if i < 0:
            raise ValueError(f"neuron ids are non-negative, got {i}")
        mask |= 1 << i
    return mask


def word_ids(word: int) -> tuple[int, ...]:
    """Sorted tuple of neuron ids in a codeword mask."""
    ids = []
    i = 0
    w = word
    while w:
        if w & 1:
            ids.append(i)
        w >>= 1
        i += 1
    return tuple(ids)


def is_subword(a: int, b: int) -> bool:
    """True iff codeword ``a`` is a subset of codeword ``b``."""
    return a | b == b


def word_key(word: int) -> tuple[int, ...]:
    """Canonical sort key for codewords: lexicographic on sorted ids.

    The empty codeword sorts first.
    """
    return word_ids(word)


def word_str(word: int, n: int) -> str:
    """Display form of a codeword.

    Compact digit string (``"1356"``) when the code has at most nine
    neurons, comma-separated ids otherwise; the empty codeword prints as
    ``"{}"``.  A comma-mode singleton keeps a trailing comma (``"10,"``)
    so the string parses back as one id rather than a run of digits.
    """
    if word == EMPTY_WORD:
        return "{}"
    ids = word_ids(word)
    if n <= 9:
        return "".join(str(i) for i in ids)
    if len(ids) == 1:
        return f"{ids[0]},"
    return ",".join(str(i) for i in ids)


def iter_subwords(word: int) -> Iterator[int]:
    """All subsets of a codeword mask, the word itself and 0 included."""
    sub = word
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & word


def _maximal(words: Iterable[int]) -> frozenset[int]:
    ws = set(words)
    return frozenset(
        w for w in ws if not any(w != v and is_subword(w, v) for v in ws)
    )


@dataclass(frozen=True)
class NeuralCode:
    """A combinatorial neural code on ``n`` neurons.

    The empty codeword is always a member and is added on construction if
    missing.  Every codeword must fit inside ``n`` bits.
    """

    n: int
    words: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_NEURONS:
            raise ValueError(f"neuron count must be in 0..{MAX_NEURONS}, got {self.n}")
        words = frozenset(self.words) | {EMPTY_WORD}
        for w in words:
            if w < 0 or w >> self.n:
                raise ValueError(
                    f"codeword {bin(w)} does not fit in {self.n} neurons"
                )
        object.__setattr__(self, "words", words)

    def sorted_words(self) -> list[int]:
        return sorted(self.words, key=word_key)

    def word_strs(self) -> list[str]:
        return [word_str(w, self.n) for w in self.sorted_words()]

    def __contains__(self, word: int) -> bool:
        return word in self.words

    def __str__(self) -> str:
        return "{" + ", ".join(self.word_strs()) + "}"


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex stored by its facets.

    Facets must be an antichain (no facet contains another); construction
    rejects anything else.  The complex whose only face is the empty set is
    represented by the single facet ``0``.
    """

    n: int
    facets: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_NEURONS:
            raise ValueError(f"vertex count must be in 0..{MAX_NEURONS}, got {self.n}")
        facets = sorted(set(self.facets), key=word_key)
        if not facets:
            facets = [EMPTY_WORD]
        for f in facets:
            if f < 0 or f >> self.n:
                raise ValueError(f"facet {bin(f)} does not fit in {self.n} vertices")
        for f in facets:
            for g in facets:
                if f != g and is_subword(f, g):
                    raise ValueError(
                        f"facets must form an antichain: "
                        f"{word_str(f, self.n)} is contained in {word_str(g, self.n)}"
                    )
        object.__setattr__(self, "facets", tuple(facets))

    @property
    def vertices(self) -> int:
        """Mask of all vertices that appear in some facet."""
        mask = 0
        for f in self.facets:
            mask |= f
        return mask

    def is_face(self, sigma: int) -> bool:
        return any(is_subword(sigma, f) for f in self.facets)

    def iter_faces(self) -> Iterator[int]:
        """All faces, deduplicated, in canonical order."""
        seen: set[int] = set()
        for f in self.facets:
            for sub in iter_subwords(f):
                seen.add(sub)
        yield from sorted(seen, key=word_key)

    def facet_strs(self) -> list[str]:
        return [word_str(f, self.n) for f in self.facets]

    def __str__(self) -> str:
        return "<" + ", ".join(self.facet_strs()) + ">"


def maximal_codewords(code: NeuralCode) -> frozenset[int]:
    """Inclusion-maximal codewords of a code.

    The empty codeword is maximal only for the code ``{∅}``.
    """
    return _maximal(code.words)


def closure(code: NeuralCode) -> SimplicialComplex:
    """Smallest simplicial complex containing every codeword.

    Its facets are exactly the maximal codewords.
    """
    return SimplicialComplex(code.n, tuple(maximal_codewords(code)))


def link(cpx: SimplicialComplex, sigma: int) -> SimplicialComplex:
    """Link of a face: ``{ω : ω ∩ σ = ∅ and ω ∪ σ a face}``.

    The facets of the link are ``F \\ σ`` over facets ``F ⊇ σ``; these are
    automatically an antichain because the facets of ``cpx`` are.
    """
    if not cpx.is_face(sigma):
        raise NotAFace(
            f"{word_str(sigma, cpx.n)} is not a face of {cpx}"
        )
    stripped = tuple(f & ~sigma for f in cpx.facets if is_subword(sigma, f))
    return SimplicialComplex(cpx.n, stripped)


def nerve(sets: Sequence[int], n_hint: int | None = None) -> SimplicialComplex:
    """Nerve of a finite family of codeword masks.

    Vertex ``i`` of the nerve stands for ``sets[i]``; a subset of indices is
    a face iff the corresponding masks have nonempty common intersection.
    Indices whose set is empty contribute no faces at all.
    """
    m = len(sets)
    if m > 20:
        raise ValueError(f"nerve of {m} sets is above the supported size")
    faces = []
    for idx_mask in range(1, 1 << m):
        inter = ~0
        ok = True
        rest = idx_mask
        i = 0
        while rest:
            if rest & 1:
                inter &= sets[i]
                if inter == 0:
                    ok = False
                    break
            rest >>= 1
            i += 1
        if ok:
            faces.append(idx_mask)
    return SimplicialComplex(m, tuple(_maximal(faces)))


def facet_intersections(cpx: SimplicialComplex) -> frozenset[int]:
    """All intersections of two or more facets, deduplicated.

    May contain the empty codeword.  Empty for a single-facet complex.
    """
    k = len(cpx.facets)
    out: set[int] = set()
    for subset in range(1, 1 << k):
        if subset & (subset - 1) == 0:
            continue  # singletons are not intersections of >= 2 facets
        inter = ~0
        rest = subset
        i = 0
        while rest:
            if rest & 1:
                inter &= cpx.facets[i]
            rest >>= 1
            i += 1
        out.add(inter)
    return frozenset(out)


def is_max_intersection_complete(code: NeuralCode) -> bool:
    """True iff every intersection of maximal codewords is itself a codeword."""
    return facet_intersections(closure(code)) <= code.words


# ---------------------------------------------------------------------------
# Text format
#
# One codeword per line.  Tokens are neuron ids separated by spaces or
# commas; a line consisting of a single run of digits is read as one id per
# digit ("1356" means {1,3,5,6}).  "#" starts a comment, blank lines are
# skipped, and the empty codeword is implied (it may also be written "{}").
# A multi-digit id on its own line needs a separator to disambiguate, e.g.
# "12," for the singleton {12}.
# ---------------------------------------------------------------------------


def parse_word(text: str, line: int | None = None) -> int:
    """Parse a single codeword written in the text format."""
    stripped = text.strip()
    if stripped in ("{}", ""):
        return EMPTY_WORD
    if any(sep in stripped for sep in _SEPARATORS):
        ids = []
        for col, token in enumerate(stripped.replace(",", " ").split()):
            if not token.isdigit():
                raise ParseError(f"bad neuron id {token!r}", line)
            value = int(token)
            if value >= MAX_NEURONS:
                raise ParseError(
                    f"neuron id {value} out of range 0..{MAX_NEURONS - 1}", line
                )
            ids.append(value)
        return word_from_ids(ids)
    if not stripped.isdigit():
        raise ParseError(f"bad codeword {stripped!r}", line)
    if len(stripped) == 1:
        return word_from_ids([int(stripped)])
    return word_from_ids(int(ch) for ch in stripped)


def parse_code(text: str, n: int | None = None) -> NeuralCode:
    """Parse code text into a :class:`NeuralCode`.

    The neuron count defaults to one past the largest id mentioned.
    """
    words = set()
    top = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        w = parse_word(body, line=lineno)
        top |= w
        words.add(w)
    inferred = top.bit_length()
    if n is None:
        n = inferred
    elif n < inferred:
        raise ParseError(f"codewords need {inferred} neurons but n={n} was declared")
    return NeuralCode(n, frozenset(words))


def format_code(code: NeuralCode) -> str:
    """Render a code in the text format, one codeword per line."""
    lines = []
    for w in code.sorted_words():
        if w == EMPTY_WORD:
            continue  # implied
        ids = word_ids(w)
        if code.n <= 9:
            lines.append("".join(str(i) for i in ids))
        else:
            lines.append(" ".join(str(i) for i in ids))
    lines.append("")
    return "\n".join(lines)
