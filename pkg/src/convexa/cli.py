"""Command-line surface: analyze, realize, verify, and enumerate.

Exit codes form a small contract for shell pipelines:

* 0 — success (analyze: convex; verify: realization matches the target).
* 2 — unreadable or malformed input, or enumeration bounds violated.
* 3 — analyze/realize: the code is not convex; verify: mismatch.
* 4 — the code has four or more maximal codewords (out of scope).
* 5 — ``realize --dim 1`` was requested but the interval construction does
  not realize the code.

Codeword JSON fields use the same display strings as terminal output
(digit strings for small neuron ids, ``{}`` for the empty word); all
coordinates are exact rationals rendered as strings.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import random
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, permutations
from pathlib import Path

from .codes import (
    EMPTY_WORD,
    NeuralCode,
    SimplicialComplex,
    closure,
    facet_intersections,
    parse_code,
    parse_word,
    word_key,
    word_str,
)
from .decision import (
    CONVEX,
    DIM_EXACTLY_1,
    NOT_CONVEX,
    PATH_CASE,
    UNSUPPORTED,
    Verdict,
    decide,
)
from .errors import ConvexaError, ParseError, TooManyFacets, WrongFacetCount
from .realize1d import (
    Realization1D,
    construct_base_1d,
    realized_code_1d,
    witnesses_1d,
)
from .realize2d import Realization2D, fatten, slice as slice_extras, triangle_construction
from .topology import (
    STATUS_OBSTRUCTION,
    local_obstructions,
    minimal_code,
    path_of_facets,
)
from .verifier2d import WitnessedCode, realized_code_2d

SCHEMA = "convexa/1"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_CONVEX = 3
EXIT_UNSUPPORTED = 4
EXIT_DIM1_INFEASIBLE = 5

ENUMERATE_MAX_NEURONS = 6
ENUMERATE_MAX_FACETS = 3
#: Intermediate-code budget per complex before switching to seeded sampling.
ENUMERATE_SAMPLE_CAP = 1024


def _words_out(words, n: int) -> list[str]:
    return [word_str(w, n) for w in sorted(words, key=word_key)]


def _load_code(path: str, *, as_json: bool = False) -> NeuralCode:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    if not as_json:
        return parse_code(text)
    try:
        doc = json.loads(text)
        entries = doc["code"]
        words = {parse_word(str(entry)) for entry in entries}
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed JSON code document: {exc}") from None
    words.add(EMPTY_WORD)
    top = 0
    for w in words:
        top |= w
    n = max(doc.get("n", 0), top.bit_length())
    return NeuralCode(n, frozenset(words))


# --- realization building (shared by analyze --realize and realize) --------


class _Dim1Infeasible(ConvexaError):
    """The 1-D interval construction does not realize this code."""


def _build_1d(code: NeuralCode, verdict: Verdict) -> tuple[Realization1D, dict]:
    plan = verdict.plan
    if plan is None or plan.strategy != PATH_CASE or verdict.dim_report != DIM_EXACTLY_1:
        raise _Dim1Infeasible(
            "the interval construction realizes only the minimal code of a"
            " path-ordered complex; this code needs dimension 2"
        )
    base = construct_base_1d(closure(code), plan.witness)
    certificate = {
        "schema": SCHEMA,
        "code": _words_out(realized_code_1d(base).words, base.n),
        "witnesses": {
            word_str(w, base.n): [str(x)] for w, x in witnesses_1d(base).items()
        },
    }
    return base, certificate


def _build_2d(code: NeuralCode, verdict: Verdict) -> tuple[Realization2D, WitnessedCode]:
    plan = verdict.plan
    if plan.strategy == PATH_CASE:
        base = construct_base_1d(closure(code), plan.witness)
        needed = Counter(parent for _, parent in plan.extras)
        real = fatten(base, needed)
        real = slice_extras(real, plan.extras)
    else:
        real = triangle_construction(closure(code), code)
    return real, realized_code_2d(real.polygons, real.n)


def _build_realization(code: NeuralCode, verdict: Verdict, dim: str):
    """Returns (kind, realization, certificate_json, witnessed_code_or_None)."""
    if dim in ("auto", "1"):
        try:
            real, certificate = _build_1d(code, verdict)
            return "1", real, certificate, None
        except _Dim1Infeasible:
            if dim == "1":
                raise
    real, wc = _build_2d(code, verdict)
    return "2", real, wc.to_json(), wc


# --- analyze ----------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    code = _load_code(args.path, as_json=args.json)
    cpx = closure(code)
    verdict = decide(code)

    witness = None
    if len(cpx.facets) == 3:
        witness = path_of_facets(cpx)
    try:
        mincode = minimal_code(cpx)
    except TooManyFacets:
        mincode = None

    reports = local_obstructions(code)
    doc = {
        "schema": SCHEMA,
        "n": code.n,
        "code": _words_out(code.words, code.n),
        "facets": _words_out(cpx.facets, code.n),
        "facet_intersections": _words_out(facet_intersections(cpx), code.n),
        "path_witness": None
        if witness is None
        else {
            "order": [word_str(f, code.n) for f in witness.facets(cpx)],
        },
        "minimal_code": None if mincode is None else _words_out(mincode.words, code.n),
        "obstructions": [
            {
                "sigma": word_str(r.sigma, code.n),
                "status": r.status,
                "reason": r.reason,
            }
            for r in reports
        ],
        "verdict": {
            "outcome": verdict.outcome,
            "dim": verdict.dim_report,
            "strategy": None if verdict.plan is None else verdict.plan.strategy,
        },
        "realization": None,
        "certificate": None,
    }

    if args.realize and verdict.outcome == CONVEX:
        _, real, certificate, _ = _build_realization(code, verdict, "auto")
        doc["realization"] = real.to_json()
        doc["certificate"] = certificate

    print(json.dumps(doc, indent=2))
    if verdict.outcome == CONVEX:
        return EXIT_OK
    if verdict.outcome == NOT_CONVEX:
        return EXIT_NOT_CONVEX
    return EXIT_UNSUPPORTED


# --- realize ----------------------------------------------------------------


def cmd_realize(args: argparse.Namespace) -> int:
    code = _load_code(args.path, as_json=args.json)
    verdict = decide(code)
    if verdict.outcome == NOT_CONVEX:
        sigmas = ", ".join(
            word_str(r.sigma, code.n)
            for r in verdict.obstructions
            if r.status == STATUS_OBSTRUCTION
        )
        print(f"not convex: local obstructions at {sigmas}", file=sys.stderr)
        return EXIT_NOT_CONVEX
    if verdict.outcome == UNSUPPORTED:
        print(
            "unsupported: more than three maximal codewords", file=sys.stderr
        )
        return EXIT_UNSUPPORTED

    try:
        kind, real, certificate, wc = _build_realization(code, verdict, args.dim)
    except _Dim1Infeasible as exc:
        print(f"--dim 1 infeasible: {exc}", file=sys.stderr)
        return EXIT_DIM1_INFEASIBLE

    doc = real.to_json()
    doc["certificate"] = certificate
    print(json.dumps(doc, indent=2))

    if args.svg:
        title = " ".join(_words_out(code.words, code.n))
        if kind == "1":
            from .render import render_realization_1d

            render_realization_1d(real, args.svg, title=title)
        else:
            from .render import render_realization_2d

            render_realization_2d(real, wc, args.svg, title=title)
    return EXIT_OK


# --- verify -----------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        doc = json.loads(Path(args.realization).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {args.realization}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed realization JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("realization document must be a JSON object")

    dim = doc.get("dim")
    if dim == 1:
        real = Realization1D.from_json(doc)
        realized = realized_code_1d(real)
        witness_map = {
            w: [str(x)] for w, x in witnesses_1d(real).items()
        }
    elif dim == 2:
        real = Realization2D.from_json(doc)
        wc = realized_code_2d(real.polygons, real.n)
        realized = wc.code
        witness_map = {
            w: [str(p.x), str(p.y)] for w, p in wc.witnesses.items()
        }
    else:
        raise ParseError(f"unsupported realization dim: {dim!r}")

    target = _load_code(args.code)
    n = max(real.n, target.n)
    missing = sorted(target.words - realized.words, key=word_key)
    extra = sorted(realized.words - target.words, key=word_key)
    report = {
        "schema": SCHEMA,
        "match": not missing and not extra,
        "realized": _words_out(realized.words, n),
        "target": _words_out(target.words, n),
        "missing": [word_str(w, n) for w in missing],
        "extra": [
            {"word": word_str(w, n), "witness": witness_map[w]} for w in extra
        ],
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK if report["match"] else EXIT_NOT_CONVEX


# --- enumerate ---------------------------------------------------------------


def canonical_antichains(n: int, k: int) -> list[tuple[int, ...]]:
    """All antichains of exactly ``k`` nonempty codewords on ``n`` neurons,
    one representative per relabeling orbit, in sorted order."""
    tables = []
    for perm in permutations(range(n)):
        table = [0] * (1 << n)
        for w in range(1 << n):
            image = 0
            bits = w
            while bits:
                low = bits & -bits
                image |= 1 << perm[low.bit_length() - 1]
                bits ^= low
            table[w] = image
        tables.append(table)

    out = []
    words = range(1, 1 << n)
    for combo in combinations(words, k):
        ok = True
        for a, b in combinations(combo, 2):
            if a & b == a or a & b == b:
                ok = False
                break
        if not ok:
            continue
        canon = True
        for table in tables:
            image = tuple(sorted(table[w] for w in combo))
            if image < combo:
                canon = False
                break
        if canon:
            out.append(combo)
    return out


def _enumerate_one(
    facets: tuple[int, ...], n: int, seed: int, out_dir: Path
) -> dict:
    cpx = SimplicialComplex(n, frozenset(facets))
    mincode = minimal_code(cpx)
    witness = path_of_facets(cpx) if len(facets) == 3 else None
    faces = set(cpx.iter_faces())
    free = sorted(faces - mincode.words, key=word_key)
    total = 1 << len(free)

    label = ";".join(word_str(f, n) for f in sorted(facets, key=word_key))
    digest = hashlib.sha256(f"n={n}|{label}".encode()).hexdigest()[:12]

    sampled = total > ENUMERATE_SAMPLE_CAP and n > 4
    if sampled:
        rng = random.Random(f"{seed}:{label}")
        picks = rng.sample(range(total), ENUMERATE_SAMPLE_CAP)
    else:
        picks = range(total)

    convex = 0
    evaluated = 0
    for mask in picks:
        words = set(mincode.words)
        for j, face in enumerate(free):
            if mask >> j & 1:
                words.add(face)
        verdict = decide(NeuralCode(n, frozenset(words)), use_dim_oracle=False)
        evaluated += 1
        if verdict.outcome == CONVEX:
            convex += 1

    row = {
        "hash": digest,
        "n": n,
        "facets": label,
        "num_faces": len(faces),
        "free_faces": len(free),
        "path_of_facets": "-"
        if witness is None and len(facets) != 3
        else ("yes" if witness is not None else "no"),
        "total": total,
        "evaluated": evaluated,
        "convex": convex,
        "not_convex": evaluated - convex,
        "sampled": sampled,
    }
    doc = {
        "schema": SCHEMA,
        "n": n,
        "facets": _words_out(facets, n),
        "min_code": _words_out(mincode.words, n),
        "path_of_facets": None
        if witness is None
        else [word_str(f, n) for f in witness.facets(cpx)],
        "intermediate": {
            "total": total,
            "evaluated": evaluated,
            "convex": convex,
            "not_convex": evaluated - convex,
            "sampled": sampled,
            "seed": seed if sampled else None,
        },
    }
    (out_dir / f"cpx-{digest}.json").write_text(json.dumps(doc, indent=2))
    return row


def cmd_enumerate(args: argparse.Namespace) -> int:
    n, k = args.neurons, args.facets
    if not (1 <= n <= ENUMERATE_MAX_NEURONS) or not (1 <= k <= ENUMERATE_MAX_FACETS):
        print(
            f"bounds: --neurons in 1..{ENUMERATE_MAX_NEURONS},"
            f" --facets in 1..{ENUMERATE_MAX_FACETS}",
            file=sys.stderr,
        )
        return EXIT_PARSE
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    complexes = canonical_antichains(n, k)
    workers = min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(
            pool.map(
                lambda facets: _enumerate_one(facets, n, args.seed, out_dir),
                complexes,
            )
        )
    rows.sort(key=lambda row: row["facets"])

    columns = [
        "hash",
        "n",
        "facets",
        "num_faces",
        "free_faces",
        "path_of_facets",
        "total",
        "evaluated",
        "convex",
        "not_convex",
        "sampled",
    ]
    csv_path = out_dir / "summary.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)

    from .render import render_enumeration_summary

    figure_path = out_dir / "summary.png"
    render_enumeration_summary(
        rows, str(figure_path), title=f"codes between C_min and Δ (n={n}, k={k})"
    )

    for row in rows:
        print(
            f"{row['hash']}  {row['facets']:<24} convex {row['convex']}/"
            f"{row['evaluated']}{' (sampled)' if row['sampled'] else ''}"
        )
    print(f"{len(rows)} complexes -> {csv_path}, {figure_path}")
    return EXIT_OK


# --- entry point -------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexa",
        description=(
            "Decide convexity of neural codes with at most three maximal"
            " codewords and build certified 1-D/2-D open convex realizations."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full decision pipeline, JSON report")
    p.add_argument("path", help="code file (one codeword per line)")
    p.add_argument("--json", action="store_true", help="input is a JSON code document")
    p.add_argument(
        "--realize",
        action="store_true",
        help="embed a certified realization when the code is convex",
    )
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realize", help="emit a certified realization JSON")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="input is a JSON code document")
    p.add_argument("--dim", choices=("auto", "1", "2"), default="auto")
    p.add_argument("--svg", metavar="OUT", help="also render the realization")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="recompute a realization's code and diff")
    p.add_argument("realization", help="realization JSON file")
    p.add_argument("code", help="target code file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="survey intermediate codes per complex")
    p.add_argument("--neurons", type=int, required=True)
    p.add_argument("--facets", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConvexaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
