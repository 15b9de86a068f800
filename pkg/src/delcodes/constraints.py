"""Linear constraint families over the 0-1 word-selection variables.

Each family states a fact about valid (or some maximum) single-deletion
codes as linear rows over the variables V_x, one per length-n word:

  C0  per-center packing: every length-(n-1) word is covered at most once
  C1  total size at least |VT_0(n)|
  C2  words with a strictly smaller-surfaced rival are excluded
  C3  the all-zero and all-one words are selected
  C4  light words (weight below n/2) at least match heavy words
  C5  per-weight run-count capacities
  C6  fixed prefix/suffix sections are themselves small codes

C0 alone carves out exactly the valid codes; C1 and C3-C6 narrow or cut the
search space without lowering the best objective, and C2 removes words that
some maximum code avoids. build_model assembles any selection into a model
for the ilp module.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Sequence

from .bitseq import (
    Word,
    WordSet,
    hamming_weight,
    insertion_values,
    runs_of,
    surface_values,
)
from .ilp import IlpModel, LinearConstraint
from .sdecc import KNOWN_SIZES
from .vt import vt0_size

GEN_MAX_N = 14  # same memory guard as the conflict graph

FAMILY_IDS = ("C0", "C1", "C2", "C3", "C4", "C5", "C6")

# (p, q) candidates for the convenience preset, smallest sections first
_PRESET_PQ = ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 2 <= n <= GEN_MAX_N:
        raise ValueError(
            f"constraint generation supports 2 <= n <= {GEN_MAX_N}, got {n!r}"
        )


def _bits(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else "-"


@dataclass(frozen=True)
class ConstraintFamily:
    """One generated family: its id, parameters, and rows."""

    id: str
    parameters: tuple[tuple[str, int], ...]
    constraints: tuple[LinearConstraint, ...]

    def __len__(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True)
class RunClass:
    """Words of one length grouped by weight and run counts."""

    n: int
    w: int
    alpha: int
    beta: int


def run_class_members(rc: RunClass) -> WordSet:
    """All length-n words with weight w, alpha 0-runs, and beta 1-runs.

    Empty whenever the shape is impossible, in particular when the run
    counts differ by more than one or there are more 1-runs than 1s.
    """
    n = rc.n
    if not 1 <= n <= GEN_MAX_N:
        raise ValueError(f"run classes support 1 <= n <= {GEN_MAX_N}, got {n}")
    for name, value in (("w", rc.w), ("alpha", rc.alpha), ("beta", rc.beta)):
        if not 0 <= value <= n:
            raise ValueError(f"{name} must lie in 0..{n}, got {value}")
    members = [
        v
        for v in range(1 << n)
        if hamming_weight(Word(n, v)) == rc.w
        and runs_of(v, n, 0) == rc.alpha
        and runs_of(v, n, 1) == rc.beta
    ]
    return WordSet(n, members)


def gen_c0(n: int) -> ConstraintFamily:
    """Packing rows: each length-(n-1) center is covered at most once.

    One row per center y, over the n+1 words whose surface contains y.
    These rows alone characterize validity; every other family assumes
    they are present.
    """
    _check_n(n)
    rows = []
    for center in range(1 << (n - 1)):
        coverers = sorted(insertion_values(n - 1, center))
        rows.append(LinearConstraint(
            terms=tuple((Word(n, v), 1) for v in coverers),
            sense="<=",
            rhs=1,
            label=f"c0_y{_bits(center, n - 1)}",
        ))
    return ConstraintFamily("C0", (), tuple(rows))


def gen_c1(n: int) -> ConstraintFamily:
    """One row: the selection is at least as large as VT_0(n)."""
    _check_n(n)
    row = LinearConstraint(
        terms=tuple((Word(n, v), 1) for v in range(1 << n)),
        sense=">=",
        rhs=vt0_size(n),
        label="c1",
    )
    return ConstraintFamily("C1", (), (row,))


def dominated_words(n: int) -> set[Word]:
    """Words x for which some y has dS(y) a proper subset of dS(x).

    Such an x can be swapped for its smaller-surfaced rival in any code,
    so some maximum code avoids x entirely. Candidate rivals are words
    sharing a surface center with x (necessary for inclusion); the proper
    subset test is then exact. Equal surfaces do not dominate.
    """
    _check_n(n)
    surfaces = {v: surface_values(n, v) for v in range(1 << n)}
    coverers: dict[int, list[int]] = {}
    for v, surf in surfaces.items():
        for c in surf:
            coverers.setdefault(c, []).append(v)
    out: set[Word] = set()
    for x, sx in surfaces.items():
        rivals = {y for c in sx for y in coverers[c]}
        rivals.discard(x)
        if any(surfaces[y] < sx for y in rivals):
            out.add(Word(n, x))
    return out


def gen_c2(n: int) -> ConstraintFamily:
    """Exclusion rows: every dominated word is fixed to 0."""
    _check_n(n)
    rows = tuple(
        LinearConstraint(
            terms=((w, 1),),
            sense="=",
            rhs=0,
            label=f"c2_x{w}",
        )
        for w in sorted(dominated_words(n))
    )
    return ConstraintFamily("C2", (), rows)


def gen_c3(n: int) -> ConstraintFamily:
    """Fix the all-zero and all-one words into the selection.

    Some maximum code contains both, so the fixing preserves the optimum
    while breaking symmetry. Neither word is ever dominated: each has a
    single-element surface.
    """
    _check_n(n)
    zero = LinearConstraint(
        terms=((Word(n, 0), 1),), sense="=", rhs=1, label="c3_zero"
    )
    one = LinearConstraint(
        terms=((Word(n, (1 << n) - 1), 1),), sense="=", rhs=1, label="c3_one"
    )
    return ConstraintFamily("C3", (), (zero, one))


def gen_c4(n: int) -> ConstraintFamily:
    """Weight balance: light words at least match heavy words.

    Complementing every word maps codes to codes and swaps the two sides,
    so some maximum code satisfies the row. For even n the middle weight
    n/2 appears on both sides and cancels; those words are omitted rather
    than listed with coefficient 0.
    """
    _check_n(n)
    terms = []
    for v in range(1 << n):
        w = Word(n, v)
        doubled = 2 * hamming_weight(w)
        if doubled < n:
            terms.append((w, 1))
        elif doubled > n:
            terms.append((w, -1))
    row = LinearConstraint(
        terms=tuple(terms), sense=">=", rhs=0, label="c4"
    )
    return ConstraintFamily("C4", (), (row,))


def gen_c5(n: int, strengthened: bool = False) -> ConstraintFamily:
    """Run-count capacity rows, one per weight w of the shorter length.

    Deleting a 0 from a weight-w word or a 1 from a weight-(w+1) word
    lands in the weight-w words of length n-1, and a valid code's
    landings are all distinct, so row w reads: every weight-w word
    contributes its 0-run count, every weight-(w+1) word its 1-run
    count, and the total is at most C(n-1, w).

    With strengthened=True (sound only when the all-zero word is fixed
    into the selection, as C3 does), the w=1 row drops the weight-1
    terms: those words conflict with the all-zero word and cannot be
    selected. The right-hand side C(n-1, 1) = n-1 is unchanged.
    """
    _check_n(n)
    by_weight: dict[int, list[tuple[Word, int]]] = {w: [] for w in range(n)}
    for v in range(1 << n):
        word = Word(n, v)
        weight = hamming_weight(word)
        if weight <= n - 1:
            by_weight[weight].append((word, runs_of(v, n, 0)))
        if weight >= 1:
            by_weight[weight - 1].append((word, runs_of(v, n, 1)))
    rows = []
    for w in range(n):
        terms = by_weight[w]
        if strengthened and w == 1:
            terms = [(word, c) for word, c in terms if hamming_weight(word) == 2]
        terms.sort(key=lambda t: t[0])
        rows.append(LinearConstraint(
            terms=tuple(terms),
            sense="<=",
            rhs=comb(n - 1, w),
            label=f"c5_w{w}",
        ))
    params = (("strengthened", int(strengthened)),)
    return ConstraintFamily("C5", params, tuple(rows))


def _known_m(r: int) -> int | None:
    entry = KNOWN_SIZES.get(r)
    return entry[1] if entry else None


def gen_c6(
    n: int,
    p: int,
    q: int,
    m_lookup: Callable[[int], int | None] | None = None,
) -> ConstraintFamily:
    """Section rows: each fixed prefix/suffix holds a short code.

    For every prefix u of length p and suffix v of length q, the middle
    sections of selected words of the form u x v form a valid code of
    length r = n - p - q, so their count is at most the exact maximum
    M(r). m_lookup supplies M; the default reads the embedded known-value
    table and rejects lengths whose maximum is unestablished.
    """
    _check_n(n)
    if p < 0 or q < 0:
        raise ValueError(f"section widths must be nonnegative, got p={p} q={q}")
    if p + q == 0:
        raise ValueError("at least one of p, q must be positive")
    r = n - p - q
    if r < 2:
        raise ValueError(f"middle section must keep length >= 2, got r={r}")
    m_of = m_lookup or _known_m
    m_r = m_of(r)
    if m_r is None:
        raise ValueError(f"exact maximum for length {r} is not known")
    rows = []
    for u in range(1 << p):
        for v in range(1 << q):
            head = u << (r + q)
            tail = v
            terms = tuple(
                (Word(n, head | (x << q) | tail), 1) for x in range(1 << r)
            )
            rows.append(LinearConstraint(
                terms=terms,
                sense="<=",
                rhs=m_r,
                label=f"c6_p{p}q{q}_u{_bits(u, p)}_v{_bits(v, q)}",
            ))
    params = (("p", p), ("q", q))
    return ConstraintFamily("C6", params, tuple(rows))


def c6_preset(n: int) -> tuple[tuple[int, int], ...]:
    """Default C6 parameters: all (p, q) with p + q <= 2 that are usable.

    Usable means the middle keeps length at least 2 and its exact maximum
    is known. Small sections first, prefix before suffix.
    """
    _check_n(n)
    return tuple(
        (p, q)
        for p, q in _PRESET_PQ
        if n - p - q >= 2 and _known_m(n - p - q) is not None
    )


def build_model(
    n: int,
    selected: Iterable[str],
    c6_params: Sequence[tuple[int, int]] | None = None,
) -> IlpModel:
    """Assemble selected families into a maximize-cardinality model.

    C0 must be selected: without the packing rows the variables do not
    describe codes at all. C5 is emitted in its strengthened form exactly
    when C3 is co-selected. C6 uses c6_params when given, otherwise the
    preset; passing c6_params without selecting C6 is rejected.
    """
    _check_n(n)
    ids = {str(s).upper() for s in selected}
    unknown = ids - set(FAMILY_IDS)
    if unknown:
        raise ValueError(f"unknown families: {sorted(unknown)}")
    if "C0" not in ids:
        raise ValueError("C0 is the validity core and must be selected")
    if c6_params is not None and "C6" not in ids:
        raise ValueError("c6_params given but C6 not selected")

    families: list[ConstraintFamily] = [gen_c0(n)]
    if "C1" in ids:
        families.append(gen_c1(n))
    if "C2" in ids:
        families.append(gen_c2(n))
    if "C3" in ids:
        families.append(gen_c3(n))
    if "C4" in ids:
        families.append(gen_c4(n))
    if "C5" in ids:
        families.append(gen_c5(n, strengthened="C3" in ids))
    pairs: tuple[tuple[int, int], ...] = ()
    if "C6" in ids:
        pairs = tuple(c6_params) if c6_params is not None else c6_preset(n)
        for p, q in pairs:
            families.append(gen_c6(n, p, q))

    constraints: list[LinearConstraint] = []
    seen: set[str] = set()
    for family in families:
        for row in family.constraints:
            if row.label in seen:
                raise ValueError(f"duplicate constraint label {row.label!r}")
            seen.add(row.label)
            constraints.append(row)

    from . import __version__

    metadata = {
        "generator": f"delcodes {__version__}",
        "n": n,
        "families": tuple(sorted(ids)),
        "c6_params": pairs,
    }
    return IlpModel(n=n, constraints=tuple(constraints), metadata=metadata)
