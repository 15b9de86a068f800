"""Single-deletion code validity, decoding, conflict graphs, and exact maxima.

A set of length-n words is a valid single-deletion code when the deletion
surfaces of its members are pairwise disjoint; any received length-(n-1)
word then points back to at most one codeword. The conflict graph makes the
pairwise condition concrete: vertices are all 2^n words, edges join words
whose surfaces intersect, and independent sets are exactly the valid codes.
Every center y of length n-1 induces a clique of n+1 vertices (its possible
originals); covers by these cliques, both greedy and LP-weighted, drive the
pruning of the exact search, and the same cliques become the covering rows
of the generated ILP models.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .bitseq import (
    Word,
    WordSet,
    insertion_values,
    runs_of,
    surface_values,
)
from .vt import vt0_size, vt_code

GRAPH_MAX_N = 14

# n -> (|VT_0(n)|, exact maximum when known, best published upper bound)
KNOWN_SIZES: dict[int, tuple[int, int | None, int]] = {
    2: (2, 2, 2),
    3: (2, 2, 2),
    4: (4, 4, 4),
    5: (6, 6, 6),
    6: (10, 10, 10),
    7: (16, 16, 16),
    8: (30, 30, 30),
    9: (52, 52, 52),
    10: (94, 94, 94),
    11: (172, 172, 172),
    12: (316, None, 320),
    13: (586, None, 593),
    14: (1096, None, 1104),
    15: (2048, None, 2184),
}


class SdeccResult(NamedTuple):
    """Validity verdict; truthy exactly when the code is a valid SDECC."""

    ok: bool
    first_pair: tuple[Word, Word] | None
    shared: Word | None

    def __bool__(self) -> bool:
        return self.ok


def is_sdecc(code: WordSet) -> SdeccResult:
    """Check pairwise-disjoint deletion surfaces.

    On failure the result carries the first violating pair in canonical
    order together with one shared deleted word.
    """
    n = code.n
    if n < 2:
        raise ValueError(f"validity needs length >= 2, got {n}")
    owner: dict[int, int] = {}
    for v in code.values:
        for c in sorted(surface_values(n, v)):
            prev = owner.get(c)
            if prev is not None:
                return SdeccResult(
                    False, (Word(n, prev), Word(n, v)), Word(n - 1, c)
                )
            owner[c] = v
    return SdeccResult(True, None, None)


def decode_single(code: WordSet, received: Word) -> Word | None:
    """Recover the codeword that received arose from by one deletion.

    Returns None when no codeword covers received. The caller promises the
    code is a valid SDECC; two covering codewords mean that promise was
    broken and raise RuntimeError.
    """
    n = code.n
    if received.n != n - 1:
        raise ValueError(
            f"received word must have length {n - 1}, got {received.n}"
        )
    hits = [
        v
        for v in insertion_values(received.n, received.value)
        if code.has_value(v)
    ]
    if not hits:
        return None
    if len(hits) > 1:
        a, b = sorted(hits)[:2]
        raise RuntimeError(
            f"code is not a valid SDECC: {Word(n, a)} and {Word(n, b)} "
            f"both cover {received}"
        )
    return Word(n, hits[0])


class ConflictGraph:
    """Conflict structure over all words of one length.

    cliques_by_center maps every length-(n-1) word to the sorted tuple of
    the n+1 words whose surface contains it. Adjacency is derived from the
    cliques on first use and cached.
    """

    def __init__(self, n: int, cliques_by_center: dict[int, tuple[int, ...]]):
        self.n = n
        self.cliques_by_center = cliques_by_center

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1 << self.n)}
        for members in self.cliques_by_center.values():
            for a in members:
                adj[a].update(members)
        return {v: frozenset(s - {v}) for v, s in adj.items()}

    def conflicts(self, x: Word, y: Word) -> bool:
        """Whether two distinct words share a deleted word."""
        if x.n != self.n or y.n != self.n:
            raise ValueError("words must match the graph length")
        if x.value == y.value:
            return False
        return bool(
            surface_values(self.n, x.value) & surface_values(self.n, y.value)
        )

    def __repr__(self) -> str:
        return f"ConflictGraph(n={self.n}, vertices={self.vertex_count})"


def conflict_graph(n: int) -> ConflictGraph:
    """Build the conflict graph for length n (2 <= n <= 14)."""
    if not isinstance(n, int) or isinstance(n, bool) or not 2 <= n <= GRAPH_MAX_N:
        raise ValueError(
            f"conflict graph supports 2 <= n <= {GRAPH_MAX_N}, got {n!r}"
        )
    cliques: dict[int, list[int]] = {}
    for v in range(1 << n):
        for c in surface_values(n, v):
            cliques.setdefault(c, []).append(v)
    return ConflictGraph(
        n, {c: tuple(vs) for c, vs in sorted(cliques.items())}
    )


@dataclass(frozen=True)
class BoundsRecord:
    """Sandwich of lower and upper bounds on the maximum code size."""

    n: int
    lower_vt: int  # |VT_0(n)|, constructive bound
    lower_ratio: int  # ceil(2^n / (n+1)), averaging bound
    upper_kk: int  # floor((2^n - 2) / (n - 2))
    known_M: int | None  # exact maximum when established
    known_upper: int | None  # best tabulated upper bound

    def __post_init__(self) -> None:
        chain = [self.lower_ratio, self.lower_vt, self.known_M,
                 self.known_upper, self.upper_kk]
        present = [b for b in chain if b is not None]
        if any(a > b for a, b in zip(present, present[1:])):
            raise RuntimeError(f"bounds chain out of order: {chain}")


def bounds(n: int) -> BoundsRecord:
    """Lower and upper bounds on the maximum code size for length n."""
    if not 3 <= n <= 62:
        raise ValueError(f"bounds supports 3 <= n <= 62, got {n}")
    known = KNOWN_SIZES.get(n)
    return BoundsRecord(
        n=n,
        lower_vt=vt0_size(n),
        lower_ratio=-(-(1 << n) // (n + 1)),
        upper_kk=((1 << n) - 2) // (n - 2),
        known_M=known[1] if known else None,
        known_upper=known[2] if known else None,
    )


# --- clique-cover pruning machinery, shared with the built-in ILP solver ---

# lcm(1..11): every dual these instances produce rationalizes upward with
# negligible loss at this denominator
_COVER_DENOM = 27720
# the dense-tableau simplex is reliable up to this many columns; larger
# instances fall back to the greedy cover alone
_COVER_MAX_VERTICES = 256
_cover_weight_cache: dict[
    tuple[int, tuple[int, ...]], tuple[int, ...] | None
] = {}


def _packing_duals(masks: Sequence[int], nv: int) -> np.ndarray | None:
    """Row duals of the fractional relaxation of a set-packing problem.

    The primal maximizes the sum of nv variables in [0,1] subject to one
    row per mask: the variables named by the mask's bits sum to at most 1.
    Solved with a dense primal simplex from the slack basis. The instances
    are heavily degenerate, so right-hand sides and costs carry tiny
    deterministic perturbations and Dantzig pricing falls back to Bland's
    rule after a stall. Returns None when the pivot cap is hit.
    """
    nc = len(masks)
    tab = np.zeros((nc + 1, nv + nc + 1))
    for i, m in enumerate(masks):
        row = tab[i]
        t = m
        while t:
            low = t & -t
            row[low.bit_length() - 1] = 1.0
            t ^= low
        tab[i, nv + i] = 1.0
        tab[i, -1] = 1.0 + 1e-7 * (i + 1)
    jitter = (np.arange(nv) * 2654435761 % 8192) / 8192.0
    tab[-1, :nv] = -1.0 - 1e-6 * jitter
    stall = 0
    for _ in range(20000):
        costs = tab[-1, :-1]
        if stall <= 400:
            j = int(np.argmin(costs))
            if costs[j] >= -1e-9:
                break
        else:
            negative = np.nonzero(costs < -1e-9)[0]
            if negative.size == 0:
                break
            j = int(negative[0])
        col = tab[:nc, j]
        positive = col > 1e-9
        if not positive.any():
            return None
        ratios = np.full(nc, np.inf)
        ratios[positive] = tab[:nc, -1][positive] / col[positive]
        i = int(np.argmin(ratios))
        previous = tab[-1, -1]
        tab[i] /= tab[i, j]
        scale = tab[:, j].copy()
        scale[i] = 0.0
        tab -= np.outer(scale, tab[i])
        stall = stall + 1 if tab[-1, -1] - previous < 1e-12 else 0
    else:
        return None
    return np.maximum(tab[-1, nv:nv + nc], 0.0)


def _cover_weights(nv: int, masks: Sequence[int]) -> tuple[int, ...] | None:
    """Integer weights turning the mask family into a weighted cover bound.

    The weights satisfy, for every vertex v < nv, sum of W over masks
    containing v >= _COVER_DENOM. Any selection that puts at most one
    vertex into each mask then has size at most the sum of W over masks
    meeting the selectable set, floor-divided by _COVER_DENOM: each
    selected vertex consumes a full denominator of weight and no mask is
    charged twice. Weights come from simplex duals rationalized upward,
    then any per-vertex shortfall is repaired in exact integer arithmetic,
    so the bound stays sound even when the LP solve was inexact. Returns
    None when some vertex appears in no mask, the instance is too large,
    or the simplex gives up; callers then rely on greedy covers alone.
    Results are cached per mask family.
    """
    key = (nv, tuple(masks))
    try:
        return _cover_weight_cache[key]
    except KeyError:
        pass
    result: tuple[int, ...] | None = None
    if masks and nv <= _COVER_MAX_VERTICES:
        duals = _packing_duals(masks, nv)
        if duals is not None:
            denom = _COVER_DENOM
            weights = [int(np.ceil(d * denom - 1e-9)) for d in duals]
            by_vertex: list[list[int]] = [[] for _ in range(nv)]
            for idx, m in enumerate(masks):
                t = m
                while t:
                    low = t & -t
                    by_vertex[low.bit_length() - 1].append(idx)
                    t ^= low
            covered = True
            for v in range(nv):
                rows = by_vertex[v]
                if not rows:
                    covered = False
                    break
                got = sum(weights[i] for i in rows)
                if got < denom:
                    weights[rows[0]] += denom - got
            if covered:
                result = tuple(weights)
    _cover_weight_cache[key] = result
    return result


@dataclass(frozen=True)
class SearchOptions:
    """Budgets and warm start for the exact searches."""

    node_limit: int | None = None
    time_limit: float | None = None
    incumbent: WordSet | None = None


@dataclass(frozen=True)
class SearchResult:
    n: int
    size: int
    witness: WordSet
    proof_status: str  # "optimal" or "bound-limited"
    nodes: int


def max_sdecc_exact(n: int, options: SearchOptions | None = None) -> SearchResult:
    """Maximum size of a single-deletion code of length n, with witness.

    Branch and bound over the conflict graph: vertices are taken in a fixed
    order (ascending surface size, then canonical) and the incumbent starts
    at VT_0(n). A subtree is cut when a cover of the remaining candidates
    by center cliques shows it cannot beat the incumbent; every node tries
    the precomputed LP-weighted cover first (exact integer weights, see
    _cover_weights) and a greedy most-covering-clique cover second.
    Exhausting the node or time budget downgrades proof_status to
    "bound-limited"; the returned witness is always a valid code of the
    reported size.

    Optimality proofs are fast through n = 8; n = 9 and beyond want a
    budget. n = 1 is the trivial single-word case.
    """
    opts = options or SearchOptions()
    if n == 1:
        return SearchResult(1, 1, WordSet(1, [0]), "optimal", 0)
    graph = conflict_graph(n)

    best_values = tuple(vt_code(n, 0).values)
    if opts.incumbent is not None:
        inc = opts.incumbent
        if inc.n != n:
            raise ValueError(f"incumbent has length {inc.n}, expected {n}")
        if not is_sdecc(inc):
            raise ValueError("incumbent is not a valid single-deletion code")
        if len(inc) > len(best_values):
            best_values = inc.values

    # relabel vertices so the branch order is "lowest set bit first"
    size = 1 << n
    order = sorted(
        range(size), key=lambda v: (runs_of(v, n, 0) + runs_of(v, n, 1), v)
    )
    rank = [0] * size
    for i, v in enumerate(order):
        rank[v] = i

    closed = [0] * size  # vertex plus all its neighbors, as a rank mask
    cliques_of: list[list[int]] = [[] for _ in range(size)]
    clique_masks: list[int] = []
    for _, members in sorted(graph.cliques_by_center.items()):
        mask = 0
        for v in members:
            mask |= 1 << rank[v]
        clique_masks.append(mask)
        for v in members:
            r = rank[v]
            closed[r] |= mask
            cliques_of[r].append(mask)

    weights = _cover_weights(size, clique_masks)
    weighted = (
        None
        if weights is None
        else [(m, w) for m, w in zip(clique_masks, weights) if w]
    )
    denom = _COVER_DENOM

    best = len(best_values)
    taken: list[int] = []
    nodes = 0
    exhausted = False
    node_limit = opts.node_limit
    deadline = (
        time.monotonic() + opts.time_limit
        if opts.time_limit is not None
        else None
    )

    def visit(cand: int, count: int) -> None:
        nonlocal best, best_values, nodes, exhausted
        base = len(taken)
        while True:
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                exhausted = True
            elif (
                deadline is not None
                and nodes % 1024 == 0
                and time.monotonic() > deadline
            ):
                exhausted = True
            if exhausted:
                break
            if count > best:
                best = count
                best_values = tuple(sorted(order[r] for r in taken))
            if cand == 0:
                break
            need = best - count
            if weighted is not None:
                total = 0
                for m, w in weighted:
                    if m & cand:
                        total += w
                if total // denom <= need:
                    break
            k = 0
            rest = cand
            while rest and k <= need:
                r = (rest & -rest).bit_length() - 1
                pick_mask = 0
                pick_size = 0
                for m in cliques_of[r]:
                    c = (m & rest).bit_count()
                    if c > pick_size:
                        pick_size = c
                        pick_mask = m
                rest &= ~pick_mask
                k += 1
            if not rest and k <= need:
                break  # even this cover cannot beat the incumbent
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            nbr = closed[v]
            if cand & nbr == bit:
                # isolated among the candidates: always take it
                taken.append(v)
                count += 1
                cand ^= bit
                continue
            taken.append(v)
            visit(cand & ~nbr, count + 1)
            taken.pop()
            if exhausted:
                break
            cand ^= bit  # exclude v and carry on in this frame
        del taken[base:]

    visit((1 << size) - 1, 0)
    return SearchResult(
        n=n,
        size=best,
        witness=WordSet(n, best_values),
        proof_status="bound-limited" if exhausted else "optimal",
        nodes=nodes,
    )
