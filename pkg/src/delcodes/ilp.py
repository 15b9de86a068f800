"""Model container, LP text exchange, solution verification, built-in solver.

A model holds one binary variable per length-n word and maximizes how many
are selected, subject to linear rows. write_lp/read_lp move models through
the common text LP format so external solvers can be used; read_solution
imports their variable assignments; verify_solution replays every row and
independently re-checks the selected words as a code. solve_builtin is a
self-contained exact 0-1 branch-and-bound, sharing its cover-bound
machinery with the conflict-graph search so the two can serve as mutual
oracles.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterator, Mapping, Sequence

from .bitseq import Word, WordSet
from .sdecc import (
    SdeccResult,
    SearchOptions,
    _COVER_DENOM,
    _cover_weights,
    is_sdecc,
)
from .vt import vt_code

_VAR_NAME = re.compile(r"^x_([01]+)$")
_SENSES = ("<=", ">=", "=")


class InfeasibleModelError(RuntimeError):
    """The model admits no 0-1 solution.

    With the generators in this package that is mathematically impossible,
    so hitting it means a generator bug or a hand-edited model; it is
    raised loudly rather than folded into a status code.
    """


def variable_name(word: Word) -> str:
    """LP variable name for a word: x_ followed by its bits."""
    return f"x_{word}"


@dataclass(frozen=True)
class LinearConstraint:
    """One linear row: terms, sense, integer right-hand side, unique label."""

    terms: tuple[tuple[Word, int], ...]
    sense: str
    rhs: int
    label: str

    def __post_init__(self) -> None:
        if self.sense not in _SENSES:
            raise ValueError(f"sense must be one of {_SENSES}, got {self.sense!r}")
        if not self.label:
            raise ValueError("constraint label must be nonempty")
        seen: set[int] = set()
        for word, coeff in self.terms:
            if coeff == 0:
                raise ValueError(f"{self.label}: zero coefficient on {word}")
            if word.value in seen:
                raise ValueError(f"{self.label}: duplicate variable {word}")
            seen.add(word.value)

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        return sum(
            coeff * assignment.get(variable_name(word), 0)
            for word, coeff in self.terms
        )

    def satisfied(self, assignment: Mapping[str, int]) -> bool:
        lhs = self.evaluate(assignment)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class IlpModel:
    """Maximize-cardinality 0-1 model over all words of one length.

    The objective is fixed by construction: every variable has coefficient
    one and the sense is maximize, so only n, the rows, and provenance
    metadata vary.
    """

    n: int
    constraints: tuple[LinearConstraint, ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 24:
            raise ValueError(f"model length must lie in 1..24, got {self.n}")
        labels: set[str] = set()
        for row in self.constraints:
            if row.label in labels:
                raise ValueError(f"duplicate constraint label {row.label!r}")
            labels.add(row.label)
            for word, _ in row.terms:
                if word.n != self.n:
                    raise ValueError(
                        f"{row.label}: variable {word} has length {word.n}, "
                        f"model has {self.n}"
                    )

    @cached_property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(
            variable_name(Word(self.n, v)) for v in range(1 << self.n)
        )

    def word_of(self, name: str) -> Word:
        m = _VAR_NAME.match(name)
        if not m or len(m.group(1)) != self.n:
            raise ValueError(f"not a variable of this model: {name!r}")
        return Word.parse(m.group(1))

    def selected_words(self, solution: "Solution") -> WordSet:
        values = [
            v
            for v in range(1 << self.n)
            if solution.assignment.get(variable_name(Word(self.n, v))) == 1
        ]
        return WordSet(self.n, values)


@dataclass(frozen=True)
class Solution:
    """A 0-1 assignment to every model variable; treat as read-only."""

    assignment: dict[str, int]
    objective: int
    source: str  # "built-in" or "imported"
    solver_status: str  # "optimal", "feasible", or "unknown"

    def __post_init__(self) -> None:
        if self.source not in ("built-in", "imported"):
            raise ValueError(f"unknown source {self.source!r}")
        if self.solver_status not in ("optimal", "feasible", "unknown"):
            raise ValueError(f"unknown status {self.solver_status!r}")
        ones = 0
        for name, value in self.assignment.items():
            if value not in (0, 1):
                raise ValueError(f"{name}: assignment value {value!r} not 0/1")
            ones += value
        if ones != self.objective:
            raise ValueError(
                f"objective {self.objective} but {ones} variables are 1"
            )


# ------------------------------------------------------------- LP text format


def _term_tokens(terms: Sequence[tuple[Word, int]]) -> Iterator[str]:
    for position, (word, coeff) in enumerate(terms):
        sign = "-" if coeff < 0 else "+"
        if position == 0 and sign == "+":
            sign = ""
        magnitude = "" if abs(coeff) == 1 else f"{abs(coeff)} "
        body = f"{magnitude}{variable_name(word)}"
        yield f"{sign} {body}" if sign else body


def _wrapped(head: str, parts: Sequence[str], limit: int = 72) -> Iterator[str]:
    line = head
    for part in parts:
        grown = f"{line} {part}" if line else part
        if len(grown) > limit and line.strip():
            yield line
            line = f"  {part}"
        else:
            line = grown
    if line:
        yield line


def write_lp(model: IlpModel, sink: IO[str]) -> int:
    """Write the model in text LP format; returns the byte count written.

    Output is deterministic byte-for-byte for a given model: fixed section
    order, constraint order as stored, unit coefficients omitted, lines
    wrapped at 72 columns with two-space continuations, LF endings.
    """
    meta = model.metadata
    generator = str(meta.get("generator", "delcodes"))
    families = ",".join(str(f) for f in meta.get("families", ())) or "-"
    header = f"\\ {generator} model"
    shape = f"\\ n={model.n} families={families}"
    c6_params = meta.get("c6_params", ()) or ()
    if c6_params:
        shape += " c6=" + ";".join(f"{p},{q}" for p, q in c6_params)

    lines: list[str] = [header, shape, "Maximize"]
    objective_terms = [
        (Word(model.n, v), 1) for v in range(1 << model.n)
    ]
    lines.extend(_wrapped(" obj:", list(_term_tokens(objective_terms))))
    lines.append("Subject To")
    for row in model.constraints:
        parts = list(_term_tokens(row.terms))
        parts.append(f"{row.sense} {row.rhs}")
        lines.extend(_wrapped(f" {row.label}:", parts))
    lines.append("Binary")
    names = model.variable_names
    lines.extend(_wrapped(f" {names[0]}", names[1:]))
    lines.append("End")

    text = "\n".join(lines) + "\n"
    sink.write(text)
    return len(text.encode("utf-8"))


class _Tokens:
    """Token cursor over an LP file with comments stripped."""

    def __init__(self, text: str):
        kept: list[str] = []
        for raw in text.splitlines():
            cut = raw.find("\\")
            kept.append(raw if cut < 0 else raw[:cut])
        self.items = "\n".join(kept).split()
        self.pos = 0

    def peek(self) -> str | None:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of LP file")
        self.pos += 1
        return tok


def _parse_expression(tokens: _Tokens, stop: tuple[str, ...]) -> list[tuple[str, int]]:
    """Parse `[±] [coef] name` terms until a sense token or keyword."""
    terms: list[tuple[str, int]] = []
    while True:
        tok = tokens.peek()
        if tok is None:
            raise ValueError("expression ran past end of file")
        if tok in _SENSES or tok.lower() in stop:
            return terms
        sign = 1
        if tok in ("+", "-"):
            sign = -1 if tok == "-" else 1
            tokens.take()
            tok = tokens.peek()
            if tok is None:
                raise ValueError("dangling sign at end of file")
        coeff = sign
        if not _VAR_NAME.match(tok):
            try:
                magnitude = int(tok)
            except ValueError:
                raise ValueError(f"expected coefficient or variable, got {tok!r}")
            coeff = sign * magnitude
            tokens.take()
            tok = tokens.peek()
            if tok is None:
                raise ValueError("coefficient without a variable at end of file")
        if not _VAR_NAME.match(tok):
            raise ValueError(f"expected variable name, got {tok!r}")
        tokens.take()
        terms.append((tok, coeff))


def read_lp(source: IO[str]) -> IlpModel:
    """Read a model in the dialect write_lp emits.

    Strict about structure: the objective must be all-unit over exactly
    the variables the Binary section declares, those must be x_<bits>
    names of one common width covering every word of that length, every
    constraint may reference only declared variables, and labels must be
    unique. Term order inside rows is preserved.
    """
    tokens = _Tokens(source.read())
    if tokens.take().lower() != "maximize":
        raise ValueError("LP file must start with Maximize")
    obj_label = tokens.take()
    if not obj_label.endswith(":"):
        raise ValueError(f"objective needs a label, got {obj_label!r}")
    objective = _parse_expression(tokens, stop=("subject",))
    if any(coeff != 1 for _, coeff in objective):
        raise ValueError("objective must have unit coefficients")
    if tokens.take().lower() != "subject" or tokens.take().lower() != "to":
        raise ValueError("expected Subject To after the objective")

    raw_rows: list[tuple[str, list[tuple[str, int]], str, int]] = []
    while True:
        tok = tokens.peek()
        if tok is None:
            raise ValueError("LP file ended inside Subject To")
        if tok.lower() in ("binary", "end"):
            break
        label = tokens.take()
        if not label.endswith(":") or len(label) == 1:
            raise ValueError(f"expected a constraint label, got {label!r}")
        terms = _parse_expression(tokens, stop=("binary", "end"))
        sense = tokens.take()
        if sense not in _SENSES:
            raise ValueError(f"{label} expected a sense, got {sense!r}")
        rhs_token = tokens.take()
        try:
            rhs = int(rhs_token)
        except ValueError:
            raise ValueError(f"{label} right-hand side {rhs_token!r} is not an integer")
        raw_rows.append((label[:-1], terms, sense, rhs))

    if tokens.take().lower() != "binary":
        raise ValueError("expected a Binary section")
    binary: list[str] = []
    while True:
        tok = tokens.take()
        if tok.lower() == "end":
            break
        binary.append(tok)
    if tokens.peek() is not None:
        raise ValueError(f"unexpected content after End: {tokens.peek()!r}")

    if not binary:
        raise ValueError("Binary section declares no variables")
    widths = set()
    for name in binary:
        m = _VAR_NAME.match(name)
        if not m:
            raise ValueError(f"not a variable name: {name!r}")
        widths.add(len(m.group(1)))
    if len(widths) != 1:
        raise ValueError(f"mixed variable widths {sorted(widths)}")
    n = widths.pop()
    declared = set(binary)
    if len(declared) != len(binary):
        raise ValueError("duplicate names in the Binary section")
    if len(declared) != 1 << n:
        raise ValueError(
            f"expected all {1 << n} variables of length {n}, got {len(declared)}"
        )
    if {name for name, _ in objective} != declared:
        raise ValueError("objective does not cover exactly the declared variables")

    def to_word(name: str) -> Word:
        if name not in declared:
            raise ValueError(f"constraint references undeclared {name!r}")
        return Word.parse(name[2:])

    rows = tuple(
        LinearConstraint(
            terms=tuple((to_word(name), coeff) for name, coeff in terms),
            sense=sense,
            rhs=rhs,
            label=label,
        )
        for label, terms, sense, rhs in raw_rows
    )
    return IlpModel(
        n=n, constraints=rows, metadata={"generator": "lp-import", "n": n}
    )


# ------------------------------------------------------------ solution files


def read_solution(
    source: IO[str], model: IlpModel, strict: bool = False
) -> Solution:
    """Import `name value` lines as a solution to the model.

    Comment text after # is ignored, blank lines are skipped, variables
    missing from the input default to 0, and values round to {0,1} at
    threshold 0.5. In strict mode a value farther than 1e-6 from 0 or 1
    is an error instead.
    """
    known = set(model.variable_names)
    assignment = dict.fromkeys(model.variable_names, 0)
    seen: set[str] = set()
    for lineno, raw in enumerate(source.read().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'name value', got {raw!r}")
        name, value_text = parts
        if name not in known:
            raise ValueError(f"line {lineno}: unknown variable {name!r}")
        if name in seen:
            raise ValueError(f"line {lineno}: duplicate assignment for {name}")
        seen.add(name)
        try:
            value = float(value_text)
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric value {value_text!r}")
        if strict and min(abs(value), abs(value - 1.0)) > 1e-6:
            raise ValueError(
                f"line {lineno}: {name} = {value_text} is not 0/1 within 1e-6"
            )
        assignment[name] = 1 if value >= 0.5 else 0
    return Solution(
        assignment=assignment,
        objective=sum(assignment.values()),
        source="imported",
        solver_status="unknown",
    )


# --------------------------------------------------------------- verification


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of replaying a solution against a model and the code rules."""

    ok: bool
    objective: int
    checked: int
    violated: tuple[str, ...]
    foreign_names: tuple[str, ...]
    code_result: SdeccResult
    words: WordSet

    def __bool__(self) -> bool:
        return self.ok

    def render(self) -> str:
        lines = [f"verification: {'PASS' if self.ok else 'FAIL'}"]
        lines.append(
            f"objective: {self.objective} ({len(self.words)} words selected)"
        )
        lines.append(
            f"constraints: {self.checked} checked, {len(self.violated)} violated"
        )
        if self.violated:
            lines.append("violated: " + ", ".join(self.violated))
        if self.foreign_names:
            lines.append(
                "foreign variables: " + ", ".join(self.foreign_names)
            )
        if self.code_result.ok:
            lines.append("code check: valid single-deletion code")
        else:
            x, y = self.code_result.first_pair
            lines.append(
                f"code check: INVALID, {x} and {y} share deleted word "
                f"{self.code_result.shared}"
            )
        return "\n".join(lines)


def verify_solution(model: IlpModel, solution: Solution) -> VerifyReport:
    """Replay every row and independently re-check the selected words.

    The code check does not trust the model: it runs is_sdecc on the
    selected words directly, so a model missing packing rows cannot hide
    an invalid selection.
    """
    known = set(model.variable_names)
    foreign = tuple(sorted(set(solution.assignment) - known))
    violated = tuple(
        row.label
        for row in model.constraints
        if not row.satisfied(solution.assignment)
    )
    words = model.selected_words(solution)
    if model.n >= 2:
        code_result = is_sdecc(words)
    else:
        code_result = SdeccResult(len(words) <= 1, None, None)
    objective_ok = solution.objective == len(words) and not foreign
    return VerifyReport(
        ok=not violated and code_result.ok and objective_ok,
        objective=solution.objective,
        checked=len(model.constraints),
        violated=violated,
        foreign_names=foreign,
        code_result=code_result,
        words=words,
    )


# ------------------------------------------------------------ built-in solver


def _classify_rows(model: IlpModel):
    """Split rows into packing masks, singleton fixes, and generic rows."""
    nv = 1 << model.n
    packing: list[int] = []
    fixes: dict[int, int] = {}
    generic: list[tuple[str, int, tuple[tuple[int, int], ...], str]] = []
    for row in model.constraints:
        coeffs = [c for _, c in row.terms]
        if row.sense == "=" and len(row.terms) == 1:
            word, coeff = row.terms[0]
            if row.rhs % coeff:
                raise InfeasibleModelError(
                    f"{row.label}: forces a fractional value"
                )
            value = row.rhs // coeff
            if value not in (0, 1):
                raise InfeasibleModelError(
                    f"{row.label}: forces {word} to {value}"
                )
            prior = fixes.setdefault(word.value, value)
            if prior != value:
                raise InfeasibleModelError(
                    f"{row.label}: conflicts with an earlier fix of {word}"
                )
            continue
        if row.sense == "<=" and row.rhs == 1 and all(c == 1 for c in coeffs):
            if len(row.terms) > 1:
                mask = 0
                for word, _ in row.terms:
                    mask |= 1 << word.value
                packing.append(mask)
            continue  # a single-variable x <= 1 row is vacuous
        generic.append((
            row.sense,
            row.rhs,
            tuple((word.value, c) for word, c in row.terms),
            row.label,
        ))
    return nv, packing, fixes, generic


def _candidate_pool(n: int) -> list[tuple[int, ...]]:
    """Deterministic warm-start candidates: all VT classes and complements."""
    pool: list[tuple[int, ...]] = []
    top = (1 << n) - 1
    for a in range(n + 1):
        values = vt_code(n, a).values
        pool.append(values)
        pool.append(tuple(sorted(top ^ v for v in values)))
    return pool


def solve_builtin(
    model: IlpModel, options: SearchOptions | None = None
) -> Solution:
    """Exact 0-1 solve of the model by branch and bound.

    Root handling applies singleton equality fixes and their packing
    consequences, then seeds the incumbent by repairing deterministic
    candidate codes (VT classes, their complements, a plain greedy fill)
    against the actual rows. Branching selects the packing row with the
    most undecided variables and decides its lowest member first; bounds
    come from the same LP-weighted and greedy clique covers the exact
    graph search uses, restricted to the packing rows, while the other
    rows prune by reachability and gate incumbents. Exhausts the space
    unless the node or time budget interrupts, in which case the best
    incumbent is returned with solver_status "feasible" (or "unknown"
    when none was found). A proven-empty feasible set raises
    InfeasibleModelError.
    """
    opts = options or SearchOptions()
    n = model.n
    nv, packing, fixes, generic = _classify_rows(model)
    if not packing:
        raise ValueError("solve_builtin needs at least one packing row")

    rows_of: list[list[int]] = [[] for _ in range(nv)]
    closed = [0] * nv
    for mask in packing:
        t = mask
        while t:
            low = t & -t
            v = low.bit_length() - 1
            rows_of[v].append(mask)
            closed[v] |= mask
            t ^= low
    if any(not rows for rows in rows_of):
        raise ValueError("every variable must appear in some packing row")

    # propagate fixes: a selected word saturates its packing rows
    queue = [v for v, value in fixes.items() if value == 1]
    while queue:
        v = queue.pop()
        others = closed[v] & ~(1 << v)
        while others:
            low = others & -others
            u = low.bit_length() - 1
            others ^= low
            if fixes.get(u) == 1:
                raise InfeasibleModelError(
                    f"fixed selections {Word(n, v)} and {Word(n, u)} conflict"
                )
            fixes.setdefault(u, 0)

    ones_mask = 0
    zeros_mask = 0
    for v, value in fixes.items():
        if value == 1:
            ones_mask |= 1 << v
        else:
            zeros_mask |= 1 << v
    full = (1 << nv) - 1
    root_cand = full & ~ones_mask & ~zeros_mask
    root_size = ones_mask.bit_count()

    var_rows: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for ri, (_, _, terms, _) in enumerate(generic):
        for v, c in terms:
            var_rows[v].append((ri, c))

    def fresh_state(cand: int, included: int):
        cur = [0] * len(generic)
        pos = [0] * len(generic)
        neg = [0] * len(generic)
        for ri, (_, _, terms, _) in enumerate(generic):
            for v, c in terms:
                if included >> v & 1:
                    cur[ri] += c
                elif cand >> v & 1:
                    if c > 0:
                        pos[ri] += c
                    else:
                        neg[ri] -= c
        return cur, pos, neg

    def reachable(cur, pos, neg) -> bool:
        for ri, (sense, rhs, _, _) in enumerate(generic):
            if sense in (">=", "=") and cur[ri] + pos[ri] < rhs:
                return False
            if sense in ("<=", "=") and cur[ri] - neg[ri] > rhs:
                return False
        return True

    def settled(cur) -> bool:
        for ri, (sense, rhs, _, _) in enumerate(generic):
            lhs = cur[ri]
            if sense == "<=" and lhs > rhs:
                return False
            if sense == ">=" and lhs < rhs:
                return False
            if sense == "=" and lhs != rhs:
                return False
        return True

    def exact_check(selection: int) -> bool:
        for mask in packing:
            if (mask & selection).bit_count() > 1:
                return False
        for sense, rhs, terms, _ in generic:
            lhs = sum(c for v, c in terms if selection >> v & 1)
            if sense == "<=" and lhs > rhs:
                return False
            if sense == ">=" and lhs < rhs:
                return False
            if sense == "=" and lhs != rhs:
                return False
        return True

    def greedy_complete(seed: Sequence[int]) -> int:
        selection = ones_mask
        blocked = zeros_mask | ones_mask
        for mask in rows_of_any(ones_mask):
            blocked |= mask
        caps = [0] * len(generic)
        for ri, (_, _, terms, _) in enumerate(generic):
            caps[ri] = sum(c for v, c in terms if ones_mask >> v & 1)
        order = list(seed) + [v for v in range(nv) if not (1 << v) & blocked]
        for v in order:
            bit = 1 << v
            if bit & blocked or bit & selection:
                continue
            ok = True
            for ri, c in var_rows[v]:
                sense, rhs = generic[ri][0], generic[ri][1]
                if sense in ("<=", "=") and c > 0 and caps[ri] + c > rhs:
                    ok = False
                    break
            if not ok:
                continue
            selection |= bit
            blocked |= closed[v]
            for ri, c in var_rows[v]:
                caps[ri] += c
        return selection

    def rows_of_any(mask: int) -> list[int]:
        out = []
        t = mask
        while t:
            low = t & -t
            out.extend(rows_of[low.bit_length() - 1])
            t ^= low
        return out

    best_size = -1
    best_selection = 0
    seeds: list[Sequence[int]] = [()]
    seeds.extend(_candidate_pool(n))
    if opts.incumbent is not None:
        inc = opts.incumbent
        if inc.n != n:
            raise ValueError(f"incumbent has length {inc.n}, expected {n}")
        seeds.insert(0, inc.values)
    for seed in seeds:
        selection = greedy_complete(seed)
        if exact_check(selection):
            size = selection.bit_count()
            if size > best_size:
                best_size = size
                best_selection = selection

    weights = _cover_weights(nv, tuple(packing))
    weighted = (
        None
        if weights is None
        else [(m, w) for m, w in zip(packing, weights) if w]
    )
    denom = _COVER_DENOM
    max_row_size = max(mask.bit_count() for mask in packing)

    taken: list[int] = []
    nodes = 0
    exhausted = False
    node_limit = opts.node_limit
    deadline = (
        time.monotonic() + opts.time_limit
        if opts.time_limit is not None
        else None
    )

    def visit(cand: int, size: int, cur, pos, neg) -> None:
        nonlocal best_size, best_selection, nodes, exhausted
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
            if not reachable(cur, pos, neg):
                break
            if size > best_size and settled(cur):
                best_size = size
                best_selection = ones_mask
                for r in taken:
                    best_selection |= 1 << r
            if cand == 0:
                break
            need = best_size - size
            if need >= 0:
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
                    for m in rows_of[r]:
                        c = (m & rest).bit_count()
                        if c > pick_size:
                            pick_size = c
                            pick_mask = m
                    rest &= ~pick_mask
                    k += 1
                if not rest and k <= need:
                    break  # no cover-respecting completion can improve

            # branch on the packing row with the most undecided members
            chosen = 0
            chosen_size = 0
            for mask in packing:
                c = (mask & cand).bit_count()
                if c > chosen_size:
                    chosen_size = c
                    chosen = mask
                    if c == max_row_size:
                        break
            undecided = chosen & cand
            v = (undecided & -undecided).bit_length() - 1
            bit = 1 << v

            allowed = True
            for ri, c in var_rows[v]:
                sense, rhs = generic[ri][0], generic[ri][1]
                if sense in ("<=", "=") and cur[ri] + c > rhs:
                    allowed = False
                    break
            if allowed:
                child_cand = cand & ~closed[v]
                removed = cand & closed[v]
                ccur = cur[:]
                cpos = pos[:]
                cneg = neg[:]
                t = removed
                while t:
                    low = t & -t
                    u = low.bit_length() - 1
                    t ^= low
                    for ri, c in var_rows[u]:
                        if c > 0:
                            cpos[ri] -= c
                        else:
                            cneg[ri] += c
                for ri, c in var_rows[v]:
                    ccur[ri] += c
                taken.append(v)
                visit(child_cand, size + 1, ccur, cpos, cneg)
                taken.pop()
                if exhausted:
                    break

            cand ^= bit  # exclude v and continue in this frame
            for ri, c in var_rows[v]:
                if c > 0:
                    pos[ri] -= c
                else:
                    neg[ri] += c
        del taken[base:]

    cur0, pos0, neg0 = fresh_state(root_cand, ones_mask)
    visit(root_cand, root_size, cur0, pos0, neg0)

    if best_size < 0:
        if exhausted:
            status = "unknown"
            best_selection = 0
            best_size = 0
        else:
            raise InfeasibleModelError(
                "search exhausted without any feasible selection"
            )
    elif exhausted:
        status = "feasible"
    else:
        status = "optimal"

    assignment = {
        name: (best_selection >> v) & 1
        for v, name in enumerate(model.variable_names)
    }
    return Solution(
        assignment=assignment,
        objective=best_size,
        source="built-in",
        solver_status=status,
    )
