"""CNF formulas, exact satisfiability, formula stability and the formula-level reductions.

Literals are nonzero signed integers as in DIMACS: ``v`` is variable ``v``
and ``-v`` its negation, with variables numbered ``1..num_vars``.

Every construction allocates its fresh variables after the current maximum
index, in the order the construction visits its clauses, so outputs are
reproducible. Input clause order is kept and appended clauses come last.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .budget import Budget

__all__ = [
    "CnfError",
    "CnfFormula",
    "FormulaStability",
    "eight_block",
    "formula_stability",
    "is_satisfiable",
    "or2_combine",
    "parse_dimacs_cnf",
    "random_3cnf",
    "sat_to_stable_cnf",
    "to_dimacs_cnf",
    "to_exact_3cnf",
    "unsat_padding",
]


class CnfError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


Clause = tuple[int, ...]


@dataclass(frozen=True)
class CnfFormula:
    """An immutable CNF formula; ``origins`` optionally names where each clause came from."""

    num_vars: int
    clauses: tuple[Clause, ...]
    origins: tuple[str, ...] | None = None

    def __init__(self, num_vars: int, clauses: Iterable[Iterable[int]], origins: Sequence[str] | None = None):
        if num_vars < 0:
            raise CnfError("num_vars must be non-negative")
        cls = tuple(tuple(int(lit) for lit in c) for c in clauses)
        for i, c in enumerate(cls):
            for lit in c:
                if lit == 0 or abs(lit) > num_vars:
                    raise CnfError(f"clause {i}: literal {lit} outside variables 1..{num_vars}")
            if len({abs(lit) for lit in c}) != len(c):
                raise CnfError(f"clause {i} repeats a variable: {c}")
        if origins is not None:
            origins = tuple(origins)
            if len(origins) != len(cls):
                raise CnfError("one origin per clause required")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", cls)
        object.__setattr__(self, "origins", origins)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CnfFormula):
            return NotImplemented
        return self.num_vars == other.num_vars and self.clauses == other.clauses

    def __hash__(self) -> int:
        return hash((self.num_vars, self.clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def widths(self) -> Counter:
        """Multiset of clause sizes."""
        return Counter(len(c) for c in self.clauses)

    def is_exact(self, k: int) -> bool:
        return all(len(c) == k for c in self.clauses)

    def without_clause(self, i: int) -> "CnfFormula":
        return CnfFormula(self.num_vars, self.clauses[:i] + self.clauses[i + 1 :])

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """``assignment[v - 1]`` is the value of variable ``v``."""
        return all(any((lit > 0) == assignment[abs(lit) - 1] for lit in c) for c in self.clauses)

    def __str__(self) -> str:
        def lit(x: int) -> str:
            return f"x{x}" if x > 0 else f"~x{-x}"

        return " & ".join("(" + " | ".join(map(lit, c)) + ")" for c in self.clauses) or "TRUE"


def _require_exact3(phi: CnfFormula, op: str) -> None:
    if not phi.is_exact(3):
        raise CnfError(f"{op} needs an exact-3CNF formula, got clause widths {dict(phi.widths())}")


def eight_block(first_var: int) -> list[Clause]:
    """All eight width-3 clauses over three consecutive variables: unsatisfiable, and minimally so."""
    x, y, z = first_var, first_var + 1, first_var + 2
    return [(sx * x, sy * y, sz * z) for sx, sy, sz in product((1, -1), repeat=3)]


# Satisfiability

def is_satisfiable(phi: CnfFormula, budget: Budget | None = None) -> bool:
    """Exact satisfiability: resolution on rare variables, then backtracking with unit propagation."""
    b = budget if budget is not None else Budget(query=f"satisfiability of {phi.m} clauses")
    return _solve([frozenset(c) for c in phi.clauses], b)


def _solve(clauses: list[frozenset[int]], budget: Budget) -> bool:
    return _dpll(_eliminate(clauses), budget)


def _eliminate(clauses: list[frozenset[int]], frozen: frozenset[int] = frozenset()) -> list[frozenset[int]]:
    """Eliminate variables by resolution while that does not grow the clause count.

    The result is satisfiable iff the input is, under every assignment of the
    ``frozen`` variables, which are never eliminated. Chain and padding
    variables introduced by width conversion occur in few clauses and all
    disappear.
    """
    live = set(clauses)
    if frozenset() in live:
        return [frozenset()]
    occ: dict[int, set[frozenset[int]]] = defaultdict(set)
    for c in live:
        for lit in c:
            occ[lit].add(c)
    changed = True
    while changed:
        changed = False
        candidates = {abs(lit) for lit, cs in occ.items() if cs} - frozen
        for v in sorted(candidates, key=lambda x: (len(occ[x]) + len(occ[-x]), x)):
            pos, neg = occ[v], occ[-v]
            limit = len(pos) + len(neg)
            if limit == 0 or len(pos) * len(neg) > 4 * limit:
                continue
            resolvents = set()
            for p in pos:
                for q in neg:
                    r = (p | q) - {v, -v}
                    if not any(-lit in r for lit in r):
                        resolvents.add(r)
                if len(resolvents) > limit:
                    break
            if len(resolvents) > limit:
                continue
            if frozenset() in resolvents:
                return [frozenset()]
            for c in pos | neg:
                live.discard(c)
                for lit in c:
                    occ[lit].discard(c)
            for r in resolvents - live:
                live.add(r)
                for lit in r:
                    occ[lit].add(r)
            changed = True
    return sorted(live, key=sorted)


def _assign(clauses: list[frozenset[int]], lit: int) -> list[frozenset[int]] | None:
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
            if not c:
                return None
        out.append(c)
    return out


def _dpll(clauses: list[frozenset[int]], budget: Budget) -> bool:
    budget.tick()
    while True:
        if not clauses:
            return True
        if any(not c for c in clauses):
            return False
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        clauses = _assign(clauses, next(iter(unit)))
        if clauses is None:
            return False
    counts = Counter(lit for c in clauses for lit in c)
    pure = next((lit for lit in counts if -lit not in counts), None)
    if pure is not None:
        return _dpll(_assign(clauses, pure), budget)
    lit = max(counts, key=lambda x: (counts[x] + counts[-x], x))
    for choice in (lit, -lit):
        rest = _assign(clauses, choice)
        if rest is not None and _dpll(rest, budget):
            return True
    return False


@dataclass(frozen=True)
class FormulaStability:
    satisfiable: bool
    per_clause: tuple[tuple[int, bool], ...]
    stable: bool

    @property
    def minimally_unsatisfiable(self) -> bool:
        """Unsatisfiable with every one-clause deletion satisfiable (the critical counterpart)."""
        return not self.satisfiable and all(sat for _, sat in self.per_clause)


def formula_stability(phi: CnfFormula, budget: Budget | None = None) -> FormulaStability:
    """Whether deleting any single clause leaves the satisfiability status unchanged.

    Each clause gets its own selector variable, the other variables are
    eliminated once, and every subformula is then a cheap search over the
    residue with the selectors fixed.
    """
    b = budget if budget is not None else Budget(query=f"stability of {phi.m} clauses")
    selectors = {phi.num_vars + 1 + i: i for i in range(phi.m)}
    guarded = [frozenset(c) | {phi.num_vars + 1 + i} for i, c in enumerate(phi.clauses)]
    residue = _eliminate(guarded, frozenset(selectors))

    def sat_without(dropped: int | None) -> bool:
        kept = []
        for c in residue:
            if dropped is not None and phi.num_vars + 1 + dropped in c:
                continue
            kept.append(frozenset(lit for lit in c if abs(lit) not in selectors))
        return _dpll(kept, b)

    if sat_without(None):
        # A model of the whole formula satisfies every subformula.
        return FormulaStability(True, tuple((i, True) for i in range(phi.m)), True)
    per = tuple((i, sat_without(i)) for i in range(phi.m))
    return FormulaStability(False, per, not any(s for _, s in per))


# Constructions

class _Builder:
    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self.clauses: list[Clause] = []
        self.origins: list[str] = []

    def fresh(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add(self, clause: Iterable[int], origin: str) -> None:
        self.clauses.append(tuple(clause))
        self.origins.append(origin)

    def build(self) -> CnfFormula:
        return CnfFormula(self.num_vars, self.clauses, self.origins)


def _origin(phi: CnfFormula, i: int) -> str:
    return phi.origins[i] if phi.origins is not None else f"clause {i}"


def to_exact_3cnf(phi: CnfFormula) -> CnfFormula:
    """Equisatisfiable exact-3CNF formula that is stable exactly when ``phi`` is.

    A clause of width k >= 4 becomes the chain (l1|y1), (~y1|l2|y2), ...,
    (~y_{k-1}|lk). Each width-2 clause is doubled with a fresh z and ~z, each
    width-1 clause is quadrupled with fresh z1, z2, and an empty clause
    becomes an eight-block over three fresh variables. Deleting any clause
    produced from an input clause has the same effect on satisfiability as
    deleting the input clause.
    """
    out = _Builder(phi.num_vars)

    def emit(clause: Clause, origin: str) -> None:
        if len(clause) == 3:
            out.add(clause, origin)
        elif len(clause) == 2:
            z = out.fresh()
            out.add(clause + (z,), origin)
            out.add(clause + (-z,), origin)
        elif len(clause) == 1:
            z1, z2 = out.fresh(), out.fresh()
            for s1, s2 in product((1, -1), repeat=2):
                out.add(clause + (s1 * z1, s2 * z2), origin)
        else:
            for c in eight_block(out.num_vars + 1):
                out.add(c, origin)
            out.num_vars += 3

    for i, clause in enumerate(phi.clauses):
        origin = _origin(phi, i)
        if len(clause) <= 3:
            emit(clause, origin)
            continue
        ys = [out.fresh() for _ in range(len(clause) - 1)]
        pieces = [(clause[0], ys[0])]
        pieces += [(-ys[j - 1], clause[j], ys[j]) for j in range(1, len(clause) - 1)]
        pieces.append((-ys[-1], clause[-1]))
        for piece in pieces:
            emit(piece, origin)
    return out.build()


def unsat_padding(phi: CnfFormula) -> CnfFormula:
    """Append an eight-block over fresh variables: always unsatisfiable, stable iff ``phi`` is unsatisfiable."""
    _require_exact3(phi, "unsat_padding")
    out = _Builder(phi.num_vars)
    for i, c in enumerate(phi.clauses):
        out.add(c, _origin(phi, i))
    for c in eight_block(phi.num_vars + 1):
        out.add(c, "padding block")
    out.num_vars += 3
    return out.build()


def sat_to_stable_cnf(phi: CnfFormula, exact: bool = True) -> CnfFormula:
    """Formula that is stable iff it is satisfiable iff ``phi`` is satisfiable.

    Three renamed copies of ``phi`` are each switched off by a selector
    (y, y', y''), and the closing clause (~y|~y'|~y'') demands one copy be
    switched on. With ``exact`` the result is converted to exact-3CNF.
    """
    _require_exact3(phi, "sat_to_stable_cnf")
    n = phi.num_vars
    ys = (3 * n + 1, 3 * n + 2, 3 * n + 3)
    out = _Builder(3 * n + 3)

    def shift(c: Clause, by: int) -> Clause:
        return tuple(lit + by if lit > 0 else lit - by for lit in c)

    for i, c in enumerate(phi.clauses):
        for copy, y in enumerate(ys):
            out.add(shift(c, copy * n) + (y,), f"{_origin(phi, i)} copy {copy}")
    out.add(tuple(-y for y in ys), "selector clause")
    psi = out.build()
    return to_exact_3cnf(psi) if exact else psi


def or2_combine(phi: CnfFormula, phi2: CnfFormula, exact: bool = True) -> CnfFormula:
    """Formula equivalent to ``phi`` OR ``phi2`` (variables of ``phi2`` renamed apart).

    It has one clause C_i | C'_j per pair of clauses and is stable iff either
    input is stable.
    """
    n = phi.num_vars
    out = _Builder(n + phi2.num_vars)
    for i, c in enumerate(phi.clauses):
        for j, d in enumerate(phi2.clauses):
            renamed = tuple(lit + n if lit > 0 else lit - n for lit in d)
            out.add(c + renamed, f"{_origin(phi, i)} | right {_origin(phi2, j)}")
    psi = out.build()
    return to_exact_3cnf(psi) if exact else psi


def random_3cnf(num_vars: int, num_clauses: int, seed: int) -> CnfFormula:
    """Uniform random exact-3CNF formula; identical for identical arguments."""
    if num_vars < 3:
        raise CnfError("random_3cnf needs at least 3 variables")
    if num_clauses < 0:
        raise CnfError("num_clauses must be non-negative")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(num_vars, clauses)


# DIMACS CNF

def to_dimacs_cnf(phi: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    if phi.origins is not None:
        lines += [f"c origin {i} {o}" for i, o in enumerate(phi.origins)]
    lines.append(f"p cnf {phi.num_vars} {phi.m}")
    lines += [" ".join(map(str, c + (0,))) for c in phi.clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    header = None
    origins: dict[int, str] = {}
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            parts = line.split(maxsplit=3)
            if len(parts) >= 3 and parts[1] == "origin" and parts[2].isdigit():
                origins[int(parts[2])] = parts[3] if len(parts) > 3 else ""
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise CnfError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"expected 'p cnf <vars> <clauses>', got {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfError(f"non-integer counts in {line!r}", lineno) from None
            continue
        if header is None:
            raise CnfError("clause before the problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > header[0]:
                    raise CnfError(f"literal {lit} exceeds declared {header[0]} variables", lineno)
                current.append(lit)
    if header is None:
        raise CnfError("missing problem line")
    if current:
        clauses.append(current)
    if len(clauses) != header[1]:
        raise CnfError(f"header declares {header[1]} clauses, found {len(clauses)}")
    names = [origins.get(i, f"clause {i}") for i in range(len(clauses))] if origins else None
    try:
        return CnfFormula(header[0], clauses, names)
    except CnfError as exc:
        raise CnfError(str(exc)) from None
