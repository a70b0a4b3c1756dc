"""Bound facts and interval propagation for cat(X^j), tc_j, TC_j, ltc_j, LTC_j.

All quantities use the unreduced convention (cat of a point is 1).
Seed facts come from the nilpotency lower bound and the
dimension/connectivity upper bound; propagation applies

* tc_j = cat(X^j)                          (contractible based path space)
* ltc_j = tc_j, LTC_j = TC_j
* tc_j <= tc_{j+1}
* TC_j <= tc_j                  (j >= 2)
* tc_{j-1} <= TC_j              (j >= 2)
* cat(X^j) <= j (cat(X) - 1) + 1  (product inequality)

until nothing tightens.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .catalog import SpaceEntry, parse_designator
from .cuplength import nil_lower_bound

INF = math.inf

KINDS = ("cat_power", "tc", "ltc", "TC", "LTC")
MIN_INDEX = {"cat_power": 1, "tc": 1, "ltc": 1, "TC": 2, "LTC": 2}

# rule tags -> short human-readable citation
RULES = {
    "trivial": "every genus/category is at least 1",
    "nil": "nilpotency of reduced cohomology bounds cat from below",
    "whitehead": "cat(X) <= dim(X)/r + 1 for (r-1)-connected CW X",
    "product": "cat(X^j) <= j(cat(X)-1) + 1",
    "based=cat": "tc_j = cat(X^j) since the based path space is contractible",
    "ltc=tc": "based loop and based path complexities agree",
    "LTC=TC": "free loop and free path complexities agree",
    "tc-monotone": "tc_j <= tc_{j+1}",
    "TC<=tc": "TC_j <= tc_j for j >= 2",
    "tc<=TC": "tc_{j-1} <= TC_j for j >= 2",
}


class BoundContradiction(RuntimeError):
    def __init__(self, quantity, lower, upper):
        self.quantity = quantity
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"empty interval for {quantity}: lower {lower.value} via {' > '.join(lower.chain)}"
            f" exceeds upper {fmt(upper.value)} via {' > '.join(upper.chain)}"
        )


def fmt(v) -> str:
    return "inf" if v == INF else str(int(v))


@dataclass(frozen=True, order=True)
class Quantity:
    kind: str
    j: int

    def __post_init__(self):
        if self.kind not in MIN_INDEX:
            raise ValueError(f"unknown quantity kind {self.kind!r}")
        if self.j < MIN_INDEX[self.kind]:
            raise ValueError(f"{self.kind} is defined for index >= {MIN_INDEX[self.kind]}")

    def __str__(self):
        return f"cat(X^{self.j})" if self.kind == "cat_power" else f"{self.kind}_{self.j}"


@dataclass(frozen=True)
class BoundFact:
    quantity: Quantity
    lower: int = 1
    upper: float = INF
    rule: str = "trivial"
    note: str = ""

    def __post_init__(self):
        if self.upper != INF and self.upper != int(self.upper):
            raise ValueError("finite upper bounds must be integers")
        if not 1 <= self.lower <= self.upper:
            raise ValueError(f"inconsistent fact {self}")


@dataclass(frozen=True)
class Endpoint:
    value: float
    chain: Tuple[str, ...]


@dataclass
class IntervalTable:
    n_max: int
    lower: Dict[Quantity, Endpoint] = field(default_factory=dict)
    upper: Dict[Quantity, Endpoint] = field(default_factory=dict)
    rounds: int = 0

    def quantities(self) -> List[Quantity]:
        return sorted(self.lower, key=lambda q: (KINDS.index(q.kind), q.j))

    def interval(self, kind: str, j: int) -> Tuple[int, float]:
        q = Quantity(kind, j)
        return self.lower[q].value, self.upper[q].value

    def resolved(self, kind: str, j: int) -> bool:
        lo, hi = self.interval(kind, j)
        return lo == hi

    def provenance(self, q: Quantity) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
        return self.lower[q].chain, self.upper[q].chain

    def as_facts(self) -> List[BoundFact]:
        return [
            BoundFact(q, self.lower[q].value, self.upper[q].value, "table")
            for q in self.quantities()
        ]

    def rows(self, space: str = "") -> List[dict]:
        out = []
        for q in self.quantities():
            lo, hi = self.lower[q], self.upper[q]
            out.append({
                "space": space,
                "quantity": q.kind,
                "n": q.j,
                "lower": int(lo.value),
                "upper": "inf" if hi.value == INF else int(hi.value),
                "resolved": lo.value == hi.value,
                "provenance": ["lower: " + " > ".join(lo.chain), "upper: " + " > ".join(hi.chain)],
            })
        return out


def all_quantities(n_max: int) -> List[Quantity]:
    return [Quantity(k, j) for k in KINDS for j in range(MIN_INDEX[k], n_max + 1)]


def seed_facts(entry: SpaceEntry, n_max: int) -> List[BoundFact]:
    """Lower bounds from nilpotency, upper bounds from dimension/connectivity."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    facts = [BoundFact(q) for q in all_quantities(n_max)]
    dim, r = entry.dimension, entry.connectivity
    cat1_upper = dim // r + 1
    for j in range(1, n_max + 1):
        q = Quantity("cat_power", j)
        nil = nil_lower_bound(entry.presentation, j)
        facts.append(BoundFact(q, nil, INF, "nil", f"nil(X^{j}) = {nil}"))
        # X^j is (r-1)-connected of dimension j*dim
        facts.append(BoundFact(q, 1, (j * dim) // r + 1, "whitehead", f"dim {j * dim}, r {r}"))
        facts.append(BoundFact(q, 1, j * (cat1_upper - 1) + 1, "product", f"cat(X) <= {cat1_upper}"))
    return facts


def _relations(n_max: int):
    """(target, source, side, rule, transform) edges; side is 'lower' or 'upper'."""
    ident = lambda v: v  # noqa: E731
    edges = []

    def equal(a, b, rule):
        for x, y in ((a, b), (b, a)):
            edges.append((x, y, "lower", rule, ident))
            edges.append((x, y, "upper", rule, ident))

    def leq(small, big, rule):
        # small <= big: big inherits small's lower, small inherits big's upper
        edges.append((big, small, "lower", rule, ident))
        edges.append((small, big, "upper", rule, ident))

    for j in range(1, n_max + 1):
        equal(Quantity("tc", j), Quantity("cat_power", j), "based=cat")
        equal(Quantity("ltc", j), Quantity("tc", j), "ltc=tc")
        if j < n_max:
            leq(Quantity("tc", j), Quantity("tc", j + 1), "tc-monotone")
        if j >= 2:
            equal(Quantity("LTC", j), Quantity("TC", j), "LTC=TC")
            leq(Quantity("TC", j), Quantity("tc", j), "TC<=tc")
            leq(Quantity("tc", j - 1), Quantity("TC", j), "tc<=TC")
            edges.append((
                Quantity("cat_power", j), Quantity("cat_power", 1), "upper", "product",
                (lambda j: lambda v: v if v == INF else j * (v - 1) + 1)(j),
            ))
    return edges


def propagate(facts: Iterable[BoundFact], n_max: int) -> IntervalTable:
    """Tighten intervals to a fixpoint; raises :class:`BoundContradiction` on an empty one."""
    table = IntervalTable(n_max)
    for q in all_quantities(n_max):
        table.lower[q] = Endpoint(1, ("trivial",))
        table.upper[q] = Endpoint(INF, ("trivial",))

    def tighten(q, side, value, chain):
        if side == "lower":
            if value > table.lower[q].value:
                table.lower[q] = Endpoint(value, chain)
                return True
        elif value < table.upper[q].value:
            table.upper[q] = Endpoint(value, chain)
            return True
        return False

    for f in facts:
        if f.quantity.j > n_max:
            continue
        tighten(f.quantity, "lower", f.lower, (f.rule,))
        tighten(f.quantity, "upper", f.upper, (f.rule,))

    edges = _relations(n_max)
    changed = True
    while changed:
        changed = False
        table.rounds += 1
        for target, source, side, rule, tr in edges:
            ep = table.lower[source] if side == "lower" else table.upper[source]
            if tighten(target, side, tr(ep.value), ep.chain + (rule,)):
                changed = True
        for q in table.lower:
            if table.lower[q].value > table.upper[q].value:
                raise BoundContradiction(q, table.lower[q], table.upper[q])
    return table


def space_table(entry: SpaceEntry, n_max: int) -> IntervalTable:
    return propagate(seed_facts(entry, n_max), n_max)


@dataclass(frozen=True)
class TableCell:
    space: str
    n: int
    lower: int
    upper: float
    expected: Optional[int]

    @property
    def resolved(self) -> bool:
        return self.lower == self.upper

    @property
    def matches(self) -> bool:
        return self.resolved and self.lower == self.expected

    def as_dict(self) -> dict:
        return {
            "space": self.space,
            "quantity": "tc",
            "n": self.n,
            "lower": int(self.lower),
            "upper": fmt(self.upper) if self.upper == INF else int(self.upper),
            "resolved": self.resolved,
            "expected": self.expected,
            "matches": self.matches,
        }


def tc_table(spaces: Sequence, n_max: int, threads: int = 1) -> List[TableCell]:
    """Propagated tc_n interval for every space (entry or designator) and n <= n_max."""

    def one(s):
        entry = parse_designator(s) if isinstance(s, str) else s
        table = space_table(entry, n_max)
        return [
            TableCell(entry.designator, j, *table.interval("tc", j), entry.tc(j))
            for j in range(1, n_max + 1)
        ]

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            chunks = list(ex.map(one, spaces))
    else:
        chunks = [one(s) for s in spaces]
    return [c for chunk in chunks for c in chunk]


def default_grid() -> List[str]:
    """The standard tc_n grid: m, k in 1..4, g in 1..3 (conf needs m >= 2)."""
    grid = [f"sphere:{m}" for m in range(1, 5)]
    grid += [f"spheres:{m}:{k}" for m in range(1, 5) for k in range(1, 5)]
    grid += [f"torus-sum:{g}" for g in range(1, 4)]
    grid += [f"proj-sum:{g}" for g in range(1, 4)]
    grid += [f"rp:{m}" for m in range(1, 5)]
    grid += [f"cp:{m}" for m in range(1, 5)]
    grid += [f"conf:{m}:{k}" for m in range(2, 5) for k in range(1, 5)]
    return grid
