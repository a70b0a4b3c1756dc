"""Zero testing in a presented quotient, one degree at a time.

For a degree d, the quotient H^d is the free module on the degree-d
monomials modulo the span of ``monomial * relation`` products.  Over Z the
span is a lattice and membership is integer solvability; over Z/p it is a
subspace.  Both are decided by exact echelon reduction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ._linalg import Echelon, elementary_divisors
from .algebra import Element, Monomial, Presentation, monomial_product


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    monomials: Tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)

    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}


@dataclass(frozen=True)
class IdealSlice:
    degree: int
    basis: GradedBasis
    vectors: Tuple[Tuple[int, ...], ...]


def _enumerate(degs: Tuple[int, ...], d: int, exterior: bool) -> List[Monomial]:
    n = len(degs)
    out: List[Monomial] = []
    exps = [0] * n

    def rec(i: int, remaining: int):
        if i == n:
            if remaining == 0:
                out.append(tuple(exps))
            return
        g = degs[i]
        cap = remaining // g
        if exterior and g % 2:
            cap = min(cap, 1)
        for e in range(cap, -1, -1):
            exps[i] = e
            rec(i + 1, remaining - e * g)
        exps[i] = 0

    rec(0, d)
    return out


def graded_basis(p: Presentation, d: int, truncate: bool = True) -> GradedBasis:
    """All monomials of total degree ``d``, largest first.

    With ``truncate=False`` the top degree is ignored and the basis is that
    of the untruncated ambient algebra.
    """
    if d < 0:
        raise ValueError(f"degree {d} is negative")
    if truncate and d > p.top_degree:
        raise ValueError(f"degree {d} exceeds top degree {p.top_degree}; it is zero")
    alg = p.algebra
    return GradedBasis(d, tuple(_enumerate(alg.degrees, d, alg.exterior)))


def _slice(p: Presentation, d: int, truncate: bool) -> IdealSlice:
    basis = graded_basis(p, d, truncate)
    pos = basis.index()
    alg = p.ambient
    red = alg.coefficients.reduce
    vectors = []
    for r in p.relations:
        e = r.degree
        if e is None or e > d:
            continue
        for m in graded_basis(p, d - e, truncate=False).monomials:
            v = [0] * len(basis)
            for c, rm in r.terms:
                sign, prod = monomial_product(alg, m, rm)
                if sign:
                    v[pos[prod]] = red(v[pos[prod]] + sign * c)
            vectors.append(tuple(v))
    return IdealSlice(d, basis, tuple(vectors))


def ideal_slice(p: Presentation, d: int, truncate: bool = True) -> IdealSlice:
    """Coordinate vectors of ``m * r`` for every relation r and monomial m of complementary degree."""
    if truncate and d > p.top_degree:
        raise ValueError(f"degree {d} exceeds top degree {p.top_degree}; it is zero")
    return _slice(p, d, truncate)


class _DegreeData:
    __slots__ = ("basis", "pos", "echelon")

    def __init__(self, sl: IdealSlice, modulus: Optional[int]):
        self.basis = sl.basis
        self.pos = sl.basis.index()
        self.echelon = Echelon(sl.vectors, len(sl.basis), modulus)


_cache_lock = threading.Lock()


def _degree_data(p: Presentation, d: int, truncate: bool = True) -> _DegreeData:
    cache = p.__dict__.get("_quotient_cache")
    if cache is None:
        with _cache_lock:
            cache = p.__dict__.get("_quotient_cache")
            if cache is None:
                cache = {}
                object.__setattr__(p, "_quotient_cache", cache)
    key = (d, truncate)
    data = cache.get(key)
    if data is None:
        with _cache_lock:
            data = cache.get(key)
            if data is None:
                data = _DegreeData(_slice(p, d, truncate), p.coefficients.modulus)
                cache[key] = data
    return data


def is_zero_in_quotient(x: Element, p: Presentation, truncate: bool = True) -> bool:
    """True iff ``x`` lies in the relation ideal (or above the top degree).

    Mixed-degree input is tested one homogeneous piece at a time.
    """
    if x.algebra.generators != p.generators or x.algebra.coefficients != p.coefficients:
        raise ValueError("element does not belong to this presentation")
    for d, part in x.homogeneous_parts().items():
        if truncate and d > p.top_degree:
            continue
        data = _degree_data(p, d, truncate)
        v = [0] * len(data.basis)
        for c, m in part.terms:
            v[data.pos[m]] = c
        if not data.echelon.contains(v):
            return False
    return True


def monomial_is_zero(p: Presentation, m: Monomial) -> bool:
    """Fast path of :func:`is_zero_in_quotient` for a single canonical monomial."""
    d = p.algebra.monomial_degree(m)
    if d > p.top_degree:
        return True
    data = _degree_data(p, d)
    v = [0] * len(data.basis)
    v[data.pos[m]] = 1
    return data.echelon.contains(v)


def rank(p: Presentation, d: int) -> int:
    """Dimension of H^d over Z/p, or rank of its free part over Z."""
    if d > p.top_degree:
        return 0
    data = _degree_data(p, d)
    return len(data.basis) - data.echelon.rank


def torsion(p: Presentation, d: int) -> List[int]:
    """Nontrivial invariant factors of H^d over Z (empty over a field)."""
    if p.coefficients.modulus is not None or d > p.top_degree:
        return []
    sl = ideal_slice(p, d)
    return [e for e in elementary_divisors(sl.vectors, len(sl.basis)) if e != 1]


def is_free(p: Presentation) -> bool:
    """Whether every H^d is a free module (always true over a field)."""
    return all(not torsion(p, d) for d in range(p.top_degree + 1))
