"""Tensor powers of presented algebras: the cohomology ring of X^n.

When every H^k(X; R) is finitely generated free, H*(X^n; R) is the n-fold
tensor power of H*(X; R) as a ring.  The tensor power is presented on n
tagged copies ``name<i>`` of the generators, factor-major; cross-factor
commutation is the ambient graded commutativity, not a relation.
"""

from __future__ import annotations

import functools

from .algebra import (
    AlgebraError,
    Element,
    GradedAlgebra,
    Generator,
    Presentation,
)
from .quotient import graded_basis, is_zero_in_quotient


class KunnethError(AlgebraError):
    pass


def tagged(name: str, i: int) -> str:
    return f"{name}<{i}>"


@functools.lru_cache(maxsize=256)
def tensor_algebra(alg: GradedAlgebra, n: int) -> GradedAlgebra:
    gens = tuple(Generator(tagged(g.name, i), g.degree) for i in range(1, n + 1) for g in alg.generators)
    top = None if alg.top_degree is None else n * alg.top_degree
    return GradedAlgebra(alg.coefficients, gens, top)


def inject(x: Element, i: int, n: int) -> Element:
    """Image of ``x`` under the inclusion of the ``i``-th tensor factor (1-based)."""
    if n < 1 or not 1 <= i <= n:
        raise KunnethError(f"factor index {i} out of range 1..{n}")
    base = x.algebra
    target = tensor_algebra(base, n)
    k = base.ngens
    pad_left = (0,) * (k * (i - 1))
    pad_right = (0,) * (k * (n - i))
    return Element.from_dict(target, {pad_left + m + pad_right: c for c, m in x.terms})


def _truncation_relations(p: Presentation):
    """Base monomials just above the top degree that the relations do not already kill.

    In X^n the factor-wise truncation is no longer implied by the overall
    top degree, so such monomials must become explicit relations.
    """
    top = p.top_degree
    width = max((g.degree for g in p.generators), default=0)
    amb = p.ambient
    extra = []
    for d in range(top + 1, top + width + 1):
        for m in graded_basis(p, d, truncate=False).monomials:
            # minimal only: dropping any letter lands at or below the top
            if any(e and d - g.degree > top for e, g in zip(m, p.generators)):
                continue
            x = amb.monomial(m)
            if not is_zero_in_quotient(x, p, truncate=False):
                extra.append(x)
    return extra


def tensor_power(p: Presentation, n: int) -> Presentation:
    """Presentation of the ``n``-fold tensor power of ``p``."""
    if n < 1:
        raise KunnethError(f"tensor power needs n >= 1, got {n}")
    return _tensor_power(p, n)


@functools.lru_cache(maxsize=128)
def _tensor_power(p: Presentation, n: int) -> Presentation:
    if n > 1 and not p.kunneth_safe:
        raise KunnethError(
            "presentation is not marked Kunneth-safe (free graded pieces required)"
        )
    alg = tensor_algebra(p.algebra, n)
    rels = list(p.relations) + _truncation_relations(p)
    out = [inject(r, i, n) for i in range(1, n + 1) for r in rels]
    name = f"({p.name})^{n}" if p.name else ""
    return Presentation(alg, tuple(out), p.kunneth_safe, name)
