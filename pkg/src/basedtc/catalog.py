"""Built-in space families with presented cohomology rings.

Each entry records a presentation of H*(X; R), the dimension of a CW
model, the connectivity r (X is (r-1)-connected) and the known closed
form for tc_n(X) = cat(X^n).

The surface presentations include the identifications a1*b1 = aj*bj
(resp. g1^2 = gj^2) that make H^2 of a closed surface rank one.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from .algebra import GF2, ZZ, Presentation


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyInfo:
    key: str
    designator: str
    title: str
    params: Tuple[str, ...]
    minimums: Tuple[int, ...]
    coefficients: str
    tc_formula: str

    def check(self, values: Tuple[int, ...]):
        if len(values) != len(self.params):
            raise CatalogError(
                f"{self.key} takes {len(self.params)} parameter(s) "
                f"({', '.join(self.params)}), got {len(values)}"
            )
        for name, lo, v in zip(self.params, self.minimums, values):
            if v < lo:
                raise CatalogError(f"{self.key}: parameter {name}={v} must be >= {lo}")


_FAMILIES = (
    FamilyInfo("sphere", "sphere:m", "S^m", ("m",), (1,), "Z", "n+1"),
    FamilyInfo("spheres", "spheres:m:k", "(S^m)^k", ("m", "k"), (1, 1), "Z", "nk+1"),
    FamilyInfo("torus-sum", "torus-sum:g", "#_g T^2", ("g",), (1,), "Z", "2n+1"),
    FamilyInfo("proj-sum", "proj-sum:g", "#_g RP^2", ("g",), (1,), "Z/2", "2n+1"),
    FamilyInfo("rp", "rp:m", "RP^m", ("m",), (1,), "Z/2", "nm+1"),
    FamilyInfo("cp", "cp:m", "CP^m", ("m",), (1,), "Z", "nm+1"),
    FamilyInfo("conf", "conf:m:k", "F(R^m,k)", ("m", "k"), (2, 1), "Z", "n(k-1)+1"),
)
_BY_KEY = {f.key: f for f in _FAMILIES}


def list_catalog() -> List[FamilyInfo]:
    return list(_FAMILIES)


@dataclass(frozen=True)
class SpaceEntry:
    family: str
    params: Tuple[int, ...]
    presentation: Presentation
    dimension: int
    connectivity: int
    kunneth_safe: bool
    closed_form_tc: Callable[[int], int] = field(compare=False, repr=False)

    @property
    def designator(self) -> str:
        return ":".join([self.family, *map(str, self.params)])

    @property
    def info(self) -> FamilyInfo:
        return _BY_KEY[self.family]

    def tc(self, n: int) -> int:
        return self.closed_form_tc(n)


def _conf_name(a: int, b: int, k: int) -> str:
    return f"a{a}{b}" if k <= 9 else f"a{a}_{b}"


def _sphere(m):
    p = Presentation.build(ZZ, [("a", m)], ["a^2" if m % 2 == 0 else "a*a"], m, True, f"S^{m}")
    return p, m, m, lambda n: n + 1


def _spheres(m, k):
    gens = [(f"a{i}", m) for i in range(1, k + 1)]
    rels = [f"a{i}*a{i}" for i in range(1, k + 1)]
    p = Presentation.build(ZZ, gens, rels, m * k, True, f"(S^{m})^{k}")
    return p, m * k, m, lambda n: n * k + 1


def _torus_sum(g):
    gens = []
    for i in range(1, g + 1):
        gens += [(f"a{i}", 1), (f"b{i}", 1)]
    rels = []
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if i != j:
                rels.append(f"a{i}*b{j}")
            rels += [f"a{i}*a{j}", f"b{i}*b{j}"]
        rels.append(f"a{i}*b{i} + b{i}*a{i}")
    rels += [f"a1*b1 - a{j}*b{j}" for j in range(2, g + 1)]
    p = Presentation.build(ZZ, gens, rels, 2, True, f"#_{g}T^2")
    return p, 2, 1, lambda n: 2 * n + 1


def _proj_sum(g):
    gens = [(f"g{i}", 1) for i in range(1, g + 1)]
    rels = [f"g{i}*g{j}" for i in range(1, g + 1) for j in range(1, g + 1) if i != j]
    rels += [f"g{i}^3" for i in range(1, g + 1)]
    rels += [f"g1^2 - g{j}^2" for j in range(2, g + 1)]
    p = Presentation.build(GF2, gens, rels, 2, True, f"#_{g}RP^2")
    return p, 2, 1, lambda n: 2 * n + 1


def _rp(m):
    p = Presentation.build(GF2, [("g", 1)], [f"g^{m + 1}"], m, True, f"RP^{m}")
    return p, m, 1, lambda n: n * m + 1


def _cp(m):
    p = Presentation.build(ZZ, [("b", 2)], [f"b^{m + 1}"], 2 * m, True, f"CP^{m}")
    return p, 2 * m, 2, lambda n: n * m + 1


def _conf(m, k):
    d = m - 1
    pairs = [(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)]
    name = lambda a, b: _conf_name(a, b, k)  # noqa: E731
    gens = [(name(a, b), d) for a, b in pairs]
    rels = [f"{name(a, b)}*{name(a, b)}" for a, b in pairs]
    for a in range(1, k + 1):
        for b in range(a + 1, k + 1):
            for c in range(b + 1, k + 1):
                ab, bc, ac = name(a, b), name(b, c), name(a, c)
                rels.append(f"{ab}*{bc} - {ab}*{ac} - {ac}*{bc}")
    top = d * (k - 1)
    p = Presentation.build(ZZ, gens, rels, top, True, f"F(R^{m},{k})")
    return p, top, d, lambda n: n * (k - 1) + 1


_BUILDERS: Dict[str, Callable] = {
    "sphere": _sphere,
    "spheres": _spheres,
    "torus-sum": _torus_sum,
    "proj-sum": _proj_sum,
    "rp": _rp,
    "cp": _cp,
    "conf": _conf,
}


@functools.lru_cache(maxsize=None)
def space(family: str, *params: int) -> SpaceEntry:
    """Catalog entry for ``family`` with integer parameters, e.g. ``space("conf", 2, 3)``."""
    info = _BY_KEY.get(family)
    if info is None:
        raise CatalogError(f"unknown space family {family!r}")
    params = tuple(int(v) for v in params)
    info.check(params)
    p, dim, r, tc = _BUILDERS[family](*params)
    assert dim == p.top_degree
    return SpaceEntry(family, params, p, dim, r, p.kunneth_safe, tc)


def parse_designator(text: str) -> SpaceEntry:
    """Resolve ``"sphere:2"``, ``"conf:3:4"`` and friends."""
    family, *rest = text.strip().split(":")
    try:
        params = tuple(int(v) for v in rest)
    except ValueError:
        raise CatalogError(f"bad parameters in space designator {text!r}") from None
    return space(family, *params)
