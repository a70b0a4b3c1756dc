"""Exact arithmetic in free graded-commutative algebras over Z or Z/p.

The ambient algebra on a list of graded generators is

* over Z or Z/p with p odd: a polynomial algebra on the even generators
  tensored with an exterior algebra on the odd ones (odd squares vanish);
* over Z/2: a plain commutative polynomial algebra (odd powers survive,
  as in the mod 2 cohomology of real projective space).

Monomials are exponent tuples indexed by generator-declaration order and
are ordered lexicographically, largest first.  Elements are immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class AlgebraError(ValueError):
    pass


class ParseError(AlgebraError):
    """Raised for malformed element text; ``pos`` is the offending offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} (at position {pos})")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Coefficients:
    """Z when ``modulus`` is None, otherwise Z/p for a prime p."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise AlgebraError(f"coefficient modulus {self.modulus} is not prime")

    @classmethod
    def integers(cls) -> "Coefficients":
        return cls(None)

    @classmethod
    def mod(cls, p: int) -> "Coefficients":
        return cls(p)

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    def reduce(self, c: int) -> int:
        return c if self.modulus is None else c % self.modulus

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = Coefficients()
GF2 = Coefficients(2)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*(?:<[0-9]+>)*")


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise AlgebraError(f"generator {self.name!r} must have degree >= 1")
        if not _NAME_RE.fullmatch(self.name):
            raise AlgebraError(f"invalid generator name {self.name!r}")


@dataclass(frozen=True)
class GradedAlgebra:
    """The ambient free graded-commutative algebra, truncated above ``top_degree``."""

    coefficients: Coefficients
    generators: Tuple[Generator, ...]
    top_degree: Optional[int] = None  # None: no truncation

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraError("generator names must be unique")
        if self.top_degree is not None and self.top_degree < 0:
            raise AlgebraError("top degree must be >= 0")

    # frozen dataclass hashing walks every field; algebras are hashed often
    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.coefficients, self.generators, self.top_degree))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> Tuple[int, ...]:
        d = self.__dict__.get("_degrees")
        if d is None:
            d = tuple(g.degree for g in self.generators)
            object.__setattr__(self, "_degrees", d)
        return d

    @property
    def exterior(self) -> bool:
        """True when odd generators square to zero (characteristic != 2)."""
        return self.coefficients.characteristic != 2

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise AlgebraError(f"unknown generator {name!r}")

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(m, self.generators))

    def in_range(self, degree: int) -> bool:
        return self.top_degree is None or degree <= self.top_degree

    def untruncated(self) -> "GradedAlgebra":
        if self.top_degree is None:
            return self
        return GradedAlgebra(self.coefficients, self.generators, None)

    def truncated(self, top_degree: Optional[int]) -> "GradedAlgebra":
        return GradedAlgebra(self.coefficients, self.generators, top_degree)

    # -- constructors -------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, ())

    def one(self) -> "Element":
        return self.constant(1)

    def constant(self, c: int) -> "Element":
        return Element.from_dict(self, {(0,) * self.ngens: c})

    def gen(self, name_or_index) -> "Element":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < self.ngens:
            raise AlgebraError(f"unknown generator index {i}")
        m = [0] * self.ngens
        m[i] = 1
        return Element.from_dict(self, {tuple(m): 1})

    def monomial(self, m: Monomial, coeff: int = 1) -> "Element":
        return Element.from_dict(self, {tuple(m): coeff})

    def word(self, word: Sequence[int], coeff: int = 1) -> "Element":
        c, m = normalize_word(self, word, coeff)
        return Element.from_dict(self, {m: c})


def normalize_word(
    algebra: GradedAlgebra, word: Sequence[int], coeff: int = 1
) -> Tuple[int, Monomial]:
    """Sort a word of generator indices into canonical order.

    Each transposition of adjacent generators a, b contributes the sign
    (-1)^(deg a * deg b).  Returns ``(0, zero monomial)`` when an odd
    generator repeats in the exterior convention.
    """
    n = algebra.ngens
    degs = algebra.degrees
    for i in word:
        if not (isinstance(i, int) and 0 <= i < n):
            raise AlgebraError(f"unknown generator index {i!r}")
    coeff = algebra.coefficients.reduce(coeff)
    exps = [0] * n
    # sign = parity of inversions between odd generators
    parity = 0
    odd_counts = [0] * n
    for i in word:
        if degs[i] % 2:
            # odd generators already placed with a larger index must hop over i
            parity += sum(odd_counts[i + 1:])
            odd_counts[i] += 1
        exps[i] += 1
    if algebra.exterior and any(exps[i] > 1 and degs[i] % 2 for i in range(n)):
        return 0, (0,) * n
    if parity % 2 and algebra.exterior:
        coeff = -coeff
    coeff = algebra.coefficients.reduce(coeff)
    if coeff == 0:
        return 0, (0,) * n
    return coeff, tuple(exps)


def monomial_product(
    algebra: GradedAlgebra, a: Monomial, b: Monomial
) -> Tuple[int, Monomial]:
    """Product of two canonical monomials as ``(sign, monomial)``; sign 0 means zero."""
    degs = algebra.degrees
    n = len(degs)
    exterior = algebra.exterior
    parity = 0
    odd_in_a_above = 0
    # walk indices from the top so we know how many odd letters of a exceed i
    for i in range(n - 1, -1, -1):
        if degs[i] % 2:
            if exterior and a[i] and b[i]:
                return 0, (0,) * n
            parity += b[i] * odd_in_a_above
            odd_in_a_above += a[i]
    m = tuple(x + y for x, y in zip(a, b))
    sign = -1 if (parity % 2 and exterior) else 1
    return sign, m


@dataclass(frozen=True, eq=False)
class Element:
    """A canonical linear combination of monomials.

    ``terms`` holds ``(coefficient, monomial)`` pairs with nonzero
    coefficients and distinct monomials, sorted largest monomial first.
    """

    algebra: GradedAlgebra
    terms: Tuple[Tuple[int, Monomial], ...] = field(default=())

    @classmethod
    def from_dict(cls, algebra: GradedAlgebra, d: Dict[Monomial, int]) -> "Element":
        red = algebra.coefficients.reduce
        items = []
        for m, c in d.items():
            c = red(c)
            if c and algebra.in_range(algebra.monomial_degree(m)):
                items.append((c, tuple(m)))
        items.sort(key=lambda cm: cm[1], reverse=True)
        return cls(algebra, tuple(items))

    def as_dict(self) -> Dict[Monomial, int]:
        return {m: c for c, m in self.terms}

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.algebra.constant(other)
        self._check(other)
        d = self.as_dict()
        for c, m in other.terms:
            d[m] = d.get(m, 0) + c
        return Element.from_dict(self.algebra, d)

    __radd__ = __add__

    def __neg__(self):
        return Element.from_dict(self.algebra, {m: -c for c, m in self.terms})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.algebra.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> "Element":
        return Element.from_dict(self.algebra, {m: k * c for c, m in self.terms})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        alg = self.algebra
        d: Dict[Monomial, int] = {}
        for c1, m1 in self.terms:
            d1 = alg.monomial_degree(m1)
            for c2, m2 in other.terms:
                if not alg.in_range(d1 + alg.monomial_degree(m2)):
                    continue
                sign, m = monomial_product(alg, m1, m2)
                if sign:
                    d[m] = d.get(m, 0) + sign * c1 * c2
        return Element.from_dict(alg, d)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.algebra.constant(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> List[int]:
        return sorted({self.algebra.monomial_degree(m) for _, m in self.terms})

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous nonzero element, else None."""
        ds = self.degrees
        return ds[0] if len(ds) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def homogeneous_parts(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Monomial, int]] = {}
        for c, m in self.terms:
            parts.setdefault(self.algebra.monomial_degree(m), {})[m] = c
        return {d: Element.from_dict(self.algebra, t) for d, t in sorted(parts.items())}

    def in_algebra(self, algebra: GradedAlgebra) -> "Element":
        """Reinterpret in an algebra on the same generators (e.g. change truncation)."""
        if algebra.generators != self.algebra.generators:
            raise AlgebraError("generators differ")
        return Element.from_dict(algebra, self.as_dict())

    def __iter__(self) -> Iterator[Tuple[int, Monomial]]:
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Element({render(self)!r})"


def add(a: Element, b: Element) -> Element:
    return a + b


def multiply(a: Element, b: Element) -> Element:
    return a * b


# -- text form -------------------------------------------------------

def render_monomial(algebra: GradedAlgebra, m: Monomial) -> str:
    parts = []
    for e, g in zip(m, algebra.generators):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts)


def render(x: Element) -> str:
    """Inverse of :func:`parse_element` on canonical elements."""
    if not x.terms:
        return "0"
    out = []
    for k, (c, m) in enumerate(x.terms):
        mono = render_monomial(x.algebra, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>[0-9]+)|(?P<name>[A-Za-z][A-Za-z0-9_]*(?:<[0-9]+>)*)|(?P<op>[-+*^]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        mo = _TOKEN_RE.match(text, pos)
        if not mo or mo.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = mo.lastgroup
        start = mo.start(kind)
        toks.append((kind, mo.group(kind), start))
        pos = mo.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, algebra: GradedAlgebra):
        self.text = text
        self.alg = algebra
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def element(self) -> Element:
        alg = self.alg
        total: Dict[Monomial, int] = {}
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            c, m = self.term()
            c *= sign
            if c:
                total[m] = total.get(m, 0) + c
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            self.fail(f"expected '+', '-' or end of input, got {tok[1]!r}")
        return Element.from_dict(alg, total)

    def term(self) -> Tuple[int, Monomial]:
        alg = self.alg
        coeff = 1
        word: List[int] = []
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            coeff = int(tok[1])
            if not (self.peek()[0] == "op" and self.peek()[1] == "*"):
                return normalize_word(alg, [], coeff)
            self.take()
        while True:
            word.extend(self.factor())
            if self.peek()[0] == "op" and self.peek()[1] == "*":
                self.take()
                continue
            break
        return normalize_word(alg, word, coeff)

    def factor(self) -> List[int]:
        tok = self.take()
        if tok[0] != "name":
            self.fail(f"expected generator name, got {tok[1] or 'end of input'!r}", tok)
        try:
            idx = self.alg.index(tok[1])
        except AlgebraError:
            self.fail(f"unknown generator {tok[1]!r}", tok)
        exp = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "int" or int(etok[1]) < 1:
                self.fail("exponent must be a positive integer", etok)
            exp = int(etok[1])
            g = self.alg.generators[idx]
            if exp > 1 and g.degree % 2 and self.alg.exterior:
                self.fail(
                    f"odd generator {g.name!r} cannot carry exponent {exp} "
                    f"over {self.alg.coefficients}",
                    etok,
                )
        return [idx] * exp


def parse_element(text: str, algebra) -> Element:
    """Parse ``text`` into a canonical element of ``algebra``.

    ``algebra`` may be a :class:`GradedAlgebra` or anything with an
    ``algebra`` attribute (e.g. a :class:`Presentation`).
    """
    alg = getattr(algebra, "algebra", algebra)
    return _Parser(text, alg).element()


@dataclass(frozen=True)
class Presentation:
    """A finitely presented graded-commutative algebra.

    ``algebra`` carries the top degree; everything above it is zero.
    Relations are homogeneous elements of the *untruncated* algebra on the
    same generators, so a relation above the top degree (alpha^2 for the
    sphere S^m) is kept: it is redundant here but not in tensor powers.
    Relations that normalize to zero in the ambient are kept too.
    """

    algebra: GradedAlgebra
    relations: Tuple[Element, ...] = ()
    kunneth_safe: bool = False
    name: str = ""

    def __post_init__(self):
        if self.algebra.top_degree is None:
            raise AlgebraError("a presentation needs a finite top degree")
        amb = self.algebra.untruncated()
        rels = []
        for r in self.relations:
            if r.algebra.generators != amb.generators or r.algebra.coefficients != amb.coefficients:
                raise AlgebraError("relation lives in a different algebra")
            if r.algebra != amb:
                r = r.in_algebra(amb)
            if not r.is_homogeneous():
                raise AlgebraError(f"relation {render(r)!r} is not homogeneous")
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.algebra, self.relations, self.kunneth_safe))
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.relations == other.relations
            and self.kunneth_safe == other.kunneth_safe
        )

    @classmethod
    def build(
        cls,
        coefficients: Coefficients,
        generators: Iterable[Tuple[str, int]],
        relations: Iterable[str] = (),
        top_degree: int = 0,
        kunneth_safe: bool = False,
        name: str = "",
    ) -> "Presentation":
        """Build from ``(name, degree)`` pairs and relation text."""
        gens = tuple(Generator(n, d) for n, d in generators)
        alg = GradedAlgebra(coefficients, gens, top_degree)
        amb = alg.untruncated()
        rels = tuple(parse_element(text, amb) for text in relations)
        return cls(alg, rels, kunneth_safe, name)

    @property
    def ambient(self) -> GradedAlgebra:
        return self.algebra.untruncated()

    @property
    def coefficients(self) -> Coefficients:
        return self.algebra.coefficients

    @property
    def generators(self) -> Tuple[Generator, ...]:
        return self.algebra.generators

    @property
    def top_degree(self) -> int:
        return self.algebra.top_degree

    def parse(self, text: str) -> Element:
        return parse_element(text, self.algebra)

    def gen(self, name_or_index) -> Element:
        return self.algebra.gen(name_or_index)

    def describe(self) -> str:
        """Ring-file text for this presentation."""
        lines = [f"coeff {_coeff_keyword(self.coefficients)}", f"topdeg {self.top_degree}"]
        lines += [f"gen {g.name} {g.degree}" for g in self.generators]
        lines += [f"rel {render(r)}" for r in self.relations]
        return "\n".join(lines)


def _coeff_keyword(c: Coefficients) -> str:
    return "Z" if c.modulus is None else f"Zmod {c.modulus}"
