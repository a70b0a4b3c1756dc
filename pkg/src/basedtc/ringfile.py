"""Line-oriented ring files.

::

    # cohomology of S^2 x S^2
    coeff Z            # or: coeff Zmod 2
    topdeg 4
    gen a 2
    gen b 2
    rel a^2
    rel b^2

Whether the ring is Kunneth-safe (every graded piece free) is computed,
not declared.
"""

from __future__ import annotations

from .algebra import AlgebraError, Coefficients, GradedAlgebra, Generator, ParseError, Presentation, parse_element
from .quotient import is_free


class RingFileError(ParseError):
    def __init__(self, message: str, line: int, pos: int = 0):
        self.line = line
        ValueError.__init__(self, f"line {line}: {message}")
        self.pos = pos
        self.text = ""


def parse_ring(text: str, name: str = "") -> Presentation:
    coeff = None
    top = None
    gens = []
    rels = []  # (line number, text)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "coeff":
            parts = rest.split()
            try:
                if parts == ["Z"]:
                    coeff = Coefficients()
                elif len(parts) == 2 and parts[0] == "Zmod":
                    coeff = Coefficients(int(parts[1]))
                else:
                    raise RingFileError(f"bad coefficient ring {rest!r}", lineno)
            except (AlgebraError, ValueError) as e:
                if isinstance(e, RingFileError):
                    raise
                raise RingFileError(str(e), lineno) from None
        elif key == "topdeg":
            try:
                top = int(rest)
            except ValueError:
                raise RingFileError(f"bad top degree {rest!r}", lineno) from None
        elif key == "gen":
            parts = rest.split()
            if len(parts) != 2:
                raise RingFileError("expected: gen <name> <degree>", lineno)
            try:
                gens.append(Generator(parts[0], int(parts[1])))
            except (AlgebraError, ValueError) as e:
                raise RingFileError(str(e), lineno) from None
        elif key == "rel":
            rels.append((lineno, rest))
        else:
            raise RingFileError(f"unknown directive {key!r}", lineno)
    if coeff is None:
        coeff = Coefficients()
    if top is None:
        if gens:
            raise RingFileError("missing 'topdeg' line", 0)
        top = 0
    try:
        alg = GradedAlgebra(coeff, tuple(gens), top)
    except AlgebraError as e:
        raise RingFileError(str(e), 0) from None
    amb = alg.untruncated()
    parsed = []
    for lineno, body in rels:
        try:
            parsed.append(parse_element(body, amb))
        except ParseError as e:
            raise RingFileError(str(e), lineno, e.pos) from None
    try:
        p = Presentation(alg, tuple(parsed), False, name)
    except AlgebraError as e:
        raise RingFileError(str(e), 0) from None
    return Presentation(alg, p.relations, is_free(p), name)


def load_ring(path: str) -> Presentation:
    with open(path) as fh:
        return parse_ring(fh.read(), name=path)
