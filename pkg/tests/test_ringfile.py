import pytest

from basedtc.algebra import GF2, ZZ
from basedtc.catalog import space
from basedtc.cuplength import cup_length
from basedtc.ringfile import RingFileError, load_ring, parse_ring

S2xS2 = """
# cohomology of S^2 x S^2
coeff Z
topdeg 4
gen a 2
gen b 2   # second factor
rel a^2
rel b^2
"""


def test_parse_basic():
    p = parse_ring(S2xS2)
    assert p.coefficients == ZZ and p.top_degree == 4
    assert [g.name for g in p.generators] == ["a", "b"]
    assert p.kunneth_safe
    assert cup_length(p).cup_length == 2


def test_mod_p():
    p = parse_ring("coeff Zmod 2\ntopdeg 3\ngen g 1\nrel g^4\n")
    assert p.coefficients == GF2 and cup_length(p).cup_length == 3


def test_torsion_is_not_kunneth_safe():
    p = parse_ring("coeff Z\ntopdeg 2\ngen x 2\nrel 2*x\n")
    assert not p.kunneth_safe


def test_empty_ring():
    p = parse_ring("# nothing here\ncoeff Z\n")
    assert p.top_degree == 0 and cup_length(p).nil_index == 1


def test_roundtrip_catalog():
    p = space("torus-sum", 2).presentation
    q = parse_ring(p.describe())
    assert q.relations == p.relations and q.algebra == p.algebra


@pytest.mark.parametrize("text, line", [
    ("coeff Q\n", 1),
    ("coeff Zmod 6\n", 1),
    ("topdeg x\n", 1),
    ("topdeg 2\ngen a\n", 2),
    ("topdeg 2\ngen a 0\n", 2),
    ("topdeg 2\ngen a 1\nrel a +\n", 3),
    ("topdeg 2\ngen a 1\n\nrel a*c\n", 4),
    ("frobnicate 3\n", 1),
    ("gen a 1\n", 0),
])
def test_errors_carry_line(text, line):
    with pytest.raises(RingFileError) as e:
        parse_ring(text)
    assert e.value.line == line


def test_load(tmp_path):
    f = tmp_path / "s2s2.ring"
    f.write_text(S2xS2)
    p = load_ring(str(f))
    assert p.name == str(f)
