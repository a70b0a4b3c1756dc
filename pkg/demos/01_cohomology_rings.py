"""
Presenting cohomology rings
===========================

Build a graded-commutative ring from generators and relations, multiply
classes with Koszul signs, and test whether a class vanishes in the
quotient.
"""

from basedtc import Presentation, ZZ, is_zero_in_quotient, render, space

# The torus T^2: two degree-1 classes.  Odd classes anticommute, so
# b*a comes out as -a*b and a*a is already zero in the ambient ring.
torus = Presentation.build(ZZ, [("a", 1), ("b", 1)], [], top_degree=2)
a, b = torus.gen("a"), torus.gen("b")
print("b*a   =", render(b * a))
print("a*a   =", render(a * a))

# Elements can also be written as text
x = torus.parse("3*a - 2*b")
print("x*x   =", render(x * x))

# The configuration space of three points in the plane, with its
# Arnold relation a12*a23 = a12*a13 + a13*a23
conf = space("conf", 2, 3).presentation
print(conf.describe())

for text in ["a12*a23", "a12*a13", "a12*a13 + a13*a23 - a12*a23"]:
    print(f"{text:<28} zero? {is_zero_in_quotient(conf.parse(text), conf)}")

# Products above the top degree vanish by truncation; asking the ideal
# itself shows the relations already force a12*a23*a13 = 0
triple = conf.parse("a12*a23*a13")
print("a12*a23*a13 in the ideal?", is_zero_in_quotient(triple, conf, truncate=False))
