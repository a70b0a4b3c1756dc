"""
Cup-length of powers
====================

The nilpotency index of H*(X^n) is a lower bound for cat(X^n).  For free
cohomology it can be read off the base ring; here we compare that with a
direct search in the tensor power.
"""

from basedtc import cup_length, cup_length_power, space, tensor_power

rp3 = space("rp", 3).presentation
res = cup_length(rp3)
print("RP^3: cup-length", res.cup_length, "witness", res.witness_names(rp3))

# The square of RP^3 as an explicit presentation with tagged generators
sq = tensor_power(rp3, 2)
print([g.name for g in sq.generators], "top degree", sq.top_degree)

for mode in ("factorized", "direct"):
    r = cup_length_power(rp3, 2, mode)
    print(f"{mode:>10}: cup-length {r.cup_length}, nil index {r.nil_index}")

# Longest products in configuration spaces
for k in range(2, 6):
    p = space("conf", 2, k).presentation
    r = cup_length(p)
    print(f"F(R^2,{k}): cup-length {r.cup_length}  ", " * ".join(r.witness_names(p)))
